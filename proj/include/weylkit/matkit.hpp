#pragma once

// Dense complex matrix helpers shared by every module: Hermitian spectra,
// the Herglotz branch of (zI - Q0)^{1/2}, and positivity / contraction
// certificates.

#include <Eigen/Dense>

#include <complex>
#include <string_view>

#include "weylkit/errors.hpp"

namespace weylkit {

// Extended precision keeps ill-conditioned disk tests above round-off.
using real = long double;
using cplx = std::complex<real>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline constexpr real kPi = 3.141592653589793238462643383279502884L;
inline constexpr cplx kI{0.0L, 1.0L};

// Relative tolerance for Hermiticity and PSD certificates.
inline constexpr real kHermitianTol = 1e-10L;

// Condition-number limit above which a solve is reported as singular.
inline constexpr real kConditionLimit = 1e14L;

struct HermitianCertificate {
    real min_eigenvalue = 0;
    real max_eigenvalue = 0;
    real hermiticity_defect = 0;  // ||M - M*||_2
};

CMatrix identity(int m);

// Largest singular value.
real op_norm(const CMatrix& a);

// 2-norm condition number; +inf for a singular matrix.
real condition_number(const CMatrix& a);

// (M + M*)/2 and (M - M*)/(2i).
CMatrix hermitian_part(const CMatrix& a);
CMatrix imag_part(const CMatrix& a);

real hermiticity_defect(const CMatrix& a);

// Defect measured against tol * max(1, ||a||).
bool is_hermitian(const CMatrix& a, real tol = kHermitianTol);

HermitianCertificate certify_hermitian(const CMatrix& h);

bool all_finite(const CMatrix& a);

// Throws InvalidArgument naming `what` when `a` has NaN/Inf entries.
void require_finite(const CMatrix& a, std::string_view what);

// Throws InvalidArgument when `a` is not square of the given dimension.
void require_square(const CMatrix& a, int m, std::string_view what);

// Square root on the branch with Im > 0 (principal branch for Im w > 0).
cplx sqrt_upper(cplx w);

// i (zI - Q0)^{1/2}: eigenchannel-wise i (z - lambda_j)^{1/2}, Im (.)^{1/2} > 0.
// The result W satisfies W^2 = -(zI - Q0) and Im W > 0.
CMatrix herglotz_sqrt(const CMatrix& q0, cplx z);

// max(0, -lambda_min((H + H*)/2)); zero means positive semidefinite.
real psd_defect(const CMatrix& h, real tol = kHermitianTol);

// max(0, lambda_max(V*V - I)); zero certifies V*V <= I.
real contraction_defect(const CMatrix& v);

// a^{-1} b via LU after a condition check against `cond_limit`.
CMatrix checked_solve(const CMatrix& a, const CMatrix& b, std::string_view what,
                      real cond_limit = kConditionLimit);

// b a^{-1}.
CMatrix checked_right_solve(const CMatrix& b, const CMatrix& a, std::string_view what,
                            real cond_limit = kConditionLimit);

CMatrix checked_inverse(const CMatrix& a, std::string_view what,
                        real cond_limit = kConditionLimit);

}  // namespace weylkit
