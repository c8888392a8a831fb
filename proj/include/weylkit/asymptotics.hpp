#pragma once

// High-energy expansion M_+(z, x) ~ i z^{1/2} I + sum_k m_k(x) z^{-k/2}, its
// verification against computed M-values, the sandwich factorization of
// X' = AX + XA, the exponential-locality experiment, and the diagonal Green's
// matrix expansion.

#include <functional>
#include <vector>

#include "weylkit/ncpoly.hpp"
#include "weylkit/ode.hpp"
#include "weylkit/potential.hpp"
#include "weylkit/volterra.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

struct AsymptoticSeries {
    real x = 0;
    int order = 0;
    std::vector<CMatrix> coeffs;  // coeffs[k-1] = m_k(x)
    int dim = 1;
};

// m_1 .. m_N as polynomials in Q, Q', ... (cached).
std::vector<NcPoly> m_coeff_polys(int n);

AsymptoticSeries m_coeffs(const PotentialModel& pot, real x, int n);

CMatrix eval_series(const AsymptoticSeries& series, cplx z);

// Coefficients of k^{2}, k^{1}, ..., k^{-2N} in M' + M^2 - Q + k^2 for
// M = ik + sum_{j<=N} m_j k^{-j}, with z = k^2.
std::vector<NcPoly> riccati_residual_polys(int n);

// Number of leading powers k^2, k^1, ... whose coefficient vanishes identically.
int riccati_cancelled_powers(int n);

enum class MMethod { automatic, limit, volterra };

struct VerifyOptions {
    MMethod method = MMethod::automatic;
    // long horizons are cheap once Q is constant; near-real rays need them
    LimitOptions limit{1, 1 << 12, 1e-15L, StepControl{1e-16L, 1e-18L}};
    VolterraOptions volterra{};
    // Remainders at or below this fraction of ||M|| count as solver noise.
    real noise_floor = 1e-15L;
};

struct OrderReport {
    int order = 0;
    real x0 = 0;
    std::vector<real> moduli;
    std::vector<real> deltas;
    std::vector<std::vector<real>> scaled_remainder;  // [delta][modulus]
    std::vector<std::vector<real>> remainder;         // unscaled
    std::vector<bool> pass_per_delta;
    bool pass = false;
    std::string method;
};

OrderReport verify_order(const PotentialModel& pot, real x0, int n,
                         const std::vector<real>& moduli, const std::vector<real>& deltas,
                         const VerifyOptions& opts = {});

// Same M-values reused for several orders.
std::vector<OrderReport> verify_orders(const PotentialModel& pot, real x0,
                                       const std::vector<int>& orders,
                                       const std::vector<real>& moduli,
                                       const std::vector<real>& deltas,
                                       const VerifyOptions& opts = {});

// M_+(z, x0) by the method verify_order would use.
CMatrix reference_m(cplx z, const PotentialModel& pot, real x0, const VerifyOptions& opts,
                    std::string* method = nullptr);

using MatrixField = std::function<CMatrix(real)>;

// Y(x0) X_end Z(x0) with Y' = AY, Z' = ZA, Y(x1) = Z(x1) = I.
CMatrix sandwich_solve(const MatrixField& a, const CMatrix& x_end, real x1, real x0,
                       const StepControl& ctrl = StepControl{1e-14L, 1e-30L});

struct LocalityOptions {
    real delta = kPi / 2;
    LimitOptions limit{1, 1 << 12, 1e-15L, StepControl{1e-15L, 1e-18L}};
    StepControl step{1e-15L, 1e-18L};
    real slope_slack = 0.1L;    // pass iff slope <= -2 (x1 - x0)(1 - slack)
    real bounded_factor = 4;    // normalized values must stay within this factor of the first
};

struct LocalityReport {
    std::vector<real> moduli;
    std::vector<real> im_sqrt;
    std::vector<real> diff;        // ||M_1 - M_2|| at x0
    std::vector<real> normalized;  // diff * e^{2 (x1 - x0) Im sqrt z}
    real slope = 0;
    real slope_bound = 0;
    bool identical = false;
    bool slope_pass = false;
    bool bounded = false;
    bool pass = false;
};

LocalityReport locality_experiment(const PotentialModel& pot1, const PotentialModel& pot2,
                                   real x0, real x1, const std::vector<real>& moduli,
                                   const LocalityOptions& opts = {});

// (M_- - M_+)^{-1}.
CMatrix green_diag(const CMatrix& m_minus, const CMatrix& m_plus);

struct GreenSeries {
    real x = 0;
    int order = 0;
    std::vector<CMatrix> coeffs;  // G_0 .. G_N
    int dim = 1;
};

// G_0 .. G_N as polynomials (G_N needs m_1 .. m_{2N-1}).
std::vector<NcPoly> green_coeff_polys(int n);

GreenSeries green_coeffs(const PotentialModel& pot, real x, int n);

// (i/2) sum_k G_k z^{-k-1/2}.
CMatrix eval_green_series(const GreenSeries& series, cplx z);

}  // namespace weylkit
