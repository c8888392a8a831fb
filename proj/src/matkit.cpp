#include "weylkit/matkit.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace weylkit {

namespace {

using RVector = Eigen::Matrix<real, Eigen::Dynamic, 1>;

RVector hermitian_eigenvalues(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    return es.eigenvalues();
}

}  // namespace

CMatrix identity(int m) { return CMatrix::Identity(m, m); }

real op_norm(const CMatrix& a) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

real condition_number(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    const auto& s = svd.singularValues();
    const real smin = s(s.size() - 1);
    if (smin == 0) return std::numeric_limits<real>::infinity();
    return s(0) / smin;
}

CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) * cplx(0.5L); }

CMatrix imag_part(const CMatrix& a) { return (a - a.adjoint()) / (cplx(2.0L) * kI); }

real hermiticity_defect(const CMatrix& a) { return op_norm(a - a.adjoint()); }

bool is_hermitian(const CMatrix& a, real tol) {
    if (a.rows() != a.cols()) return false;
    return hermiticity_defect(a) <= tol * std::max<real>(1, op_norm(a));
}

HermitianCertificate certify_hermitian(const CMatrix& h) {
    HermitianCertificate cert;
    cert.hermiticity_defect = hermiticity_defect(h);
    const RVector ev = hermitian_eigenvalues(h);
    cert.min_eigenvalue = ev.minCoeff();
    cert.max_eigenvalue = ev.maxCoeff();
    return cert;
}

bool all_finite(const CMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

void require_finite(const CMatrix& a, std::string_view what) {
    if (!all_finite(a)) throw InvalidArgument(std::string(what) + ": non-finite entries");
}

void require_square(const CMatrix& a, int m, std::string_view what) {
    if (a.rows() != m || a.cols() != m) {
        std::ostringstream os;
        os << what << ": expected " << m << "x" << m << " matrix, got " << a.rows() << "x"
           << a.cols();
        throw InvalidArgument(os.str());
    }
}

cplx sqrt_upper(cplx w) {
    cplx r = std::sqrt(w);
    if (r.imag() < 0 || (r.imag() == 0 && r.real() < 0)) r = -r;
    return r;
}

CMatrix herglotz_sqrt(const CMatrix& q0, cplx z) {
    if (q0.rows() != q0.cols() || q0.rows() == 0)
        throw InvalidArgument("herglotz_sqrt: Q0 must be a non-empty square matrix");
    require_finite(q0, "herglotz_sqrt");
    if (!is_hermitian(q0)) throw InvalidArgument("herglotz_sqrt: Q0 is not Hermitian");
    if (!(z.imag() > 0)) throw InvalidArgument("herglotz_sqrt: requires Im z > 0");

    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(q0));
    if (es.info() != Eigen::Success) throw NumericalError("herglotz_sqrt: eigensolver failed");
    const auto& lambda = es.eigenvalues();
    CVector d(lambda.size());
    for (Eigen::Index j = 0; j < lambda.size(); ++j) d(j) = kI * sqrt_upper(z - lambda(j));
    const CMatrix& u = es.eigenvectors();
    return u * d.asDiagonal() * u.adjoint();
}

real psd_defect(const CMatrix& h, real tol) {
    if (h.rows() != h.cols()) throw InvalidArgument("psd_defect: matrix is not square");
    if (hermiticity_defect(h) > tol * std::max<real>(1, op_norm(h)))
        throw InvalidArgument("psd_defect: matrix is not Hermitian within tolerance");
    const RVector ev = hermitian_eigenvalues(h);
    return std::max<real>(0, -ev.minCoeff());
}

real contraction_defect(const CMatrix& v) {
    require_finite(v, "contraction_defect");
    const CMatrix g = v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols());
    const RVector ev = hermitian_eigenvalues(g);
    return std::max<real>(0, ev.maxCoeff());
}

CMatrix checked_solve(const CMatrix& a, const CMatrix& b, std::string_view what,
                      real cond_limit) {
    const real cond = condition_number(a);
    if (!(cond <= cond_limit)) {
        std::ostringstream os;
        os << what << ": matrix is singular (condition number " << static_cast<double>(cond)
           << ")";
        throw SingularMatrixError(os.str());
    }
    return a.partialPivLu().solve(b);
}

CMatrix checked_right_solve(const CMatrix& b, const CMatrix& a, std::string_view what,
                            real cond_limit) {
    // b a^{-1} = (a^{-*} b^*)^*
    return checked_solve(a.adjoint(), b.adjoint(), what, cond_limit).adjoint();
}

CMatrix checked_inverse(const CMatrix& a, std::string_view what, real cond_limit) {
    return checked_solve(a, CMatrix::Identity(a.rows(), a.cols()), what, cond_limit);
}

}  // namespace weylkit
