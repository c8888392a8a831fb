#include "weylkit/weyl.hpp"

#include <cmath>
#include <sstream>

#include "weylkit/propagate.hpp"

namespace weylkit {

namespace {

// Bound on the exponential growth rate of solutions: the fastest channel of
// z - Q sits at the most positive eigenvalue of Q.
real growth_rate(cplx z, const PotentialModel& pot, real a, real b) {
    const real q = sup_norm(pot, a, b, 33);
    return std::max(sqrt_upper(z).imag(), sqrt_upper(z - q).imag());
}

void check_domain(cplx z, SignClass sc) {
    const bool ok = (sc == SignClass::positive && z.imag() >= 0) ||
                    (sc == SignClass::negative && z.imag() <= 0) ||
                    (sc == SignClass::selfadjoint && z.imag() != 0);
    if (!ok) {
        std::ostringstream os;
        os << "regular_m: z = " << static_cast<double>(z.real()) << " + "
           << static_cast<double>(z.imag()) << "i lies outside the domain of a "
           << to_string(sc) << " boundary condition";
        throw InvalidArgument(os.str());
    }
}

}  // namespace

const char* to_string(SignClass c) {
    switch (c) {
        case SignClass::positive: return "positive";
        case SignClass::negative: return "negative";
        case SignClass::selfadjoint: return "selfadjoint";
    }
    return "?";
}

BoundaryData::BoundaryData(CMatrix beta1, CMatrix beta2, real tol)
    : beta1_(std::move(beta1)), beta2_(std::move(beta2)) {
    const auto m = beta1_.rows();
    if (m == 0 || beta1_.cols() != m || beta2_.rows() != m || beta2_.cols() != m)
        throw InvalidArgument("BoundaryData: beta1 and beta2 must be m x m");
    require_finite(beta1_, "BoundaryData beta1");
    require_finite(beta2_, "BoundaryData beta2");
    CMatrix beta(m, 2 * m);
    beta << beta1_, beta2_;
    Eigen::JacobiSVD<CMatrix> svd(beta);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0) || !(sv(m - 1) >= 1e-10L * sv(0)))
        throw InvalidArgument("BoundaryData: rank [beta1 beta2] < m");
    const CMatrix h = imag_part(beta2_ * beta1_.adjoint());
    const HermitianCertificate cert = certify_hermitian(h);
    const real scale = tol * std::max<real>(1, sv(0) * sv(0));
    if (std::max(std::abs(cert.min_eigenvalue), std::abs(cert.max_eigenvalue)) <= scale)
        sign_ = SignClass::selfadjoint;
    else if (cert.min_eigenvalue > scale)
        sign_ = SignClass::positive;
    else if (cert.max_eigenvalue < -scale)
        sign_ = SignClass::negative;
    else
        throw InvalidArgument("BoundaryData: Im(beta2 beta1*) is indefinite");
}

BoundaryData BoundaryData::dirichlet(int m) {
    return BoundaryData(CMatrix::Identity(m, m), CMatrix::Zero(m, m));
}

BoundaryData BoundaryData::neumann(int m) {
    return BoundaryData(CMatrix::Zero(m, m), CMatrix::Identity(m, m));
}

CMatrix BoundaryData::kernel_basis() const {
    const auto m = beta1_.rows();
    CMatrix beta(m, 2 * m);
    beta << beta1_, beta2_;
    Eigen::JacobiSVD<CMatrix> svd(beta, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(m);
}

CMatrix regular_m(cplx z, real c, real x0, const PotentialModel& pot, const BoundaryData& beta,
                  const StepControl& ctrl, Chart chart) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("regular_m: z must be finite");
    if (!std::isfinite(x0) || !std::isfinite(c) || !(c > x0))
        throw InvalidArgument("regular_m: requires c > x0");
    if (beta.dim() != pot.dim()) throw InvalidArgument("regular_m: dimension mismatch");
    check_domain(z, beta.sign_class());
    const int m = pot.dim();

    if (chart == Chart::automatic)
        chart = growth_rate(z, pot, x0, c) * (c - x0) > kCayleyThreshold ? Chart::cayley
                                                                          : Chart::fundamental;
    if (chart == Chart::cayley && z.imag() == 0)
        throw InvalidArgument("regular_m: the Cayley chart needs Im z != 0");

    CMatrix mm;
    if (chart == Chart::fundamental) {
        const FundamentalSystem fs = propagate_fundamental(z, pot, x0, c, ctrl);
        const CMatrix bphi = beta.beta1() * fs.phi + beta.beta2() * fs.phi_prime;
        const CMatrix btheta = beta.beta1() * fs.theta + beta.beta2() * fs.theta_prime;
        mm = -checked_solve(bphi, btheta, "regular_m: beta Phi(z, c, x0)");
    } else {
        const real s = chart_scale(z);
        const CMatrix nb = beta.kernel_basis();
        const CMatrix u = nb.topRows(m), up = nb.bottomRows(m);
        const cplx is(0, s);
        const CMatrix theta_c =
            checked_right_solve(is * u - up, is * u + up, "regular_m: boundary chart at c");
        const ThetaTrajectory tr = theta_flow(z, theta_c, pot, c, x0, ctrl, false, false);
        if (tr.blew_up) throw NumericalError("regular_m: backward theta-flow escaped the disk");
        mm = from_disk(tr.theta.back(), s);
    }

    const SignClass sc = beta.sign_class();
    const bool upper = z.imag() > 0 && sc != SignClass::negative;
    const bool lower = z.imag() < 0 && sc != SignClass::positive;
    if (upper || lower) {
        const CMatrix im = imag_part(upper ? mm : CMatrix(-mm));
        if (psd_defect(im) > 1e-8L * std::max<real>(1, op_norm(mm)))
            throw NumericalError("regular_m: computed M violates Im(+-M) > 0; tighten tolerances");
    }
    return mm;
}

real disk_membership(const CMatrix& m_cand, cplx z, real c, real x0, const PotentialModel& pot,
                     const StepControl& ctrl) {
    if (!(z.imag() > 0)) throw InvalidArgument("disk_membership: requires Im z > 0");
    if (!std::isfinite(x0) || !std::isfinite(c) || c < x0)
        throw InvalidArgument("disk_membership: requires c >= x0");
    require_square(m_cand, pot.dim(), "disk_membership");
    require_finite(m_cand, "disk_membership");
    if (psd_defect(imag_part(m_cand)) > 1e-10L * std::max<real>(1, op_norm(m_cand)))
        throw InvalidArgument("disk_membership: Im M_cand is not positive semidefinite");
    const real s = chart_scale(z);
    const CMatrix th0 = to_disk(m_cand, s);
    const ThetaTrajectory tr = theta_flow(z, th0, pot, x0, c, ctrl, false);
    return tr.max_contraction_defect;
}

LimitResult limit_m_full(cplx z, real x0, const PotentialModel& pot, const LimitOptions& opts) {
    if (z.imag() == 0 || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("limit_m: requires finite z with Im z != 0");
    if (!std::isfinite(x0)) throw InvalidArgument("limit_m: x0 must be finite");
    if (!(opts.initial_length > 0) || !(opts.max_length >= opts.initial_length))
        throw InvalidArgument("limit_m: requires 0 < initial_length <= max_length");
    if (!(opts.rtol > 0)) throw InvalidArgument("limit_m: rtol must be positive");
    const int m = pot.dim();
    const BoundaryData dir = BoundaryData::dirichlet(m);
    // Default for limit extraction is the bounded chart.
    const Chart chart = opts.chart == Chart::automatic ? Chart::cayley : opts.chart;

    LimitResult res;
    real len = opts.initial_length;
    CMatrix prev = regular_m(z, x0 + len, x0, pot, dir, opts.step, chart);
    while (true) {
        len *= 2;
        if (len > opts.max_length * (1 + 1e-12L)) {
            std::ostringstream os;
            os << "limit_m: no convergence up to c - x0 = " << static_cast<double>(len / 2)
               << " (last increment "
               << (res.history.empty() ? 0.0 : res.history.back()) << ")";
            throw NonConvergenceError(os.str(), res.history);
        }
        const CMatrix cur = regular_m(z, x0 + len, x0, pot, dir, opts.step, chart);
        const real scale = std::max<real>(1, op_norm(cur));
        const real diff = op_norm(cur - prev) / scale;
        res.history.push_back(static_cast<double>(diff));
        prev = cur;
        if (diff < opts.rtol) {
            res.m = cur;
            res.error_estimate = diff * scale;
            res.horizon = len;
            break;
        }
    }
    if (opts.check_limit_circle) {
        res.m_neumann = regular_m(z, x0 + res.horizon, x0, pot, BoundaryData::neumann(m),
                                  opts.step, chart);
        const real scale = std::max<real>(1, op_norm(res.m));
        res.limit_circle_suspected = op_norm(res.m_neumann - res.m) > 10 * opts.rtol * scale;
    }
    return res;
}

CMatrix limit_m(cplx z, real x0, const PotentialModel& pot, const LimitOptions& opts) {
    return limit_m_full(z, x0, pot, opts).m;
}

CMatrix mirror_m_minus(cplx z, real x0, const PotentialModel& pot, const LimitOptions& opts) {
    return -limit_m(z, x0, pot.reflected(x0), opts);
}

}  // namespace weylkit
