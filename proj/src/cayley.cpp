#include "weylkit/cayley.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "weylkit/propagate.hpp"

namespace weylkit {

namespace {

constexpr real kBlowUp = 1e6L;

// Thrown from inside the observer to stop a diverging flow early.
struct FlowEscaped {};

void require_sorted_times(const std::vector<real>& ts, std::string_view what) {
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (!(ts[i] >= 0) || (i > 0 && ts[i] < ts[i - 1]))
            throw InvalidArgument(std::string(what) + ": times must be ascending and >= 0");
}

std::vector<CMatrix> sample_flow(const OdeRhs& rhs, const CMatrix& y0,
                                 const std::vector<real>& ts, const StepControl& ctrl) {
    const auto m = y0.rows();
    std::vector<CMatrix> out;
    out.reserve(ts.size());
    DormandPrince dp(ctrl);
    CVector y = pack(y0);
    real t = 0;
    for (real target : ts) {
        y = dp.integrate(rhs, y, t, target);
        t = target;
        out.push_back(unpack(y, m, m));
    }
    return out;
}

// Exact transport of theta across an interval where Q == q0. Works in the
// eigenbasis of q0, where each channel is a e^{ik x} + b e^{-ik x}; the
// subspace is normalised by the component that grows in the direction of
// travel, so the update only multiplies by decaying exponentials.
CMatrix constant_transport(cplx z, real s, const CMatrix& theta, const CMatrix& q0, real d) {
    const auto m = theta.rows();
    const CMatrix id = CMatrix::Identity(m, m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(q0));
    const CMatrix& v = es.eigenvectors();
    CVector ik(m), ph(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const cplx k = sqrt_upper(z - es.eigenvalues()(j));
        if (k == cplx(0)) throw NumericalError("constant_transport: z on the spectrum of Q");
        ik(j) = kI * k;
        ph(j) = std::exp(ik(j) * std::abs(d));
    }
    const cplx is(0, s);
    const CMatrix th = v.adjoint() * theta * v;
    const CMatrix u = id + th;
    const CMatrix up = is * (id - th);
    const CMatrix w = ik.cwiseInverse().asDiagonal() * up;
    const CMatrix a = (u + w) / cplx(2), b = (u - w) / cplx(2);
    const bool back = d < 0;
    CMatrix r = back ? checked_right_solve(b, a, "constant_transport")
                     : checked_right_solve(a, b, "constant_transport");
    r = ph.asDiagonal() * r * ph.asDiagonal();
    const CMatrix un = id + r;
    const CMatrix upn = ik.asDiagonal() * (back ? CMatrix(id - r) : CMatrix(r - id));
    const CMatrix out = checked_right_solve(is * un - upn, is * un + upn, "constant_transport");
    return v * out * v.adjoint();
}

}  // namespace

SectorPoint make_sector_point(cplx z, real eps) {
    if (!(eps > 0) || !(eps < kPi / 2))
        throw InvalidArgument("make_sector_point: eps must lie in (0, pi/2)");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z == cplx(0))
        throw InvalidArgument("make_sector_point: z must be finite and nonzero");
    const real d = std::arg(z);
    if (d < eps || d > kPi - eps) {
        std::ostringstream os;
        os << "make_sector_point: arg z = " << static_cast<double>(d) << " outside [" << static_cast<double>(eps)
           << ", pi - " << static_cast<double>(eps) << "]";
        throw InvalidArgument(os.str());
    }
    SectorPoint p;
    p.z = z;
    p.modulus = std::abs(z);
    p.delta = d;
    p.sqrt_z = sqrt_upper(z);
    return p;
}

real chart_scale(cplx z) {
    if (z.imag() == 0 || !std::isfinite(z.imag()) || !std::isfinite(z.real()))
        throw InvalidArgument("chart_scale: requires finite z with Im z != 0");
    const real s = std::sqrt(std::abs(z));
    return z.imag() > 0 ? s : -s;
}

CMatrix to_disk(const CMatrix& m, real s) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InvalidArgument("to_disk: M must be square and non-empty");
    require_finite(m, "to_disk");
    if (s == 0 || !std::isfinite(s)) throw InvalidArgument("to_disk: scale must be finite and nonzero");
    const CMatrix is = cplx(0, s) * CMatrix::Identity(m.rows(), m.cols());
    // (is - M)(is + M)^{-1}; the factors commute.
    return checked_right_solve(is - m, is + m, "to_disk: isI + M");
}

CMatrix from_disk(const CMatrix& theta, real s) {
    if (theta.rows() != theta.cols() || theta.rows() == 0)
        throw InvalidArgument("from_disk: theta must be square and non-empty");
    require_finite(theta, "from_disk");
    if (s == 0 || !std::isfinite(s)) throw InvalidArgument("from_disk: scale must be finite and nonzero");
    const CMatrix id = CMatrix::Identity(theta.rows(), theta.cols());
    return cplx(0, s) * checked_right_solve(id - theta, id + theta, "from_disk: I + theta");
}

ThetaTrajectory theta_flow(cplx z, const CMatrix& theta0, const PotentialModel& pot,
                           real x_from, real x_to, const StepControl& ctrl, bool check_start,
                           bool record) {
    const int m = pot.dim();
    require_square(theta0, m, "theta_flow");
    require_finite(theta0, "theta_flow");
    const real s = chart_scale(z);
    validate(ctrl);
    if (check_start && contraction_defect(theta0) > 1e-10L)
        throw InvalidArgument("theta_flow: initial value is not a contraction");

    ThetaTrajectory tr;
    tr.x.push_back(x_from);
    tr.theta.push_back(theta0);
    tr.max_contraction_defect = record ? contraction_defect(theta0) : 0;
    const CMatrix id = CMatrix::Identity(m, m);
    CMatrix th = theta0;
    const auto pieces = smooth_pieces(pot, x_from, x_to);
    for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
        const real lo = pieces[p], hi = pieces[p + 1];
        if (lo == hi) continue;
        if (!record) {
            if (const auto q0 = pot.constant_on(lo, hi)) {
                try {
                    th = constant_transport(z, s, th, *q0, hi - lo);
                    if (!th.allFinite() || th.cwiseAbs().maxCoeff() > kBlowUp) {
                        tr.blew_up = true;
                        tr.max_contraction_defect = std::numeric_limits<real>::infinity();
                        return tr;
                    }
                    tr.x.push_back(hi);
                    tr.theta.push_back(th);
                    continue;
                } catch (const NumericalError&) {
                    // fall through to the integrator
                }
            }
        }
        OdeRhs rhs = [&](real x, const CVector& y, CVector& dy) {
            const auto t = Eigen::Map<const CMatrix>(y.data(), m, m);
            Eigen::Map<CMatrix> d(dy.data(), m, m);
            CMatrix w = -pot.eval(clamp_into_piece(x, lo, hi));
            w.diagonal().array() += z;
            const CMatrix a = id - t;
            const CMatrix b = id + t;
            d.noalias() = cplx(0, s / 2) * (a * a) - cplx(0, 1 / (2 * s)) * (b * w * b);
        };
        auto obs = [&](const AcceptedStep& st) {
            const CMatrix t = unpack(st.y_end(), m, m);
            const real nrm = t.cwiseAbs().maxCoeff();
            if (!std::isfinite(nrm) || nrm > kBlowUp) {
                tr.blew_up = true;
                throw FlowEscaped{};
            }
            if (!record) return;
            tr.x.push_back(st.x_end());
            tr.theta.push_back(t);
            tr.max_contraction_defect = std::max(tr.max_contraction_defect, contraction_defect(t));
        };
        try {
            th = unpack(integrate_ode(rhs, pack(th), lo, hi, ctrl, obs), m, m);
            if (!record) {
                tr.x.push_back(hi);
                tr.theta.push_back(th);
            }
        } catch (const FlowEscaped&) {
            tr.max_contraction_defect = std::numeric_limits<real>::infinity();
            return tr;
        }
    }
    return tr;
}

ThetaTrajectory theta_flow(const SectorPoint& z, const CMatrix& theta0,
                           const PotentialModel& pot, real x0, real c,
                           const StepControl& ctrl) {
    return theta_flow(z.z, theta0, pot, x0, c, ctrl, true);
}

CMatrix explicit_phi(const SectorPoint& z, real t, const CMatrix& m0) {
    if (m0.rows() != m0.cols() || m0.rows() == 0)
        throw InvalidArgument("explicit_phi: M0 must be square and non-empty");
    require_finite(m0, "explicit_phi");
    const auto n = m0.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    const real s = std::sqrt(z.modulus);
    const cplx k = z.sqrt_z;
    const cplx is(0, s);
    const cplx ik = kI * k;
    // u = a e^{ikx} + b e^{-ikx}; the decaying exponential is factored out.
    cplx e = std::exp(cplx(0, -2 * t) * k / s);
    const CMatrix p = m0 + ik * id;
    const CMatrix q = m0 - ik * id;
    CMatrix num, den;
    if (std::abs(e) <= 1) {
        num = -(is - ik) * p + e * (is + ik) * q;
        den = -(is + ik) * p + e * (is - ik) * q;
    } else {
        e = cplx(1) / e;
        num = -e * (is - ik) * p + (is + ik) * q;
        den = -e * (is + ik) * p + (is - ik) * q;
    }
    return checked_right_solve(num, den, "explicit_phi: denominator");
}

cplx limit_constant(real delta) {
    if (!(delta > 0) || !(delta <= kPi))
        throw InvalidArgument("limit_constant: delta must lie in (0, pi]");
    const cplx w = std::exp(cplx(0, delta / 2));
    return (cplx(1) - w) / (cplx(1) + w);
}

CMatrix rescaled_rhs(cplx z, const CMatrix& phi, const CMatrix& qhat) {
    const auto n = phi.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix w = -qhat;
    w.diagonal().array() += z;
    const CMatrix a = id - phi;
    const CMatrix b = id + phi;
    return cplx(0, 0.5L) * (a * a) - cplx(0, 1 / (2 * std::abs(z))) * (b * w * b);
}

CMatrix limiting_rhs(real delta, const CMatrix& eta) {
    const auto n = eta.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix a = id - eta;
    const CMatrix b = id + eta;
    return cplx(0, 0.5L) * (a * a) - cplx(0, 0.5L) * std::exp(cplx(0, delta)) * (b * b);
}

std::vector<CMatrix> rescaled_flow(const SectorPoint& z, const CMatrix& phi0,
                                   const PotentialModel& pot, real x0,
                                   const std::vector<real>& ts, const StepControl& ctrl) {
    const int m = pot.dim();
    require_square(phi0, m, "rescaled_flow");
    require_sorted_times(ts, "rescaled_flow");
    const real s = std::sqrt(z.modulus);
    // Jumps of Q are handled by stopping at their rescaled positions.
    std::vector<real> cuts;
    for (real b : pot.breakpoints())
        if (b > x0) cuts.push_back((b - x0) * s);
    OdeRhs rhs = [&](real t, const CVector& y, CVector& dy) {
        const CMatrix qhat = pot.eval(x0 + t / s);
        Eigen::Map<CMatrix>(dy.data(), m, m) = rescaled_rhs(z.z, unpack(y, m, m), qhat);
    };
    if (cuts.empty()) return sample_flow(rhs, phi0, ts, ctrl);

    std::vector<CMatrix> out;
    CVector y = pack(phi0);
    real t = 0;
    std::size_t ci = 0;
    DormandPrince dp(ctrl);
    for (real target : ts) {
        while (ci < cuts.size() && cuts[ci] < target) {
            if (cuts[ci] > t) {
                const real lo = t, hi = cuts[ci];
                OdeRhs piece = [&, lo, hi](real tt, const CVector& yy, CVector& dd) {
                    rhs(clamp_into_piece(tt, lo, hi), yy, dd);
                };
                y = dp.integrate(piece, y, lo, hi);
                t = hi;
            }
            ++ci;
        }
        const real lo = t, hi = target;
        OdeRhs piece = [&, lo, hi](real tt, const CVector& yy, CVector& dd) {
            rhs(lo < hi ? clamp_into_piece(tt, lo, hi) : tt, yy, dd);
        };
        y = dp.integrate(piece, y, lo, hi);
        t = target;
        out.push_back(unpack(y, m, m));
    }
    return out;
}

std::vector<CMatrix> limiting_flow(real delta, const CMatrix& eta0, const std::vector<real>& ts,
                                   const StepControl& ctrl) {
    if (eta0.rows() != eta0.cols() || eta0.rows() == 0)
        throw InvalidArgument("limiting_flow: eta0 must be square and non-empty");
    require_sorted_times(ts, "limiting_flow");
    const auto m = eta0.rows();
    OdeRhs rhs = [&](real, const CVector& y, CVector& dy) {
        Eigen::Map<CMatrix>(dy.data(), m, m) = limiting_rhs(delta, unpack(y, m, m));
    };
    return sample_flow(rhs, eta0, ts, ctrl);
}

}  // namespace weylkit
