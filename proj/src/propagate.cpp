#include "weylkit/propagate.hpp"

#include <cmath>
#include <sstream>

namespace weylkit {

namespace {

constexpr real kOverflow = 1e300L;
constexpr real kPoleNorm = 1e12L;
// Segment length is chosen so the local growth factor stays near e^20.
constexpr real kSegmentGrowth = 20;

}  // namespace

CVector pack(const CMatrix& a) {
    return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unpack(const CVector& y, Eigen::Index rows, Eigen::Index cols, Eigen::Index offset) {
    return Eigen::Map<const CMatrix>(y.data() + offset, rows, cols);
}

CMatrix FundamentalSystem::psi() const {
    const auto m = theta.rows();
    CMatrix p(2 * m, 2 * m);
    p << theta, phi, theta_prime, phi_prime;
    return p;
}

FundamentalSystem split_psi(const CMatrix& psi, cplx z, real x0, real x) {
    const auto m = psi.rows() / 2;
    FundamentalSystem fs;
    fs.z = z;
    fs.x0 = x0;
    fs.x = x;
    fs.theta = psi.topLeftCorner(m, m);
    fs.phi = psi.topRightCorner(m, m);
    fs.theta_prime = psi.bottomLeftCorner(m, m);
    fs.phi_prime = psi.bottomRightCorner(m, m);
    return fs;
}

CMatrix symplectic_j(int m) {
    CMatrix j = CMatrix::Zero(2 * m, 2 * m);
    j.topRightCorner(m, m) = -CMatrix::Identity(m, m);
    j.bottomLeftCorner(m, m) = CMatrix::Identity(m, m);
    return j;
}

FundamentalSystem propagate_fundamental(cplx z, const PotentialModel& pot, real x0, real c,
                                        const StepControl& ctrl, PropagationSamples* samples) {
    if (!std::isfinite(x0) || !std::isfinite(c) || c < x0)
        throw InvalidArgument("propagate_fundamental: requires finite c >= x0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("propagate_fundamental: z must be finite");
    validate(ctrl);
    const int m = pot.dim();
    const Eigen::Index n2 = 2 * m;
    CMatrix total = CMatrix::Identity(n2, n2);
    if (samples) {
        *samples = PropagationSamples{};
        samples->z = z;
        samples->x0 = x0;
        samples->x.push_back(x0);
        samples->psi.push_back(total);
    }
    if (c == x0) return split_psi(total, z, x0, c);

    const auto pieces = smooth_pieces(pot, x0, c);
    for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
        const real lo = pieces[p], hi = pieces[p + 1];
        if (hi <= lo) continue;
        // Growth rate bound sqrt(|z| + sup ||Q||) sets the segment length.
        const real qsup = sup_norm(pot, clamp_into_piece(lo, lo, hi), clamp_into_piece(hi, lo, hi), 17);
        const real rate = std::sqrt(std::abs(z) + qsup) + 1;
        const int nseg = std::max(1, static_cast<int>(std::ceil((hi - lo) * rate / kSegmentGrowth)));
        const real seg = (hi - lo) / nseg;

        OdeRhs rhs = [&](real x, const CVector& y, CVector& dy) {
            const CMatrix q = pot.eval(clamp_into_piece(x, lo, hi)) - z * CMatrix::Identity(m, m);
            const auto top = Eigen::Map<const CMatrix>(y.data(), n2, n2).topRows(m);
            const auto bottom = Eigen::Map<const CMatrix>(y.data(), n2, n2).bottomRows(m);
            Eigen::Map<CMatrix> d(dy.data(), n2, n2);
            d.topRows(m) = bottom;
            d.bottomRows(m).noalias() = q * top;
        };

        DormandPrince dp(ctrl);
        for (int s = 0; s < nseg; ++s) {
            const real a = lo + s * seg;
            const real b = s + 1 == nseg ? hi : lo + (s + 1) * seg;
            const CMatrix prefix = total;
            StepObserver obs;
            if (samples) {
                obs = [&](const AcceptedStep& st) {
                    const real xm = (st.x_begin() + st.x_end()) / 2;
                    samples->psi_mid.push_back(unpack(st.at(xm), n2, n2) * prefix);
                    samples->x.push_back(st.x_end());
                    samples->psi.push_back(unpack(st.y_end(), n2, n2) * prefix);
                };
            }
            const CVector y = dp.integrate(rhs, pack(CMatrix::Identity(n2, n2)), a, b, obs);
            total = unpack(y, n2, n2) * prefix;
            const real nrm = total.cwiseAbs().maxCoeff();
            if (!std::isfinite(nrm) || nrm > kOverflow / 16) {
                std::ostringstream os;
                os << "propagate_fundamental: ||Psi|| exceeds 1e300 near x = "
                   << static_cast<double>(b) << "; use the Riccati or Cayley chart instead";
                throw OverflowError(os.str());
            }
        }
    }
    if (samples) samples->x.back() = c;
    return split_psi(total, z, x0, c);
}

real lagrange_residual(const PropagationSamples& s, cplx z) {
    if (s.x.size() < 2 || s.psi.size() != s.x.size() || s.psi_mid.size() + 1 != s.x.size())
        throw InvalidArgument("lagrange_residual: samples do not come from one propagation run");
    const auto n2 = s.psi.front().rows();
    const auto m = n2 / 2;
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i)
        if (!(s.x[i + 1] >= s.x[i]))
            throw InvalidArgument("lagrange_residual: grid is not increasing");
    const CMatrix j = symplectic_j(static_cast<int>(m));
    auto weight = [m](const CMatrix& p) -> CMatrix {
        // Psi* A Psi with A = diag(I, 0).
        return p.topRows(m).adjoint() * p.topRows(m);
    };
    CMatrix integral = CMatrix::Zero(n2, n2);
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
        const real h = s.x[i + 1] - s.x[i];
        integral += (h / 6) * (weight(s.psi[i]) + cplx(4) * weight(s.psi_mid[i]) +
                               weight(s.psi[i + 1]));
    }
    const CMatrix& a = s.psi.back();
    const CMatrix& b = s.psi.front();
    const CMatrix lhs = a.adjoint() * j * a - b.adjoint() * j * b;
    return op_norm(lhs - cplx(0, 2 * z.imag()) * integral);
}

CMatrix riccati_flow(cplx z, const CMatrix& m_init, const PotentialModel& pot, real x_from,
                     real x_to, const StepControl& ctrl) {
    const int m = pot.dim();
    require_square(m_init, m, "riccati_flow");
    require_finite(m_init, "riccati_flow");
    if (z.imag() == 0) throw InvalidArgument("riccati_flow: requires Im z != 0");
    if (!std::isfinite(x_from) || !std::isfinite(x_to))
        throw InvalidArgument("riccati_flow: endpoints must be finite");
    validate(ctrl);
    CMatrix mm = m_init;
    const auto pieces = smooth_pieces(pot, x_from, x_to);
    for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
        const real lo = pieces[p], hi = pieces[p + 1];
        if (lo == hi) continue;
        real last_x = lo;
        real last_norm = mm.cwiseAbs().maxCoeff();
        OdeRhs rhs = [&](real x, const CVector& y, CVector& dy) {
            const auto cur = Eigen::Map<const CMatrix>(y.data(), m, m);
            Eigen::Map<CMatrix> d(dy.data(), m, m);
            d = pot.eval(clamp_into_piece(x, lo, hi));
            d.diagonal().array() -= z;
            d.noalias() -= cur * cur;
        };
        auto obs = [&](const AcceptedStep& st) {
            const real nrm = st.y_end().cwiseAbs().maxCoeff();
            if (!std::isfinite(nrm) || nrm > kPoleNorm) {
                std::ostringstream os;
                os << "riccati_flow: ||M|| exceeds 1e12 between x = "
                   << static_cast<double>(last_x) << " and x = "
                   << static_cast<double>(st.x_end()) << " (Riccati pole)";
                throw RiccatiPoleError(os.str(), static_cast<double>(st.x_end()));
            }
            last_x = st.x_end();
            last_norm = nrm;
        };
        try {
            mm = unpack(integrate_ode(rhs, pack(mm), lo, hi, ctrl, obs), m, m);
        } catch (const StiffnessError& e) {
            // A step underflow next to a blow-up is a pole, not stiffness.
            if (last_norm > 1e6L)
                throw RiccatiPoleError(std::string("riccati_flow: ") + e.what(), e.location());
            throw;
        }
    }
    return mm;
}

}  // namespace weylkit
