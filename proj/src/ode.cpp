#include "weylkit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace weylkit {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr real a21 = 1.0L / 5;
constexpr real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
               a54 = -212.0L / 729;
constexpr real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
               a64 = 49.0L / 176, a65 = -5103.0L / 18656;
constexpr real a71 = 35.0L / 384, a73 = 500.0L / 1113, a74 = 125.0L / 192,
               a75 = -2187.0L / 6784, a76 = 11.0L / 84;
constexpr real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
               e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;
// Dense output (Hairer's CONTD5).
constexpr real d1 = -12715105075.0L / 11282082432, d3 = 87487479700.0L / 32700410799,
               d4 = -10690763975.0L / 1880347072, d5 = 701980252875.0L / 199316789632,
               d6 = -1453857185.0L / 822651844, d7 = 69997945.0L / 29380423;

}  // namespace

void validate(const StepControl& ctrl) {
    if (!(ctrl.rtol > 0) || !(ctrl.atol >= 0) || !std::isfinite(ctrl.rtol) ||
        !std::isfinite(ctrl.atol))
        throw InvalidArgument("step control: rtol must be > 0 and atol >= 0");
    if (ctrl.rtol < 10 * std::numeric_limits<real>::epsilon())
        throw InvalidArgument("step control: rtol below working precision");
    if (ctrl.max_steps <= 0) throw InvalidArgument("step control: max_steps must be positive");
    if (ctrl.initial_step < 0 || ctrl.max_step < 0)
        throw InvalidArgument("step control: step bounds must be non-negative");
}

CVector AcceptedStep::at(real x) const {
    const real h = x1_ - x0_;
    const real th = h == 0 ? 0 : (x - x0_) / h;
    const real th1 = 1 - th;
    return *y0_ + th * (*r2_ + th1 * (*r3_ + th * (*r4_ + th1 * *r5_)));
}

DormandPrince::DormandPrince(StepControl ctrl) : ctrl_(ctrl) { validate(ctrl_); }

real DormandPrince::error_norm(const CVector& y, const CVector& ynew, const CVector& err) const {
    real acc = 0;
    const Eigen::Index n = y.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const real sc = ctrl_.atol + ctrl_.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
        const real r = std::abs(err(i)) / sc;
        acc += r * r;
    }
    return n == 0 ? 0 : std::sqrt(acc / static_cast<real>(n));
}

real DormandPrince::initial_step(const OdeRhs& rhs, real x, const CVector& y, const CVector& f0,
                                 real direction) {
    // Hairer-Norsett-Wanner starting step heuristic.
    real d0 = 0, d1n = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const real s = ctrl_.atol + ctrl_.rtol * std::abs(y(i));
        d0 += std::norm(y(i)) / (s * s);
        d1n += std::norm(f0(i)) / (s * s);
    }
    const real n = static_cast<real>(std::max<Eigen::Index>(1, y.size()));
    d0 = std::sqrt(d0 / n);
    d1n = std::sqrt(d1n / n);
    real h0 = (d0 < 1e-5L || d1n < 1e-5L) ? 1e-6L : 0.01L * d0 / d1n;
    CVector y1 = y + direction * h0 * f0;
    CVector f1(y.size());
    rhs(x + direction * h0, y1, f1);
    ++stats_.rhs_evaluations;
    real d2 = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const real s = ctrl_.atol + ctrl_.rtol * std::abs(y(i));
        d2 += std::norm(f1(i) - f0(i)) / (s * s);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const real dm = std::max(d1n, d2);
    const real h1 = dm <= 1e-15L ? std::max<real>(1e-6L, h0 * 1e-3L)
                                 : std::pow(0.01L / dm, 1.0L / 5);
    return std::min(100 * h0, h1);
}

CVector DormandPrince::integrate(const OdeRhs& rhs, const CVector& y0, real x_from, real x_to,
                                 const StepObserver& observer) {
    CVector y = y0;
    if (x_to == x_from) return y;
    const real dir = x_to > x_from ? 1 : -1;
    const real span = std::abs(x_to - x_from);
    const real hmax = ctrl_.max_step > 0 ? std::min(ctrl_.max_step, span) : span;

    const Eigen::Index n = y.size();
    CVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
    CVector r2(n), r3(n), r4(n), r5(n);

    real x = x_from;
    rhs(x, y, k1);
    ++stats_.rhs_evaluations;

    real h;
    if (ctrl_.initial_step > 0)
        h = ctrl_.initial_step;
    else if (h_carry_ > 0)
        h = h_carry_;
    else
        h = initial_step(rhs, x, y, k1, dir);
    h = std::min(h, hmax);

    AcceptedStep view;
    long steps = 0;
    bool last_rejected = false;
    while (true) {
        const real remaining = std::abs(x_to - x);
        bool final_step = false;
        if (h >= remaining) {
            h = remaining;
            final_step = true;
        }
        const real min_step = 16 * std::numeric_limits<real>::epsilon() *
                              std::max<real>(1, std::abs(x));
        if (h < min_step) {
            std::ostringstream os;
            os << "step size underflow at x = " << static_cast<double>(x)
               << " (problem is stiff or singular here)";
            throw StiffnessError(os.str(), static_cast<double>(x));
        }
        if (++steps > ctrl_.max_steps) {
            std::ostringstream os;
            os << "step budget of " << ctrl_.max_steps << " exhausted at x = "
               << static_cast<double>(x);
            throw StiffnessError(os.str(), static_cast<double>(x));
        }
        const real hs = dir * h;

        ytmp = y + hs * a21 * k1;
        rhs(x + c2 * hs, ytmp, k2);
        ytmp = y + hs * (a31 * k1 + a32 * k2);
        rhs(x + c3 * hs, ytmp, k3);
        ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(x + c4 * hs, ytmp, k4);
        ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(x + c5 * hs, ytmp, k5);
        ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        const real xnew = final_step ? x_to : x + hs;
        rhs(xnew, ytmp, k6);
        ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        rhs(xnew, ynew, k7);
        stats_.rhs_evaluations += 6;
        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        real en = error_norm(y, ynew, err);
        if (!std::isfinite(en)) en = std::numeric_limits<real>::max();
        if (en <= 1) {
            ++stats_.accepted;
            if (observer) {
                r2 = ynew - y;
                r3 = hs * k1 - r2;
                r4 = r2 - hs * k7 - r3;
                r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                view.x0_ = x;
                view.x1_ = xnew;
                view.y0_ = &y;
                view.y1_ = &ynew;
                view.r2_ = &r2;
                view.r3_ = &r3;
                view.r4_ = &r4;
                view.r5_ = &r5;
                observer(view);
            }
            y.swap(ynew);
            k1.swap(k7);
            x = xnew;
            real fac = en == 0 ? 10 : 0.9L * std::pow(en, -0.2L);
            fac = std::clamp<real>(fac, 0.2L, 10);
            if (last_rejected) fac = std::min<real>(fac, 1);
            last_rejected = false;
            if (!final_step) h_carry_ = std::min(h * fac, hmax);
            stats_.last_step = h;
            if (final_step) break;
            h = std::min(h * fac, hmax);
        } else {
            ++stats_.rejected;
            last_rejected = true;
            h *= std::max<real>(0.2L, 0.9L * std::pow(en, -0.2L));
        }
    }
    return y;
}

CVector integrate_ode(const OdeRhs& rhs, const CVector& y0, real x_from, real x_to,
                      const StepControl& ctrl, const StepObserver& observer, OdeStats* stats) {
    DormandPrince dp(ctrl);
    CVector y = dp.integrate(rhs, y0, x_from, x_to, observer);
    if (stats) *stats = dp.stats();
    return y;
}

}  // namespace weylkit
