#pragma once

// Embedded Runge-Kutta 5(4) (Dormand-Prince) with step-size control and
// fourth-order dense output, on flattened complex state vectors.

#include <functional>

#include "weylkit/matkit.hpp"

namespace weylkit {

struct StepControl {
    real rtol = 1e-10L;
    real atol = 1e-12L;
    long max_steps = 5'000'000;
    real initial_step = 0;  // 0: automatic
    real max_step = 0;      // 0: unbounded
};

// Validates tolerances; throws InvalidArgument.
void validate(const StepControl& ctrl);

using OdeRhs = std::function<void(real x, const CVector& y, CVector& dydx)>;

// View of one accepted step, valid only during the observer call.
class AcceptedStep {
public:
    real x_begin() const noexcept { return x0_; }
    real x_end() const noexcept { return x1_; }
    const CVector& y_begin() const noexcept { return *y0_; }
    const CVector& y_end() const noexcept { return *y1_; }

    // Dense output at x in [x_begin, x_end].
    CVector at(real x) const;

private:
    friend class DormandPrince;
    real x0_ = 0, x1_ = 0;
    const CVector* y0_ = nullptr;
    const CVector* y1_ = nullptr;
    const CVector* r2_ = nullptr;
    const CVector* r3_ = nullptr;
    const CVector* r4_ = nullptr;
    const CVector* r5_ = nullptr;
};

using StepObserver = std::function<void(const AcceptedStep&)>;

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
    real last_step = 0;
};

class DormandPrince {
public:
    explicit DormandPrince(StepControl ctrl);

    // Integrates from x_from to x_to (either direction) and returns y(x_to).
    CVector integrate(const OdeRhs& rhs, const CVector& y0, real x_from, real x_to,
                      const StepObserver& observer = {});

    const OdeStats& stats() const noexcept { return stats_; }

private:
    real initial_step(const OdeRhs& rhs, real x, const CVector& y, const CVector& f0,
                      real direction);
    real error_norm(const CVector& y, const CVector& ynew, const CVector& err) const;

    StepControl ctrl_;
    OdeStats stats_;
    real h_carry_ = 0;
};

// One-shot convenience wrapper.
CVector integrate_ode(const OdeRhs& rhs, const CVector& y0, real x_from, real x_to,
                      const StepControl& ctrl, const StepObserver& observer = {},
                      OdeStats* stats = nullptr);

}  // namespace weylkit
