#pragma once

// Cayley chart theta = (isI - M)(isI + M)^{-1}, the theta-flow it induces,
// the rescaled flow in t = (x - x0)|z|^{1/2}, its constant-coefficient limit,
// and the explicit free solution.

#include <vector>

#include "weylkit/ode.hpp"
#include "weylkit/potential.hpp"

namespace weylkit {

struct SectorPoint {
    cplx z;
    real modulus = 0;
    real delta = 0;  // arg z
    cplx sqrt_z;     // Im > 0
};

// Requires eps <= arg z <= pi - eps.
SectorPoint make_sector_point(cplx z, real eps = 0.1L);

// Signed chart scale sign(Im z)|z|^{1/2}; throws for Im z == 0.
real chart_scale(cplx z);

CMatrix to_disk(const CMatrix& m, real s);
CMatrix from_disk(const CMatrix& theta, real s);

struct ThetaTrajectory {
    std::vector<real> x;
    std::vector<CMatrix> theta;
    real max_contraction_defect = 0;
    bool blew_up = false;  // ||theta|| left every bounded set
};

// Integrates theta' = (is/2)(I - theta)^2 - (i/(2s))(I + theta)(zI - Q)(I + theta),
// s = chart_scale(z), from x_from to x_to (either direction).
// With check_start, theta0 must be a contraction. Without `record` only the
// end point is kept and no defects are computed.
ThetaTrajectory theta_flow(cplx z, const CMatrix& theta0, const PotentialModel& pot,
                           real x_from, real x_to, const StepControl& ctrl = {},
                           bool check_start = true, bool record = true);

ThetaTrajectory theta_flow(const SectorPoint& z, const CMatrix& theta0,
                           const PotentialModel& pot, real x0, real c,
                           const StepControl& ctrl = {});

// Closed-form phi(t) of the rescaled free flow started at the image of M0.
CMatrix explicit_phi(const SectorPoint& z, real t, const CMatrix& m0);

// C(delta) = (1 - e^{i delta/2}) / (1 + e^{i delta/2}), 0 < delta <= pi.
cplx limit_constant(real delta);

// d phi/dt = (i/2)(I - phi)^2 - (i/(2|z|))(I + phi)(zI - Qhat(t))(I + phi).
CMatrix rescaled_rhs(cplx z, const CMatrix& phi, const CMatrix& qhat);

// d eta/dt = (i/2)(I - eta)^2 - (i/2) e^{i delta} (I + eta)^2.
CMatrix limiting_rhs(real delta, const CMatrix& eta);

// Rescaled flow with Qhat(t) = Q(x0 + t|z|^{-1/2}), sampled at `ts` (ascending, >= 0).
std::vector<CMatrix> rescaled_flow(const SectorPoint& z, const CMatrix& phi0,
                                   const PotentialModel& pot, real x0,
                                   const std::vector<real>& ts, const StepControl& ctrl = {});

// Debug integrator of the limiting system, sampled at `ts`.
std::vector<CMatrix> limiting_flow(real delta, const CMatrix& eta0, const std::vector<real>& ts,
                                   const StepControl& ctrl = {});

}  // namespace weylkit
