#pragma once

// Fundamental systems of -u'' + Q u = z u, the matrix Riccati flow
// M' = Q - zI - M^2, and the Lagrange identity certificate.

#include <vector>

#include "weylkit/ode.hpp"
#include "weylkit/potential.hpp"

namespace weylkit {

struct FundamentalSystem {
    cplx z;
    real x0 = 0;
    real x = 0;
    CMatrix theta, theta_prime, phi, phi_prime;

    // [theta phi; theta' phi'] (2m x 2m).
    CMatrix psi() const;
};

// Psi at the accepted-step grid of one propagation run, plus the dense-output
// midpoint of every step (Simpson nodes).
struct PropagationSamples {
    cplx z;
    real x0 = 0;
    std::vector<real> x;          // x0 = x[0] < x[1] < ... < x[n] = c
    std::vector<CMatrix> psi;     // Psi(x[i])
    std::vector<CMatrix> psi_mid; // Psi((x[i] + x[i+1]) / 2), n entries
};

// Splits blocks of a 2m x 2m Psi.
FundamentalSystem split_psi(const CMatrix& psi, cplx z, real x0, real x);

// Psi(z, c, x0) for c >= x0. Throws OverflowError when ||Psi|| would pass
// 1e300 and StiffnessError on step underflow.
FundamentalSystem propagate_fundamental(cplx z, const PotentialModel& pot, real x0, real c,
                                        const StepControl& ctrl = {},
                                        PropagationSamples* samples = nullptr);

// || Psi(c)* J Psi(c) - Psi(x0)* J Psi(x0) - 2i Im z int Psi* A Psi ||.
real lagrange_residual(const PropagationSamples& samples, cplx z);

// The symplectic form J = [0 -I; I 0].
CMatrix symplectic_j(int m);

// Integrates M' = Q - zI - M^2 from x_from to x_to (either direction).
// Throws RiccatiPoleError if ||M|| exceeds 1e12.
CMatrix riccati_flow(cplx z, const CMatrix& m_init, const PotentialModel& pot, real x_from,
                     real x_to, const StepControl& ctrl = {});

// Packing helpers for matrix-valued ODE states.
CVector pack(const CMatrix& a);
CMatrix unpack(const CVector& y, Eigen::Index rows, Eigen::Index cols, Eigen::Index offset = 0);

}  // namespace weylkit
