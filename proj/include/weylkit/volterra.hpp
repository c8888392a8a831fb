#pragma once

// Volterra integral equation for v(x) = e^{-ikx} u_+(x), k = z^{1/2}, on a
// compactly supported potential:
//   v(x) = I - (1/(2ik)) int_x^R [1 - e^{2ik(x'-x)}] Q(x') v(x') dx',
//   v'(x) = - int_x^R e^{2ik(x'-x)} Q(x') v(x') dx'.

#include <vector>

#include "weylkit/potential.hpp"

namespace weylkit {

struct VolterraOptions {
    real tol = 1e-14L;
    int max_iterations = 500;
    int max_refinements = 6;
    int nodes_per_panel = 8;
};

struct VolterraSolution {
    cplx z;
    cplx k;                      // z^{1/2}, Im k > 0
    real x = 0;                  // evaluation point
    real support_end = 0;        // R
    std::vector<real> grid;      // quadrature nodes on [max(x, a), R]
    std::vector<CMatrix> v;      // v at the nodes
    std::vector<CMatrix> v_prime;
    CMatrix v_x, v_prime_x;      // values at x
    int iterations = 0;          // Picard sweeps on the final grid
    int panels = 0;
    real residual = 0;           // change of (v, v') at x under grid doubling
    real max_norm = 0;           // max ||v|| over the grid
    real majorant = 0;           // 1 + (L1/|k|) e^{L1/|k|}
};

VolterraSolution solve_volterra(cplx z, const PotentialModel& pot, real x,
                                const VolterraOptions& opts = {});

// ik I + v'(x) v(x)^{-1}; x must equal sol.x or lie at/after the support end.
CMatrix m_from_volterra(const VolterraSolution& sol, real x);

}  // namespace weylkit
