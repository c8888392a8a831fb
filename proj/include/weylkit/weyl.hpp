#pragma once

// Boundary data, regular M-functions M(z, c, x0, beta), Riccati-disk
// membership, and limit-point extraction of M_+(z, x0) and M_-(z, x0).

#include <vector>

#include "weylkit/cayley.hpp"
#include "weylkit/ode.hpp"
#include "weylkit/potential.hpp"

namespace weylkit {

enum class SignClass { positive, negative, selfadjoint };

const char* to_string(SignClass c);

class BoundaryData {
public:
    // Checks rank [beta1 beta2] = m and classifies Im(beta2 beta1*).
    BoundaryData(CMatrix beta1, CMatrix beta2, real tol = kHermitianTol);

    static BoundaryData dirichlet(int m);
    static BoundaryData neumann(int m);

    const CMatrix& beta1() const noexcept { return beta1_; }
    const CMatrix& beta2() const noexcept { return beta2_; }
    SignClass sign_class() const noexcept { return sign_; }
    int dim() const noexcept { return static_cast<int>(beta1_.rows()); }

    // Columns spanning ker [beta1 beta2] (2m x m): admissible [u(c); u'(c)].
    CMatrix kernel_basis() const;

private:
    CMatrix beta1_, beta2_;
    SignClass sign_;
};

enum class Chart { automatic, fundamental, cayley };

// Cayley chart is used automatically once Im sqrt(z) (c - x0) exceeds this.
inline constexpr real kCayleyThreshold = 30;

CMatrix regular_m(cplx z, real c, real x0, const PotentialModel& pot, const BoundaryData& beta,
                  const StepControl& ctrl = {}, Chart chart = Chart::automatic);

// Maximum contraction defect of the theta-flow started at the image of
// M_cand, over [x0, c]. +inf when the flow escapes.
real disk_membership(const CMatrix& m_cand, cplx z, real c, real x0, const PotentialModel& pot,
                     const StepControl& ctrl = {});

struct LimitOptions {
    real initial_length = 1;  // L0
    real max_length = 64;     // horizon cap c - x0
    real rtol = 1e-10L;
    StepControl step{1e-14L, 1e-16L};
    bool check_limit_circle = true;
    Chart chart = Chart::automatic;
};

struct LimitResult {
    CMatrix m;
    real error_estimate = 0;
    real horizon = 0;            // final c - x0
    std::vector<double> history; // successive increments
    bool limit_circle_suspected = false;
    CMatrix m_neumann;           // Neumann value at the final horizon
};

LimitResult limit_m_full(cplx z, real x0, const PotentialModel& pot,
                         const LimitOptions& opts = {});

CMatrix limit_m(cplx z, real x0, const PotentialModel& pot, const LimitOptions& opts = {});

// M_-(z, x0) = -M~_+(z, x0) for Q~(y) = Q(2 x0 - y).
CMatrix mirror_m_minus(cplx z, real x0, const PotentialModel& pot, const LimitOptions& opts = {});

}  // namespace weylkit
