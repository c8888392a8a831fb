#include "doctest.h"

#include "../oracles.hpp"
#include "weylkit/potential.hpp"
#include "weylkit/volterra.hpp"
#include "weylkit/weyl.hpp"

using namespace weylkit;

namespace {

CMatrix scalar(real v) { return CMatrix::Constant(1, 1, v); }

}  // namespace

TEST_CASE("Volterra: zero potential") {
    const PotentialModel z0 = make_truncated(make_constant(CMatrix::Zero(2, 2)), 0, 1);
    const cplx z(0, 9);
    const VolterraSolution s = solve_volterra(z, z0, 0);
    CHECK(op_norm(s.v_x - identity(2)) == 0);
    CHECK(op_norm(s.v_prime_x) == 0);
    CHECK(s.iterations <= 1);
    CHECK(oracle::rel_err(m_from_volterra(s, 0), kI * std::sqrt(z) * identity(2)) < 1e-18L);
}

TEST_CASE("Volterra: free region past the support") {
    std::mt19937_64 rng(1);
    const PotentialModel q = make_truncated(make_gaussian(oracle::random_hermitian(rng, 2, 3), 0.5L, 0.3L), 0, 1);
    const cplx z(3, 40);
    const VolterraSolution s = solve_volterra(z, q, 1.5L);
    CHECK(op_norm(s.v_x - identity(2)) == 0);
    CHECK(op_norm(m_from_volterra(s, 1.5L) - kI * s.k * identity(2)) == 0);
    CHECK(std::abs(s.k - std::sqrt(z)) < 1e-18L);
}

TEST_CASE("Volterra: first iterate for a scalar step") {
    const real q0 = 1.5L;
    const PotentialModel step = make_piecewise_constant({0, 1}, {scalar(q0)});
    real prev = std::numeric_limits<real>::infinity();
    for (real r : {1e2L, 1e4L, 1e6L}) {
        const cplx z(0, r), k = std::sqrt(z);
        const VolterraSolution s = solve_volterra(z, step, 0);
        const cplx first = 1.0L - q0 / (2.0L * kI * k);
        // relative error of the first-order term decays like |z|^{-1/2}
        const real err = std::abs(s.v_x(0, 0) - first) / std::abs(q0 / (2.0L * kI * k));
        CHECK(err < prev);
        CHECK(err * std::sqrt(r) < 50);
        prev = err;
    }
}

TEST_CASE("Volterra: step barrier matches limit_m and the transfer-matrix oracle") {
    const real q0 = 2;
    const PotentialModel step = make_piecewise_constant({0, 1}, {scalar(q0)});
    const cplx z(0, 100);
    const CMatrix mv = m_from_volterra(solve_volterra(z, step, 0), 0);
    const CMatrix ml = limit_m(z, 0, step);
    const oracle::Mat ref = oracle::step_m({0, 1}, {oracle::Mat::Constant(1, 1, q0)}, z, 0);
    CHECK(std::abs(mv(0, 0) - ml(0, 0)) < 1e-7L * std::abs(ml(0, 0)));
    CHECK(std::abs(mv(0, 0) - ref(0, 0)) < 1e-9L * std::abs(ref(0, 0)));
}

TEST_CASE("Volterra: majorant bound and cross-method agreement") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 6; ++trial) {
        const int m = 1 + trial % 3;
        const PotentialModel q =
            make_truncated(make_gaussian(oracle::random_hermitian(rng, m, 4), 0.4L, 0.5L), -0.5L, 1.2L);
        const cplx z = std::polar(25.0L * (1 + trial), 0.2L + 0.5L * trial);
        const VolterraSolution s = solve_volterra(z, q, 0);
        CHECK(s.max_norm <= s.majorant);
        const real l1 = l1_norm(q, 0, 1.2L), kk = std::abs(s.k);
        CHECK(s.majorant == doctest::Approx(static_cast<double>(1 + l1 / kk * std::exp(l1 / kk))).epsilon(1e-10));
        const CMatrix mv = m_from_volterra(s, 0);
        const CMatrix ml = limit_m(z, 0, q, LimitOptions{1, 1 << 10, 1e-13L, StepControl{1e-14L, 1e-16L}});
        CHECK(oracle::rel_err(mv, ml) < 1e-7L);
    }
}

TEST_CASE("Volterra: gauge identity u = e^{ikx} v") {
    // u' = e^{ikx}(v' + ik v) against a five-point derivative of u = e^{ikx} v.
    std::mt19937_64 rng(27);
    const PotentialModel q = make_truncated(make_gaussian(oracle::random_hermitian(rng, 2, 2), 0.5L, 0.5L), 0, 1);
    const cplx z(5, 30);
    const real h = 1e-3L;
    for (real x : {0.2L, 0.55L, 0.8L}) {
        auto u = [&](real y) {
            const VolterraSolution s = solve_volterra(z, q, y);
            return CMatrix(std::exp(kI * s.k * y) * s.v_x);
        };
        const VolterraSolution c = solve_volterra(z, q, x);
        const CMatrix up = std::exp(kI * c.k * x) * (c.v_prime_x + kI * c.k * c.v_x);
        const CMatrix fd = (u(x - 2 * h) - 8.0L * u(x - h) + 8.0L * u(x + h) - u(x + 2 * h)) / cplx(12 * h);
        CHECK(op_norm(fd - up) <= 1e-8L * std::max<real>(1, op_norm(up)));
    }
}

TEST_CASE("Volterra: rejects non-compact potentials") {
    CHECK_THROWS_AS(solve_volterra(cplx(0, 10), make_constant(scalar(1)), 0), InvalidArgument);
}
