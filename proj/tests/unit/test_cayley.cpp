#include "doctest.h"

#include "../oracles.hpp"
#include "weylkit/cayley.hpp"
#include "weylkit/weyl.hpp"

using namespace weylkit;

namespace {

CMatrix herglotz_sample(std::mt19937_64& rng, int m) {
    return oracle::random_hermitian(rng, m, 2) + kI * oracle::random_pd(rng, m, 0.1L);
}

}  // namespace

TEST_CASE("limit_constant") {
    CHECK(std::abs(limit_constant(1e-9L)) < 1e-9L);
    CHECK(std::abs(limit_constant(kPi) - cplx(0, -1)) < 1e-18L);
    CHECK(std::abs(limit_constant(kPi / 2) - cplx(0, -0.41421356237309504880L)) < 1e-18L);
    for (real d = 0.05L; d < kPi; d += 0.05L) {
        const cplx c = limit_constant(d);
        CHECK(std::abs(c - cplx(0, -std::tan(d / 4))) < 1e-14L);
        CHECK(std::abs(c) < 1);
    }
    CHECK_THROWS_AS(limit_constant(0), InvalidArgument);
    CHECK_THROWS_AS(limit_constant(4), InvalidArgument);
}

TEST_CASE("sector points") {
    const SectorPoint p = make_sector_point(std::polar(9.0L, 1.0L));
    CHECK(p.modulus == doctest::Approx(9));
    CHECK(p.delta == doctest::Approx(1));
    CHECK(p.sqrt_z.imag() > 0);
    CHECK(std::abs(p.sqrt_z * p.sqrt_z - p.z) < 1e-14L * 9);
    CHECK_THROWS_AS(make_sector_point(cplx(1, 0.01L)), InvalidArgument);
    CHECK_THROWS_AS(make_sector_point(cplx(-1, 0.01L)), InvalidArgument);
}

TEST_CASE("to_disk / from_disk examples") {
    CHECK(op_norm(to_disk(kI * 3.0L * identity(2), 3)) < 1e-18L);
    CHECK(op_norm(from_disk(CMatrix::Zero(2, 2), 3) - kI * 3.0L * identity(2)) < 1e-18L);
    CHECK(std::abs(to_disk(CMatrix::Constant(1, 1, kI), 1)(0, 0)) < 1e-18L);
    for (real d : {0.3L, kPi / 2, 2.9L}) {
        const SectorPoint p = make_sector_point(std::polar(16.0L, d));
        const CMatrix mv = kI * p.sqrt_z * identity(2);
        CHECK(op_norm(to_disk(mv, 4) - limit_constant(d) * identity(2)) < 1e-17L);
        CHECK(op_norm(from_disk(limit_constant(d) * identity(2), 4) - mv) < 1e-16L);
    }
    CMatrix bad = -identity(2);
    CHECK_THROWS_AS(from_disk(bad, 1), SingularMatrixError);
}

TEST_CASE("Moebius involution and strict contraction") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + trial % 4;
        const real s = 0.2L + trial * 0.1L;
        const CMatrix mv = herglotz_sample(rng, m);
        const CMatrix th = to_disk(mv, s);
        CHECK(contraction_defect(th) == 0);
        CHECK(op_norm(th) < 1);
        CHECK(oracle::rel_err(from_disk(th, s), mv) < 1e-12L);
    }
}

TEST_CASE("theta_flow examples") {
    const PotentialModel zero = make_constant(CMatrix::Zero(2, 2));
    // C(d) is forward-unstable at rate e^{2 Im sqrt(z) x}; keep that factor modest
    for (real d : {0.2L, 1.3L, 2.8L}) {
        const SectorPoint p = make_sector_point(std::polar(4.0L, d));
        const CMatrix c0 = limit_constant(d) * identity(2);
        const ThetaTrajectory tr = theta_flow(p, c0, zero, 0, 1, StepControl{1e-13L, 1e-15L});
        for (const CMatrix& t : tr.theta) CHECK(op_norm(t - c0) < 1e-12L);
        CHECK(tr.max_contraction_defect == 0);
    }
    std::mt19937_64 rng(4);
    const PotentialModel g = make_gaussian(oracle::random_hermitian(rng, 2, 3), 0, 1);
    const ThetaTrajectory still = theta_flow(make_sector_point(cplx(1, 1)), CMatrix::Zero(2, 2), g, 0.5L, 0.5L);
    CHECK(op_norm(still.theta.back()) == 0);
    CHECK_THROWS_AS(theta_flow(make_sector_point(cplx(1, 1)), 2 * identity(2), g, 0, 1), InvalidArgument);
}

TEST_CASE("theta_flow on Q = 0 matches the explicit solution") {
    std::mt19937_64 rng(31);
    const PotentialModel zero = make_constant(CMatrix::Zero(2, 2));
    for (real d : {0.4L, kPi / 2, 2.5L}) {
        const SectorPoint p = make_sector_point(std::polar(4.0L, d));
        const CMatrix m0 = herglotz_sample(rng, 2);
        const real s = 2;
        const ThetaTrajectory tr = theta_flow(p, to_disk(m0, s), zero, 0, 1.2L, StepControl{1e-13L, 1e-15L});
        for (std::size_t i = 0; i < tr.x.size(); i += 5)
            CHECK(op_norm(tr.theta[i] - explicit_phi(p, tr.x[i] * s, m0)) < 1e-9L);
    }
}

TEST_CASE("explicit_phi: stationary value, initial condition, ODE residual") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const real d = 0.1L + (kPi - 0.2L) * static_cast<real>(u(rng));
        const SectorPoint p = make_sector_point(std::polar(std::pow(10.0L, 4 * static_cast<real>(u(rng))), d));
        const int m = 1 + trial % 3;
        const CMatrix stat = kI * p.sqrt_z * identity(m);
        for (real t : {0.0L, 0.7L, 5.0L})
            CHECK(op_norm(explicit_phi(p, t, stat) - limit_constant(d) * identity(m)) < 1e-12L);
        const CMatrix m0 = herglotz_sample(rng, m);
        const real s = std::sqrt(p.modulus);
        CHECK(op_norm(explicit_phi(p, 0, m0) - to_disk(m0, s)) < 1e-12L);
        const real t = 3 * static_cast<real>(u(rng)), h = 1e-5L;
        const CMatrix fd = (explicit_phi(p, t + h, m0) - explicit_phi(p, t - h, m0)) / cplx(2 * h);
        const CMatrix rhs = rescaled_rhs(p.z, explicit_phi(p, t, m0), CMatrix::Zero(m, m));
        CHECK(op_norm(fd - rhs) <= 1e-6L * std::max<real>(1, op_norm(rhs)));
    }
}

TEST_CASE("rescaled flow is theta_flow in t = (x - x0)|z|^{1/2}") {
    std::mt19937_64 rng(6);
    const PotentialModel pots[] = {make_constant(CMatrix::Zero(2, 2)),
                                   make_gaussian(oracle::random_hermitian(rng, 2, 4), 0.3L, 0.5L)};
    for (const PotentialModel& q : pots) {
        const SectorPoint p = make_sector_point(std::polar(9.0L, 1.1L));
        const real s = 3, x0 = -0.2L;
        const CMatrix th0 = to_disk(herglotz_sample(rng, 2), s);
        const std::vector<real> xs{0.1L, 0.4L, 0.9L};
        std::vector<real> ts;
        for (real x : xs) ts.push_back(x * s);
        const auto phi = rescaled_flow(p, th0, q, x0, ts, StepControl{1e-13L, 1e-15L});
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const ThetaTrajectory tr = theta_flow(p, th0, q, x0, x0 + xs[i], StepControl{1e-13L, 1e-15L});
            CHECK(op_norm(tr.theta.back() - phi[i]) < 1e-7L);
        }
    }
}

TEST_CASE("limiting flow keeps the constant and rescaled flows approach it") {
    const real d = 1.2L;
    const CMatrix c0 = limit_constant(d) * identity(2);
    CHECK(op_norm(limiting_rhs(d, c0)) < 1e-17L);
    const auto eta = limiting_flow(d, c0, {0.5L, 1, 2});
    for (const auto& e : eta) CHECK(op_norm(e - c0) < 1e-12L);

    std::mt19937_64 rng(12);
    const PotentialModel q = make_gaussian(oracle::random_hermitian(rng, 2, 3), 0.5L, 0.6L);
    const std::vector<real> ts{0.25L, 0.5L, 1, 1.5L, 2};
    real prev = std::numeric_limits<real>::infinity();
    for (int e = 2; e <= 6; ++e) {
        const SectorPoint p = make_sector_point(std::polar(std::pow(10.0L, e), d));
        const CMatrix m0 = limit_m(p.z, 0, q);
        const auto phi = rescaled_flow(p, to_disk(m0, std::sqrt(p.modulus)), q, 0, ts, StepControl{1e-12L, 1e-14L});
        real sup = 0;
        for (const auto& f : phi) sup = std::max(sup, op_norm(f - c0));
        CHECK(sup < prev);
        prev = sup;
    }
}
