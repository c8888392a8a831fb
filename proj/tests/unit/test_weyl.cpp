#include "doctest.h"

#include "../oracles.hpp"
#include "weylkit/propagate.hpp"
#include "weylkit/weyl.hpp"

using namespace weylkit;

namespace {

CMatrix scalar(cplx v) { return CMatrix::Constant(1, 1, v); }

const StepControl tight{1e-13L, 1e-15L};

}  // namespace

TEST_CASE("boundary data classification") {
    CHECK(BoundaryData::dirichlet(2).sign_class() == SignClass::selfadjoint);
    CHECK(BoundaryData::neumann(3).sign_class() == SignClass::selfadjoint);
    CHECK(BoundaryData(identity(1), scalar(kI)).sign_class() == SignClass::positive);
    CHECK(BoundaryData(identity(1), scalar(-kI)).sign_class() == SignClass::negative);
    CHECK_THROWS_AS(BoundaryData(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)), InvalidArgument);
    const BoundaryData b(identity(2), 2 * identity(2));
    const CMatrix k = b.kernel_basis();
    CHECK(op_norm(b.beta1() * k.topRows(2) + b.beta2() * k.bottomRows(2)) < 1e-15L);
}

TEST_CASE("regular_m: free scalar Dirichlet and Neumann") {
    const PotentialModel zero = make_constant(scalar(0));
    const cplx z = kI, k = std::sqrt(z);
    const CMatrix d = regular_m(z, 1, 0, zero, BoundaryData::dirichlet(1), tight);
    CHECK(std::abs(d(0, 0) + k * std::cos(k) / std::sin(k)) < 1e-10L);
    const real len = 1.7L;
    const cplx z2(3, 1), k2 = std::sqrt(z2);
    const CMatrix n = regular_m(z2, 0.2L + len, 0.2L, zero, BoundaryData::neumann(1), tight);
    CHECK(std::abs(n(0, 0) - k2 * std::tan(k2 * len)) < 1e-10L);
}

TEST_CASE("regular_m: Herglotz for the positive class, both charts agree") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        const int m = 1 + trial % 3;
        const PotentialModel q = make_gaussian(oracle::random_hermitian(rng, m, 3), 0.5L, 0.5L);
        const BoundaryData b(identity(m), oracle::random_hermitian(rng, m, 1) + kI * oracle::random_pd(rng, m, 0.1L));
        REQUIRE(b.sign_class() == SignClass::positive);
        const cplx z(trial - 3.0L, 0.5L + trial);
        const CMatrix a = regular_m(z, 2, 0, q, b, tight, Chart::fundamental);
        const CMatrix c = regular_m(z, 2, 0, q, b, tight, Chart::cayley);
        CHECK(psd_defect(imag_part(a)) == 0);
        CHECK(oracle::rel_err(a, c) < 1e-8L);
    }
}

TEST_CASE("disk_membership examples") {
    const PotentialModel zero = make_constant(CMatrix::Zero(2, 2));
    const cplx z(1, 2), k = std::sqrt(z);
    for (real c : {0.5L, 2.0L, 8.0L})
        CHECK(disk_membership(kI * k * identity(2), z, c, 0, zero, tight) <= 1e-12L);
    std::mt19937_64 rng(5);
    const CMatrix q0 = oracle::random_hermitian(rng, 2, 3);
    CHECK(disk_membership(herglotz_sqrt(q0, z), z, 4, 0, make_constant(q0), tight) <= 1e-12L);
    // the growing branch -i sqrt(z) is not Herglotz; its Herglotz shadow leaves the disk
    CHECK_THROWS_AS(disk_membership(-kI * k * identity(2), z, 6, 0, zero, tight), InvalidArgument);
    const cplx shadow((-kI * k).real(), 1e-3L);
    CHECK(disk_membership(shadow * identity(2), z, 6, 0, zero, tight) > 1e-3L);
}

TEST_CASE("containment and nesting on a small beta sample") {
    std::mt19937_64 rng(44);
    const PotentialModel q = make_gaussian(oracle::random_hermitian(rng, 2, 2), 1, 0.8L);
    const cplx z(1, 1);
    std::vector<BoundaryData> betas;
    for (int i = 0; i < 3; ++i) {
        betas.emplace_back(identity(2), oracle::random_hermitian(rng, 2, 1) + kI * oracle::random_pd(rng, 2, 0.1L));
        const CMatrix a = oracle::random_hermitian(rng, 2, 1.5L);
        betas.emplace_back(CMatrix(oracle::Mat(a).cos()), CMatrix(oracle::Mat(a).sin()));
    }
    for (const auto& b : betas) {
        const CMatrix m4 = regular_m(z, 4, 0, q, b, tight);
        for (real c : {1.0L, 2.0L, 4.0L}) CHECK(disk_membership(m4, z, c, 0, q, tight) <= 1e-8L);
    }
}

TEST_CASE("limit_m: free and constant potentials") {
    const cplx z(-2, 3);
    const CMatrix f = limit_m(z, 0, make_constant(CMatrix::Zero(3, 3)));
    CHECK(oracle::rel_err(f, kI * std::sqrt(z) * identity(3)) < 1e-10L);
    std::mt19937_64 rng(7);
    const CMatrix q0 = oracle::random_hermitian(rng, 3, 5);
    const CMatrix c = limit_m(z, 1.5L, make_constant(q0));
    CHECK(oracle::rel_err(c, oracle::weyl_sqrt(q0, z)) < 1e-10L);
}

TEST_CASE("limit_m: scalar step barrier against the transfer-matrix oracle") {
    const real q0 = 2.5L;
    const PotentialModel step = make_piecewise_constant({0, 1}, {scalar(q0)});
    const cplx z(0, 4);
    const CMatrix m = limit_m(z, 0, step);
    const oracle::Mat ref = oracle::step_m({0, 1}, {oracle::Mat::Constant(1, 1, q0)}, z, 0);
    CHECK(std::abs(m(0, 0) - ref(0, 0)) < 1e-10L * std::abs(ref(0, 0)));
    // from the left of the support too
    const CMatrix ml = limit_m(z, -0.5L, step);
    const oracle::Mat refl = oracle::step_m({0, 1}, {oracle::Mat::Constant(1, 1, q0)}, z, -0.5L);
    CHECK(std::abs(ml(0, 0) - refl(0, 0)) < 1e-10L * std::abs(refl(0, 0)));
}

TEST_CASE("limit_m diagnostics and errors") {
    const LimitResult r = limit_m_full(cplx(1, 1), 0, make_constant(CMatrix::Zero(1, 1)));
    CHECK_FALSE(r.limit_circle_suspected);
    CHECK(r.error_estimate <= 1e-10L);
    CHECK(r.horizon >= 1);
    CHECK_THROWS_AS(limit_m(cplx(1, 0), 0, make_constant(CMatrix::Zero(1, 1))), InvalidArgument);
    // a tiny imaginary part with a short horizon cap cannot converge
    LimitOptions lo;
    lo.max_length = 2;
    try {
        limit_m(cplx(1, 1e-4L), 0, make_constant(CMatrix::Zero(1, 1)), lo);
        FAIL("expected non-convergence");
    } catch (const NonConvergenceError& e) {
        CHECK_FALSE(e.history().empty());
    }
}

TEST_CASE("limit_m: Herglotz, conjugation, translation") {
    std::mt19937_64 rng(19);
    const PotentialModel q = make_truncated(make_gaussian(oracle::random_hermitian(rng, 2, 3), 0.5L, 0.4L), 0, 1.5L);
    const LimitOptions lo{1, 1 << 10, 1e-12L, StepControl{1e-14L, 1e-16L}};
    for (cplx z : {cplx(1, 0.5L), cplx(-3, 2), cplx(10, 5)}) {
        const CMatrix m = limit_m(z, 0, q, lo);
        CHECK(psd_defect(imag_part(m)) == 0);
        const CMatrix mc = limit_m(std::conj(z), 0, q, lo);
        CHECK(oracle::rel_err(mc, m.adjoint()) < 1e-8L);
        const CMatrix m1 = limit_m(z, 1.2L, q, lo);
        const CMatrix back = riccati_flow(z, m1, q, 1.2L, 0, tight);
        CHECK(oracle::rel_err(back, m) < 1e-7L);
    }
}

TEST_CASE("mirror_m_minus") {
    const cplx z(2, 3);
    const CMatrix f = mirror_m_minus(z, 0.4L, make_constant(CMatrix::Zero(2, 2)));
    CHECK(oracle::rel_err(f, -kI * std::sqrt(z) * identity(2)) < 1e-10L);
    std::mt19937_64 rng(23);
    const CMatrix q0 = oracle::random_hermitian(rng, 2, 4);
    CHECK(oracle::rel_err(mirror_m_minus(z, 0, make_constant(q0)), -oracle::weyl_sqrt(q0, z)) < 1e-10L);
    // even about x0 = 1
    const PotentialModel even = make_gaussian(q0, 1, 0.5L);
    CHECK(oracle::rel_err(mirror_m_minus(z, 1, even), -limit_m(z, 1, even)) < 1e-9L);
}
