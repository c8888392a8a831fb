#include "doctest.h"

#include "../oracles.hpp"
#include "weylkit/cayley.hpp"
#include "weylkit/matkit.hpp"

using namespace weylkit;

namespace {

CMatrix diag2(real a, real b) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

}  // namespace

TEST_CASE("herglotz_sqrt: free scalar at z = i") {
    const CMatrix w = herglotz_sqrt(CMatrix::Zero(1, 1), kI);
    const real r = 1 / std::sqrt(2.0L);
    CHECK(std::abs(w(0, 0) - cplx(-r, r)) < 1e-15L);
}

TEST_CASE("herglotz_sqrt: shifted identity is a scalar root") {
    for (real c : {-3.0L, 0.5L, 7.0L}) {
        const cplx z(2, 5);
        const CMatrix w = herglotz_sqrt(c * identity(3), z);
        const cplx ref = kI * std::sqrt(z - c);
        CHECK(oracle::rel_err(w, ref * identity(3)) < 1e-15L);
    }
}

TEST_CASE("herglotz_sqrt: diag(1, -1) at z = 5i against the Schur oracle") {
    const cplx z(0, 5);
    const CMatrix q0 = diag2(1, -1);
    const CMatrix w = herglotz_sqrt(q0, z);
    CHECK(oracle::rel_err(w, oracle::weyl_sqrt(q0, z)) < 1e-12L);
    CHECK(std::abs(w(0, 0) - kI * std::sqrt(z - 1.0L)) < 1e-15L);
    CHECK(std::abs(w(1, 1) - kI * std::sqrt(z + 1.0L)) < 1e-15L);
    const CMatrix shift = z * identity(2) - q0;
    CHECK(op_norm(w * w + shift) < 1e-12L * op_norm(shift));
}

TEST_CASE("herglotz_sqrt: round trip and Im W > 0 on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.1, kPi - 0.1), lmod(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + trial % 4;
        const CMatrix q0 = oracle::random_hermitian(rng, m, std::pow(10.0L, trial % 4));
        const cplx z = std::polar(std::pow(10.0L, static_cast<real>(lmod(rng))), static_cast<real>(ang(rng)));
        const CMatrix w = herglotz_sqrt(q0, z);
        const CMatrix shift = z * identity(m) - q0;
        CHECK(op_norm(w * w + shift) <= 1e-10L * op_norm(shift));
        CHECK(psd_defect(imag_part(w)) == 0);
        CHECK(oracle::rel_err(w, oracle::weyl_sqrt(q0, z)) < 1e-10L);
    }
}

TEST_CASE("herglotz_sqrt: rejects bad input") {
    CMatrix nh(2, 2);
    nh << 1, 2, 3, 4;
    CHECK_THROWS_AS(herglotz_sqrt(nh, kI), InvalidArgument);
    CHECK_THROWS_AS(herglotz_sqrt(identity(2), cplx(1, 0)), InvalidArgument);
    CHECK_THROWS_AS(herglotz_sqrt(identity(2), cplx(1, -1)), InvalidArgument);
}

TEST_CASE("psd_defect examples") {
    CHECK(psd_defect(identity(3)) == 0);
    CHECK(psd_defect(diag2(1, -0.25L)) == doctest::Approx(0.25).epsilon(1e-15));
    CMatrix nh(2, 2);
    nh << 1, 1, 0, 1;
    CHECK_THROWS_AS(psd_defect(nh), InvalidArgument);
}

TEST_CASE("contraction_defect examples") {
    CHECK(contraction_defect(CMatrix::Zero(2, 2)) == 0);
    CHECK(contraction_defect(2 * identity(2)) == doctest::Approx(3).epsilon(1e-15));
    CMatrix c(1, 1);
    c(0, 0) = limit_constant(kPi / 2);
    CHECK(contraction_defect(c) == 0);
    CHECK(std::abs(c(0, 0)) == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-14));
}

TEST_CASE("contraction_defect vanishes on Cayley images of Herglotz matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + trial % 3;
        const CMatrix mv = oracle::random_hermitian(rng, m, 3) + kI * oracle::random_pd(rng, m, 0.05L);
        const CMatrix th = to_disk(mv, 1.7L);
        CHECK(contraction_defect(th) == 0);
        CHECK(op_norm(th) < 1);
    }
}

TEST_CASE("certify_hermitian orders the spectrum") {
    const HermitianCertificate c = certify_hermitian(diag2(3, -2));
    CHECK(c.min_eigenvalue == doctest::Approx(-2));
    CHECK(c.max_eigenvalue == doctest::Approx(3));
    CHECK(c.hermiticity_defect == 0);
}

TEST_CASE("checked solves refuse singular systems") {
    CMatrix s = CMatrix::Zero(2, 2);
    s(0, 0) = 1;
    CHECK_THROWS_AS(checked_inverse(s, "test"), SingularMatrixError);
    const CMatrix a = diag2(2, 4);
    CHECK(oracle::rel_err(checked_solve(a, identity(2), "t"), diag2(0.5L, 0.25L)) < 1e-18L);
    CHECK(oracle::rel_err(checked_right_solve(identity(2), a, "t"), diag2(0.5L, 0.25L)) < 1e-18L);
}

TEST_CASE("require_finite and require_square") {
    CMatrix a = identity(2);
    a(1, 0) = cplx(std::numeric_limits<real>::quiet_NaN(), 0);
    CHECK_THROWS_AS(require_finite(a, "a"), InvalidArgument);
    CHECK_THROWS_AS(require_square(identity(2), 3, "a"), InvalidArgument);
    CHECK_NOTHROW(require_square(identity(3), 3, "a"));
}
