#include "doctest.h"

#include "../oracles.hpp"
#include "weylkit/potential.hpp"

using namespace weylkit;

namespace {

CMatrix scalar(real v) { return CMatrix::Constant(1, 1, v); }

// q(x) = e^{-x^2} with analytic derivatives through order 3
PotentialModel gauss_scalar() {
    return make_smooth(1, 3, [](real x, int k) {
        const real g = std::exp(-x * x);
        real v = g;
        if (k == 1) v = -2 * x * g;
        if (k == 2) v = (4 * x * x - 2) * g;
        if (k == 3) v = (12 * x - 8 * x * x * x) * g;
        return scalar(v);
    });
}

}  // namespace

TEST_CASE("make_constant") {
    const PotentialModel z = make_constant(CMatrix::Zero(2, 2));
    CHECK(z.dim() == 2);
    CHECK(op_norm(z.eval(3.2L)) == 0);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1;
    const PotentialModel c = make_constant(d);
    CHECK(op_norm(c.eval(-7) - d) == 0);
    CHECK(op_norm(c.eval(0.4L, 3)) == 0);
    CHECK(c.smoothness_order() >= kInfiniteSmoothness);
    CMatrix nh(2, 2);
    nh << 0, 1, 2, 0;
    CHECK_THROWS_AS(make_constant(nh), InvalidArgument);
}

TEST_CASE("make_truncated uses the closed interval") {
    const PotentialModel t = make_truncated(make_constant(scalar(1)), 0, 1);
    CHECK(t.eval(0.5L)(0, 0).real() == 1);
    CHECK(t.eval(2)(0, 0).real() == 0);
    CHECK(t.eval(-0.1L)(0, 0).real() == 0);
    CHECK(t.eval(1)(0, 0).real() == 1);
    CHECK(t.eval(0)(0, 0).real() == 1);
    REQUIRE(t.support().has_value());
    CHECK(t.support()->lo == 0);
    CHECK(t.support()->hi == 1);
    // interior smoothness is kept; the cuts are reported as breakpoints
    CHECK(t.smoothness_order() == kInfiniteSmoothness);
    CHECK(t.breakpoints() == std::vector<real>{0, 1});
    CHECK_THROWS_AS(make_truncated(make_constant(scalar(1)), 1, 1), InvalidArgument);
    CHECK_THROWS_AS(make_truncated(make_constant(scalar(1)), 2, 1), InvalidArgument);
}

TEST_CASE("make_smooth: Gaussian derivatives") {
    const PotentialModel g = gauss_scalar();
    CHECK(std::abs(g.eval(0, 1)(0, 0)) < 1e-18L);
    CHECK(g.eval(0, 2)(0, 0).real() == doctest::Approx(-2).epsilon(1e-15));
    CHECK_THROWS_AS(g.eval(0, 4), InvalidArgument);
}

TEST_CASE("make_smooth: inconsistent derivative closures are rejected") {
    CHECK_THROWS_AS(make_smooth(1, 1, [](real x, int k) { return scalar(k == 0 ? x * x : 3 * x); }),
                    InvalidArgument);
}

TEST_CASE("off-diagonal Gaussian via matrix_expr") {
    std::vector<EntryTerm> t(2);
    t[0].row = 0;
    t[0].col = 1;
    t[0].term.kind = ScalarTerm::Kind::gaussian;
    t[0].term.params = {0, 1};
    t[1] = t[0];
    t[1].row = 1;
    t[1].col = 0;
    const PotentialModel p = make_matrix_expr(2, t);
    CMatrix ref(2, 2);
    ref << 0, 1, 1, 0;
    CHECK(op_norm(p.eval(0) - ref) < 1e-18L);
    CHECK(is_hermitian(p.eval(0.37L)));
}

TEST_CASE("matrix_expr rejects a non-Hermitian term set") {
    std::vector<EntryTerm> t(1);
    t[0].row = 0;
    t[0].col = 1;
    t[0].term.kind = ScalarTerm::Kind::polynomial;
    t[0].term.params = {1};
    CHECK_THROWS_AS(make_matrix_expr(2, t), InvalidArgument);
}

TEST_CASE("finite-difference order of the first derivative") {
    std::vector<EntryTerm> t;
    auto add = [&](int r, int c, cplx coef, ScalarTerm::Kind k, std::vector<real> p) {
        EntryTerm e;
        e.row = r;
        e.col = c;
        e.term.kind = k;
        e.term.coefficient = coef;
        e.term.params = std::move(p);
        t.push_back(e);
    };
    using K = ScalarTerm::Kind;
    add(0, 0, 1, K::cosine, {2, 0.3L});
    add(1, 1, 1, K::exponential, {-0.7L});
    add(0, 1, cplx(0.5L, 1), K::sine, {1.3L});
    add(1, 0, cplx(0.5L, -1), K::sine, {1.3L});
    const PotentialModel p = make_matrix_expr(2, t);
    for (real x : {-0.8L, 0.2L, 1.1L}) {
        const CMatrix d = p.eval(x, 1);
        auto fd_err = [&](real h) {
            return op_norm(d - (p.eval(x + h) - p.eval(x - h)) / cplx(2 * h));
        };
        const real e1 = fd_err(1e-3L), e2 = fd_err(1e-4L);
        CHECK(std::log10(e1 / e2) >= 1.8L);
    }
}

TEST_CASE("piecewise constant, sum and reflection") {
    const PotentialModel pc = make_piecewise_constant({0, 1, 2}, {scalar(3), scalar(-1)});
    CHECK(pc.eval(0.5L)(0, 0).real() == 3);
    CHECK(pc.eval(1.5L)(0, 0).real() == -1);
    CHECK(pc.eval(2)(0, 0).real() == -1);
    CHECK(pc.eval(2.5L)(0, 0).real() == 0);
    CHECK(pc.breakpoints().size() == 3);
    REQUIRE(pc.constant_on(0.2L, 0.8L).has_value());
    CHECK(pc.constant_on(0.2L, 0.8L)->operator()(0, 0).real() == 3);
    CHECK_FALSE(pc.constant_on(0.5L, 1.5L).has_value());

    const PotentialModel s = make_sum(pc, make_constant(scalar(2)));
    CHECK(s.eval(1.5L)(0, 0).real() == 1);
    CHECK(s.eval(5)(0, 0).real() == 2);

    const PotentialModel r = pc.reflected(0);
    CHECK(r.eval(-0.5L)(0, 0).real() == 3);
    CHECK(r.eval(0.5L)(0, 0).real() == 0);

    const PotentialModel g = gauss_scalar().reflected(1);
    CHECK(g.eval(2.3L, 1)(0, 0).real() == doctest::Approx(static_cast<double>(-gauss_scalar().eval(-0.3L, 1)(0, 0).real())));
}

TEST_CASE("smooth_pieces and norms") {
    const PotentialModel pc = make_piecewise_constant({0, 1, 2}, {scalar(3), scalar(-1)});
    const auto up = smooth_pieces(pc, -1, 1.5L);
    CHECK(up == std::vector<real>{-1, 0, 1, 1.5L});
    const auto down = smooth_pieces(pc, 1.5L, -1);
    CHECK(down == std::vector<real>{1.5L, 1, 0, -1});
    CHECK(sup_norm(pc, -1, 3) == doctest::Approx(3));
    CHECK(l1_norm(pc, -1, 3) == doctest::Approx(4).epsilon(1e-14));
}

TEST_CASE("hermiticity holds across the model zoo") {
    std::mt19937_64 rng(3);
    const CMatrix a = oracle::random_hermitian(rng, 3, 2);
    const PotentialModel g = make_gaussian(a, 0.2L, 0.5L);
    const PotentialModel t = make_truncated(make_sum(g, make_constant(a)), -1, 1);
    for (real x = -2; x <= 2; x += 0.125L) {
        CHECK(hermiticity_defect(g.eval(x)) <= 1e-12L * (1 + op_norm(g.eval(x))));
        CHECK(hermiticity_defect(t.eval(x)) <= 1e-12L * (1 + op_norm(t.eval(x))));
    }
}
