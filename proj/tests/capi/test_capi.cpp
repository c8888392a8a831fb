#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "weylkit/weylkit.h"

namespace {

using cd = std::complex<double>;

cd c(wk_complex w) { return {w.re, w.im}; }

struct Pot {
    wk_potential* p = nullptr;
    ~Pot() { wk_potential_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::strcmp(wk_version(), "0.3.0") == 0);
    CHECK(std::strcmp(wk_status_name(WK_OK), "ok") == 0);
    CHECK(std::strlen(wk_status_name(WK_NO_CONVERGENCE)) > 0);
}

TEST_CASE("free potential: limit_m, mirror and Volterra") {
    const wk_complex zero[4] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    Pot q;
    REQUIRE(wk_potential_constant(2, zero, &q.p) == WK_OK);
    CHECK(wk_potential_dim(q.p) == 2);
    CHECK(std::strcmp(wk_potential_kind(q.p), "constant") == 0);
    const wk_complex z{0, 4};
    wk_complex m[4];
    wk_limit_info info;
    REQUIRE(wk_limit_m(q.p, z, 0, nullptr, m, &info) == WK_OK);
    // i (4i)^{1/2} = sqrt(2) (-1 + i)
    CHECK(std::abs(c(m[0]) - cd(-std::sqrt(2.0), std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(c(m[1])) < 1e-14);
    CHECK(std::abs(c(m[3]) - c(m[0])) < 1e-14);
    CHECK(info.limit_circle_suspected == 0);

    REQUIRE(wk_mirror_m_minus(q.p, z, 0, nullptr, m) == WK_OK);
    CHECK(std::abs(c(m[0]) - cd(std::sqrt(2.0), -std::sqrt(2.0))) < 1e-12);

    Pot t;
    REQUIRE(wk_potential_truncated(q.p, 0, 1, &t.p) == WK_OK);
    double lo = 0, hi = 0;
    CHECK(wk_potential_support(t.p, &lo, &hi) == 1);
    CHECK(lo == 0);
    CHECK(hi == 1);
    wk_volterra_info vi;
    REQUIRE(wk_volterra_m(t.p, z, 0, nullptr, m, &vi) == WK_OK);
    CHECK(std::abs(c(m[0]) - cd(-std::sqrt(2.0), std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("constant potential matches herglotz_sqrt") {
    const wk_complex q0[4] = {{1, 0}, {0.5, -0.25}, {0.5, 0.25}, {-2, 0}};
    Pot q;
    REQUIRE(wk_potential_constant(2, q0, &q.p) == WK_OK);
    const wk_complex z{-3, 2};
    wk_complex m[4], w[4];
    REQUIRE(wk_herglotz_sqrt(2, q0, z, w) == WK_OK);
    REQUIRE(wk_limit_m(q.p, z, 0.5, nullptr, m, nullptr) == WK_OK);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c(m[i]) - c(w[i])) < 1e-9);
    // row-major: W = i (zI - Q0)^{1/2} is symmetric in the Hermitian sense only for real z
    double n = 0;
    REQUIRE(wk_op_norm(2, w, &n) == WK_OK);
    CHECK(n > 0);
}

TEST_CASE("series and Green coefficients") {
    const wk_complex q0[1] = {{2, 0}};
    Pot q;
    REQUIRE(wk_potential_constant(1, q0, &q.p) == WK_OK);
    wk_complex mk[3];
    REQUIRE(wk_m_coeffs(q.p, 0, 3, mk) == WK_OK);
    CHECK(std::abs(c(mk[0]) - cd(0, -1)) < 1e-15);          // Q/(2i)
    CHECK(std::abs(c(mk[1])) < 1e-15);
    CHECK(std::abs(c(mk[2]) - cd(0, -0.5)) < 1e-15);        // -i Q^2 / 8
    wk_complex g[3];
    REQUIRE(wk_green_coeffs(q.p, 0, 2, g) == WK_OK);
    CHECK(std::abs(c(g[0]) - cd(1, 0)) < 1e-15);
    CHECK(std::abs(c(g[1]) - cd(1, 0)) < 1e-15);            // Q/2
    CHECK(std::abs(c(g[2]) - cd(1.5, 0)) < 1e-15);          // 3 Q^2 / 8
    wk_complex s;
    REQUIRE(wk_eval_series(1, 3, mk, wk_complex{0, 1e4}, &s) == WK_OK);
    const cd exact = cd(0, 1) * std::sqrt(cd(-2, 1e4));
    CHECK(std::abs(c(s) - exact) < 1e-6);
}

TEST_CASE("verify_order through the C surface") {
    const wk_complex q0[1] = {{1.5, 0}};
    Pot q;
    REQUIRE(wk_potential_constant(1, q0, &q.p) == WK_OK);
    const double moduli[4] = {1e2, 1e3, 1e4, 1e5};
    const double deltas[2] = {0.5, 2.0};
    double scaled[8], rem[8];
    int ppd[2], pass = 0;
    wk_method used;
    REQUIRE(wk_verify_order(q.p, 0, 2, 4, moduli, 2, deltas, nullptr, scaled, rem, ppd, &pass, &used) ==
            WK_OK);
    CHECK(pass == 1);
    CHECK(used == WK_METHOD_LIMIT);
}

TEST_CASE("errors come back as status codes") {
    wk_potential* p = nullptr;
    const wk_complex bad[4] = {{0, 0}, {1, 0}, {2, 0}, {0, 0}};
    CHECK(wk_potential_constant(2, bad, &p) == WK_INVALID_ARGUMENT);
    CHECK(p == nullptr);
    CHECK(std::strlen(wk_last_error()) > 0);

    const wk_complex zero[1] = {{0, 0}};
    Pot q;
    REQUIRE(wk_potential_constant(1, zero, &q.p) == WK_OK);
    CHECK(std::strlen(wk_last_error()) == 0);
    wk_complex m[1];
    CHECK(wk_limit_m(q.p, wk_complex{1, 0}, 0, nullptr, m, nullptr) == WK_INVALID_ARGUMENT);
    CHECK(wk_limit_m(nullptr, wk_complex{1, 1}, 0, nullptr, m, nullptr) == WK_INVALID_ARGUMENT);
    CHECK(wk_volterra_m(q.p, wk_complex{0, 10}, 0, nullptr, m, nullptr) == WK_INVALID_ARGUMENT);

    wk_limit_options lo;
    wk_limit_options_default(&lo);
    CHECK(lo.max_length == 64);
    lo.max_length = 2;
    CHECK(wk_limit_m(q.p, wk_complex{1, 1e-4}, 0, &lo, m, nullptr) == WK_NO_CONVERGENCE);

    const wk_complex one[1] = {{1, 0}};
    CHECK(wk_green_diag(1, one, one, m) == WK_SINGULAR);
    CHECK(wk_riccati_flow(q.p, wk_complex{1, 1e-15}, zero, 0, 3, nullptr, m) == WK_RICCATI_POLE);
}

TEST_CASE("boundary sign classes and disk membership") {
    const wk_complex one[1] = {{1, 0}}, plus_i[1] = {{0, 1}}, minus_i[1] = {{0, -1}}, zero[1] = {{0, 0}};
    wk_sign_class s;
    REQUIRE(wk_boundary_sign_class(1, one, plus_i, &s) == WK_OK);
    CHECK(s == WK_SIGN_POSITIVE);
    REQUIRE(wk_boundary_sign_class(1, one, minus_i, &s) == WK_OK);
    CHECK(s == WK_SIGN_NEGATIVE);
    REQUIRE(wk_boundary_sign_class(1, one, zero, &s) == WK_OK);
    CHECK(s == WK_SIGN_SELFADJOINT);
    CHECK(wk_boundary_sign_class(1, zero, zero, &s) == WK_INVALID_ARGUMENT);

    Pot q;
    REQUIRE(wk_potential_constant(1, zero, &q.p) == WK_OK);
    const wk_complex z{1, 1};
    wk_complex m[1];
    REQUIRE(wk_regular_m(q.p, z, 2, 0, one, plus_i, nullptr, m) == WK_OK);
    CHECK(m[0].im > 0);
    double defect = -1;
    REQUIRE(wk_disk_membership(q.p, m, z, 2, 0, nullptr, &defect) == WK_OK);
    CHECK(defect <= 1e-8);
}

TEST_CASE("matrix_expr and locality") {
    const double g[2] = {0.5, 0.3};
    const wk_expr_term terms[2] = {{0, 1, WK_TERM_GAUSSIAN, {1, 0}, 2, g}, {1, 0, WK_TERM_GAUSSIAN, {1, 0}, 2, g}};
    Pot base, cut;
    REQUIRE(wk_potential_matrix_expr(2, 2, terms, &base.p) == WK_OK);
    REQUIRE(wk_potential_truncated(base.p, -1, 1, &cut.p) == WK_OK);
    wk_complex v[4];
    REQUIRE(wk_potential_eval(base.p, 0.5, 0, v) == WK_OK);
    CHECK(std::abs(c(v[1]) - 1.0) < 1e-15);
    CHECK(wk_potential_eval(cut.p, 0.5, 0, nullptr) == WK_INVALID_ARGUMENT);

    const double breaks[2] = {1, 2};
    const wk_complex bump[4] = {{2, 0}, {0, 0}, {0, 0}, {2, 0}};
    Pot step, p2;
    REQUIRE(wk_potential_piecewise_constant(2, 1, breaks, bump, &step.p) == WK_OK);
    REQUIRE(wk_potential_sum(cut.p, step.p, &p2.p) == WK_OK);
    const double moduli[4] = {4, 16, 64, 256};
    double ims[4], diff[4], norm[4];
    wk_locality_summary sum;
    REQUIRE(wk_locality(cut.p, p2.p, 0, 1, 4, moduli, nullptr, ims, diff, norm, &sum) == WK_OK);
    CHECK(sum.pass == 1);
    CHECK(sum.slope <= -1.8);
}
