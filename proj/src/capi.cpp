#include "weylkit/weylkit.h"

#include <string>

#include "weylkit/asymptotics.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/propagate.hpp"
#include "weylkit/volterra.hpp"
#include "weylkit/weyl.hpp"

using namespace weylkit;

struct wk_potential {
    PotentialModel model;
};

namespace {

thread_local std::string g_last_error;

wk_status fail(wk_status s, const char* what) {
    g_last_error = what;
    return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
wk_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return WK_OK;
    } catch (const InvalidArgument& e) {
        return fail(WK_INVALID_ARGUMENT, e.what());
    } catch (const SingularMatrixError& e) {
        return fail(WK_SINGULAR, e.what());
    } catch (const OverflowError& e) {
        return fail(WK_OVERFLOW, e.what());
    } catch (const StiffnessError& e) {
        return fail(WK_STIFF, e.what());
    } catch (const RiccatiPoleError& e) {
        return fail(WK_RICCATI_POLE, e.what());
    } catch (const NonConvergenceError& e) {
        return fail(WK_NO_CONVERGENCE, e.what());
    } catch (const NumericalError& e) {
        return fail(WK_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(WK_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WK_INTERNAL, e.what());
    } catch (...) {
        return fail(WK_INTERNAL, "unknown error");
    }
}

void need(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

cplx to_cplx(wk_complex z) { return {z.re, z.im}; }

CMatrix read_matrix(int m, const wk_complex* a, const char* what) {
    need(m >= 1, "matrix dimension must be >= 1");
    need(a != nullptr, what);
    CMatrix out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = to_cplx(a[i * m + j]);
    return out;
}

void write_matrix(const CMatrix& a, wk_complex* out) {
    need(out != nullptr, "null output pointer");
    const auto m = a.rows();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out[i * a.cols() + j].re = static_cast<double>(a(i, j).real());
            out[i * a.cols() + j].im = static_cast<double>(a(i, j).imag());
        }
}

const PotentialModel& model(const wk_potential* p) {
    need(p != nullptr, "null potential handle");
    return p->model;
}

wk_potential* wrap(PotentialModel pm) { return new wk_potential{std::move(pm)}; }

void store(wk_potential** out, PotentialModel pm) {
    need(out != nullptr, "null output handle");
    *out = wrap(std::move(pm));
}

StepControl step_from(const wk_step_control* c) {
    StepControl s;
    if (c) {
        s.rtol = c->rtol;
        s.atol = c->atol;
        s.max_steps = c->max_steps;
    }
    return s;
}

LimitOptions limit_from(const wk_limit_options* o) {
    LimitOptions l;
    if (o) {
        l.initial_length = o->initial_length;
        l.max_length = o->max_length;
        l.rtol = o->rtol;
        l.step = step_from(&o->step);
        l.check_limit_circle = o->check_limit_circle != 0;
    }
    return l;
}

VolterraOptions volterra_from(const wk_volterra_options* o) {
    VolterraOptions v;
    if (o) {
        v.tol = o->tol;
        v.max_iterations = o->max_iterations;
        v.max_refinements = o->max_refinements;
    }
    return v;
}

void fill_step(wk_step_control* c, const StepControl& s) {
    c->rtol = static_cast<double>(s.rtol);
    c->atol = static_cast<double>(s.atol);
    c->max_steps = s.max_steps;
}

void fill_limit(wk_limit_options* o, const LimitOptions& l) {
    o->initial_length = static_cast<double>(l.initial_length);
    o->max_length = static_cast<double>(l.max_length);
    o->rtol = static_cast<double>(l.rtol);
    fill_step(&o->step, l.step);
    o->check_limit_circle = l.check_limit_circle ? 1 : 0;
}

void fill_volterra(wk_volterra_options* o, const VolterraOptions& v) {
    o->tol = static_cast<double>(v.tol);
    o->max_iterations = v.max_iterations;
    o->max_refinements = v.max_refinements;
}

std::vector<real> reals(int n, const double* a, const char* what) {
    need(n >= 0 && (n == 0 || a != nullptr), what);
    return std::vector<real>(a, a + n);
}

}  // namespace

extern "C" {

const char* wk_last_error(void) { return g_last_error.c_str(); }

const char* wk_status_name(wk_status s) {
    switch (s) {
        case WK_OK: return "ok";
        case WK_INVALID_ARGUMENT: return "invalid_argument";
        case WK_NUMERICAL: return "numerical";
        case WK_SINGULAR: return "singular";
        case WK_OVERFLOW: return "overflow";
        case WK_STIFF: return "stiff";
        case WK_RICCATI_POLE: return "riccati_pole";
        case WK_NO_CONVERGENCE: return "no_convergence";
        case WK_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* wk_version(void) { return "0.3.0"; }

void wk_step_control_default(wk_step_control* ctrl) {
    if (ctrl) fill_step(ctrl, StepControl{});
}

wk_status wk_potential_constant(int m, const wk_complex* q0, wk_potential** out) {
    return guarded([&] { store(out, make_constant(read_matrix(m, q0, "null Q0"))); });
}

wk_status wk_potential_gaussian(int m, const wk_complex* amplitude, double center, double width,
                                wk_potential** out) {
    return guarded([&] {
        store(out, make_gaussian(read_matrix(m, amplitude, "null amplitude"), center, width));
    });
}

wk_status wk_potential_piecewise_constant(int m, int npieces, const double* breaks,
                                          const wk_complex* values, wk_potential** out) {
    return guarded([&] {
        need(npieces >= 1, "piecewise_constant: need at least one piece");
        need(breaks && values, "piecewise_constant: null arrays");
        std::vector<real> b(breaks, breaks + npieces + 1);
        std::vector<CMatrix> v;
        for (int i = 0; i < npieces; ++i) v.push_back(read_matrix(m, values + i * m * m, "null"));
        store(out, make_piecewise_constant(std::move(b), std::move(v)));
    });
}

wk_status wk_potential_truncated(const wk_potential* base, double x0, double x1,
                                 wk_potential** out) {
    return guarded([&] { store(out, make_truncated(model(base), x0, x1)); });
}

wk_status wk_potential_sum(const wk_potential* a, const wk_potential* b, wk_potential** out) {
    return guarded([&] { store(out, make_sum(model(a), model(b))); });
}

wk_status wk_potential_reflected(const wk_potential* p, double center, wk_potential** out) {
    return guarded([&] { store(out, model(p).reflected(center)); });
}

wk_status wk_potential_matrix_expr(int m, int nterms, const wk_expr_term* terms,
                                   wk_potential** out) {
    return guarded([&] {
        need(nterms >= 0 && (nterms == 0 || terms), "matrix_expr: null terms");
        std::vector<EntryTerm> ts;
        for (int i = 0; i < nterms; ++i) {
            const wk_expr_term& t = terms[i];
            need(t.kind >= WK_TERM_POLYNOMIAL && t.kind <= WK_TERM_EXPONENTIAL,
                 "matrix_expr: unknown term kind");
            EntryTerm e;
            e.row = t.row;
            e.col = t.col;
            e.term.kind = static_cast<ScalarTerm::Kind>(t.kind);
            e.term.coefficient = to_cplx(t.coefficient);
            e.term.params = reals(t.nparams, t.params, "matrix_expr: null params");
            ts.push_back(std::move(e));
        }
        store(out, make_matrix_expr(m, std::move(ts)));
    });
}

void wk_potential_free(wk_potential* p) { delete p; }

int wk_potential_dim(const wk_potential* p) { return p ? p->model.dim() : 0; }

int wk_potential_smoothness(const wk_potential* p) { return p ? p->model.smoothness_order() : -1; }

int wk_potential_support(const wk_potential* p, double* lo, double* hi) {
    if (!p || !p->model.support()) return 0;
    if (lo) *lo = static_cast<double>(p->model.support()->lo);
    if (hi) *hi = static_cast<double>(p->model.support()->hi);
    return 1;
}

const char* wk_potential_kind(const wk_potential* p) { return p ? p->model.kind().c_str() : ""; }

wk_status wk_potential_eval(const wk_potential* p, double x, int k, wk_complex* out) {
    return guarded([&] { write_matrix(model(p).eval(x, k), out); });
}

wk_status wk_potential_sup_norm(const wk_potential* p, double a, double b, double* out) {
    return guarded([&] {
        need(out != nullptr, "null output");
        *out = static_cast<double>(sup_norm(model(p), a, b));
    });
}

wk_status wk_herglotz_sqrt(int m, const wk_complex* q0, wk_complex z, wk_complex* out) {
    return guarded([&] { write_matrix(herglotz_sqrt(read_matrix(m, q0, "null Q0"), to_cplx(z)), out); });
}

wk_status wk_op_norm(int m, const wk_complex* a, double* out) {
    return guarded([&] {
        need(out != nullptr, "null output");
        *out = static_cast<double>(op_norm(read_matrix(m, a, "null matrix")));
    });
}

void wk_limit_options_default(wk_limit_options* opts) {
    if (opts) fill_limit(opts, LimitOptions{});
}

wk_status wk_limit_m(const wk_potential* p, wk_complex z, double x0, const wk_limit_options* opts,
                     wk_complex* m_out, wk_limit_info* info) {
    return guarded([&] {
        const LimitResult r = limit_m_full(to_cplx(z), x0, model(p), limit_from(opts));
        write_matrix(r.m, m_out);
        if (info) {
            info->error_estimate = static_cast<double>(r.error_estimate);
            info->horizon = static_cast<double>(r.horizon);
            info->limit_circle_suspected = r.limit_circle_suspected ? 1 : 0;
            info->doublings = static_cast<int>(r.history.size());
        }
    });
}

wk_status wk_mirror_m_minus(const wk_potential* p, wk_complex z, double x0,
                            const wk_limit_options* opts, wk_complex* m_out) {
    return guarded([&] { write_matrix(mirror_m_minus(to_cplx(z), x0, model(p), limit_from(opts)), m_out); });
}

wk_status wk_boundary_sign_class(int m, const wk_complex* beta1, const wk_complex* beta2,
                                 wk_sign_class* out) {
    return guarded([&] {
        need(out != nullptr, "null output");
        const BoundaryData b(read_matrix(m, beta1, "null beta1"), read_matrix(m, beta2, "null beta2"));
        *out = static_cast<wk_sign_class>(b.sign_class());
    });
}

wk_status wk_regular_m(const wk_potential* p, wk_complex z, double c, double x0,
                       const wk_complex* beta1, const wk_complex* beta2,
                       const wk_step_control* ctrl, wk_complex* m_out) {
    return guarded([&] {
        const int m = model(p).dim();
        const BoundaryData b(read_matrix(m, beta1, "null beta1"), read_matrix(m, beta2, "null beta2"));
        write_matrix(regular_m(to_cplx(z), c, x0, model(p), b, step_from(ctrl)), m_out);
    });
}

wk_status wk_disk_membership(const wk_potential* p, const wk_complex* m_cand, wk_complex z,
                             double c, double x0, const wk_step_control* ctrl, double* defect) {
    return guarded([&] {
        need(defect != nullptr, "null output");
        const CMatrix mc = read_matrix(model(p).dim(), m_cand, "null candidate");
        *defect = static_cast<double>(
            disk_membership(mc, to_cplx(z), c, x0, model(p), step_from(ctrl)));
    });
}

wk_status wk_riccati_flow(const wk_potential* p, wk_complex z, const wk_complex* m_init,
                          double x_from, double x_to, const wk_step_control* ctrl,
                          wk_complex* m_out) {
    return guarded([&] {
        const CMatrix mi = read_matrix(model(p).dim(), m_init, "null initial value");
        write_matrix(riccati_flow(to_cplx(z), mi, model(p), x_from, x_to, step_from(ctrl)), m_out);
    });
}

void wk_volterra_options_default(wk_volterra_options* opts) {
    if (opts) fill_volterra(opts, VolterraOptions{});
}

wk_status wk_volterra_m(const wk_potential* p, wk_complex z, double x,
                        const wk_volterra_options* opts, wk_complex* m_out,
                        wk_volterra_info* info) {
    return guarded([&] {
        const VolterraSolution sol = solve_volterra(to_cplx(z), model(p), x, volterra_from(opts));
        write_matrix(m_from_volterra(sol, x), m_out);
        if (info) {
            info->iterations = sol.iterations;
            info->panels = sol.panels;
            info->residual = static_cast<double>(sol.residual);
            info->max_norm = static_cast<double>(sol.max_norm);
            info->majorant = static_cast<double>(sol.majorant);
        }
    });
}

wk_status wk_m_coeffs(const wk_potential* p, double x, int n, wk_complex* out) {
    return guarded([&] {
        const AsymptoticSeries s = m_coeffs(model(p), x, n);
        const int mm = s.dim * s.dim;
        for (int k = 0; k < n; ++k) write_matrix(s.coeffs[k], out + k * mm);
    });
}

wk_status wk_eval_series(int m, int n, const wk_complex* coeffs, wk_complex z, wk_complex* out) {
    return guarded([&] {
        need(n >= 0, "order must be >= 0");
        AsymptoticSeries s;
        s.order = n;
        s.dim = m;
        for (int k = 0; k < n; ++k) s.coeffs.push_back(read_matrix(m, coeffs + k * m * m, "null coefficients"));
        write_matrix(eval_series(s, to_cplx(z)), out);
    });
}

wk_status wk_green_coeffs(const wk_potential* p, double x, int n, wk_complex* out) {
    return guarded([&] {
        const GreenSeries g = green_coeffs(model(p), x, n);
        const int mm = g.dim * g.dim;
        for (int k = 0; k <= n; ++k) write_matrix(g.coeffs[k], out + k * mm);
    });
}

wk_status wk_eval_green_series(int m, int n, const wk_complex* coeffs, wk_complex z,
                               wk_complex* out) {
    return guarded([&] {
        need(n >= 0, "order must be >= 0");
        GreenSeries g;
        g.order = n;
        g.dim = m;
        for (int k = 0; k <= n; ++k) g.coeffs.push_back(read_matrix(m, coeffs + k * m * m, "null coefficients"));
        write_matrix(eval_green_series(g, to_cplx(z)), out);
    });
}

wk_status wk_green_diag(int m, const wk_complex* m_minus, const wk_complex* m_plus,
                        wk_complex* out) {
    return guarded([&] {
        write_matrix(green_diag(read_matrix(m, m_minus, "null M_-"), read_matrix(m, m_plus, "null M_+")), out);
    });
}

void wk_verify_options_default(wk_verify_options* opts) {
    if (!opts) return;
    const VerifyOptions v;
    opts->method = static_cast<wk_method>(v.method);
    fill_limit(&opts->limit, v.limit);
    fill_volterra(&opts->volterra, v.volterra);
    opts->noise_floor = static_cast<double>(v.noise_floor);
}

wk_status wk_verify_order(const wk_potential* p, double x0, int n, int nmod, const double* moduli,
                          int ndelta, const double* deltas, const wk_verify_options* opts,
                          double* scaled, double* remainder, int* pass_per_delta, int* pass,
                          wk_method* method_used) {
    return guarded([&] {
        VerifyOptions v;
        if (opts) {
            need(opts->method >= WK_METHOD_AUTO && opts->method <= WK_METHOD_VOLTERRA,
                 "verify: unknown method");
            v.method = static_cast<MMethod>(opts->method);
            v.limit = limit_from(&opts->limit);
            v.volterra = volterra_from(&opts->volterra);
            v.noise_floor = opts->noise_floor;
        }
        const OrderReport r = verify_order(model(p), x0, n, reals(nmod, moduli, "null moduli"),
                                           reals(ndelta, deltas, "null deltas"), v);
        for (int d = 0; d < ndelta; ++d) {
            for (int j = 0; j < nmod; ++j) {
                if (scaled) scaled[d * nmod + j] = static_cast<double>(r.scaled_remainder[d][j]);
                if (remainder) remainder[d * nmod + j] = static_cast<double>(r.remainder[d][j]);
            }
            if (pass_per_delta) pass_per_delta[d] = r.pass_per_delta[d] ? 1 : 0;
        }
        if (pass) *pass = r.pass ? 1 : 0;
        if (method_used) *method_used = r.method == "volterra" ? WK_METHOD_VOLTERRA : WK_METHOD_LIMIT;
    });
}

void wk_locality_options_default(wk_locality_options* opts) {
    if (!opts) return;
    const LocalityOptions l;
    opts->delta = static_cast<double>(l.delta);
    fill_limit(&opts->limit, l.limit);
    fill_step(&opts->step, l.step);
    opts->slope_slack = static_cast<double>(l.slope_slack);
    opts->bounded_factor = static_cast<double>(l.bounded_factor);
}

wk_status wk_locality(const wk_potential* p1, const wk_potential* p2, double x0, double x1,
                      int nmod, const double* moduli, const wk_locality_options* opts,
                      double* im_sqrt, double* diff, double* normalized,
                      wk_locality_summary* summary) {
    return guarded([&] {
        LocalityOptions l;
        if (opts) {
            l.delta = opts->delta;
            l.limit = limit_from(&opts->limit);
            l.step = step_from(&opts->step);
            l.slope_slack = opts->slope_slack;
            l.bounded_factor = opts->bounded_factor;
        }
        const LocalityReport r = locality_experiment(model(p1), model(p2), x0, x1,
                                                     reals(nmod, moduli, "null moduli"), l);
        for (int j = 0; j < nmod; ++j) {
            if (im_sqrt) im_sqrt[j] = static_cast<double>(r.im_sqrt[j]);
            if (diff) diff[j] = static_cast<double>(r.diff[j]);
            if (normalized) normalized[j] = static_cast<double>(r.normalized[j]);
        }
        if (summary) {
            summary->slope = static_cast<double>(r.slope);
            summary->slope_bound = static_cast<double>(r.slope_bound);
            summary->identical = r.identical ? 1 : 0;
            summary->slope_pass = r.slope_pass ? 1 : 0;
            summary->bounded = r.bounded ? 1 : 0;
            summary->pass = r.pass ? 1 : 0;
        }
    });
}

}  // extern "C"
