#include "weylkit/volterra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "weylkit/quadrature.hpp"

namespace weylkit {

namespace {

struct PanelRule {
    real h = 0;
    std::vector<real> xi;        // nodes in (0, 1)
    std::vector<real> w;         // full-panel weights (times h)
    std::vector<cplx> wexp;      // w_j e^{2ik xi_j h}
    std::vector<cplx> tail;      // e^{2ik (1 - xi_i) h}
    CMatrix w0;                  // int_{xi_i h}^{h} l_j
    CMatrix w1;                  // int_{xi_i h}^{h} e^{2ik(x' - xi_i h)} l_j
    cplx step;                   // e^{2ikh}
};

real lagrange(const std::vector<real>& xi, std::size_t j, real t) {
    real p = 1;
    for (std::size_t l = 0; l < xi.size(); ++l)
        if (l != j) p *= (t - xi[l]) / (xi[j] - xi[l]);
    return p;
}

PanelRule make_rule(real h, cplx k, int n) {
    const GaussRule& g = gauss_legendre(n);
    const GaussRule& fine = gauss_legendre(2 * n);
    PanelRule r;
    r.h = h;
    const cplx two_ik = cplx(0, 2) * k;
    for (int j = 0; j < n; ++j) {
        r.xi.push_back((g.nodes[j] + 1) / 2);
        r.w.push_back(g.weights[j] * h / 2);
        r.wexp.push_back(r.w.back() * std::exp(two_ik * r.xi.back() * h));
        r.tail.push_back(std::exp(two_ik * (1 - r.xi.back()) * h));
    }
    r.step = std::exp(two_ik * h);
    r.w0 = CMatrix::Zero(n, n);
    r.w1 = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const real a = r.xi[i];
        const real half = (1 - a) / 2;
        for (std::size_t q = 0; q < fine.nodes.size(); ++q) {
            const real t = a + half * (fine.nodes[q] + 1);
            const real wq = fine.weights[q] * half * h;
            const cplx e = std::exp(two_ik * (t - a) * h);
            for (int j = 0; j < n; ++j) {
                const real l = lagrange(r.xi, j, t);
                r.w0(i, j) += wq * l;
                r.w1(i, j) += wq * e * l;
            }
        }
    }
    return r;
}

struct Panel {
    real start;
    int rule;
};

struct Discretization {
    std::vector<PanelRule> rules;
    std::vector<Panel> panels;
    std::vector<real> nodes;
    std::vector<CMatrix> q;
};

Discretization discretize(const PotentialModel& pot, real xs, real r, cplx k, int refine,
                          int n) {
    Discretization d;
    const real hmax = std::min<real>(0.25L, 1 / (2 * std::abs(k))) / static_cast<real>(1 << refine);
    const auto cuts = smooth_pieces(pot, xs, r);
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const real lo = cuts[p], hi = cuts[p + 1];
        if (!(hi > lo)) continue;
        const int np = std::max(1, static_cast<int>(std::ceil((hi - lo) / hmax)));
        const real h = (hi - lo) / np;
        d.rules.push_back(make_rule(h, k, n));
        const int ri = static_cast<int>(d.rules.size()) - 1;
        for (int j = 0; j < np; ++j) {
            const real st = lo + j * h;
            d.panels.push_back({st, ri});
            for (real xi : d.rules.back().xi) {
                const real x = st + xi * h;
                d.nodes.push_back(x);
                d.q.push_back(pot.eval(clamp_into_piece(x, lo, hi)));
            }
        }
    }
    return d;
}

struct Sweep {
    std::vector<CMatrix> v, vp;
    CMatrix a_total, t_start;
};

// One Picard sweep: new (v, v') from f = Q v_old, marching right to left.
void sweep(const Discretization& d, const std::vector<CMatrix>& v_old, cplx k, int n, int m,
           Sweep& out) {
    const CMatrix id = CMatrix::Identity(m, m);
    const cplx inv2ik = cplx(1) / (cplx(0, 2) * k);
    CMatrix a_tail = CMatrix::Zero(m, m);
    CMatrix t_tail = CMatrix::Zero(m, m);
    std::vector<CMatrix> f(n);
    for (std::size_t pi = d.panels.size(); pi-- > 0;) {
        const PanelRule& r = d.rules[d.panels[pi].rule];
        const std::size_t base = pi * n;
        for (int j = 0; j < n; ++j) f[j] = d.q[base + j] * v_old[base + j];
        for (int i = 0; i < n; ++i) {
            CMatrix a = a_tail;
            CMatrix b = r.tail[i] * t_tail;
            for (int j = 0; j < n; ++j) {
                a += r.w0(i, j) * f[j];
                b += r.w1(i, j) * f[j];
            }
            out.v[base + i] = id - inv2ik * (a - b);
            out.vp[base + i] = -b;
        }
        CMatrix fa = CMatrix::Zero(m, m), fb = CMatrix::Zero(m, m);
        for (int j = 0; j < n; ++j) {
            fa += r.w[j] * f[j];
            fb += r.wexp[j] * f[j];
        }
        a_tail += fa;
        t_tail = fb + r.step * t_tail;
    }
    out.a_total = a_tail;
    out.t_start = t_tail;
}

struct Solve {
    std::vector<CMatrix> v, vp;
    CMatrix v_x, vp_x;
    int iterations = 0;
};

Solve picard(const Discretization& d, cplx k, real x, real xs, int n, int m,
             const VolterraOptions& opts) {
    const CMatrix id = CMatrix::Identity(m, m);
    const std::size_t nn = d.nodes.size();
    Solve s;
    s.v.assign(nn, id);
    s.vp.assign(nn, CMatrix::Zero(m, m));
    s.v_x = id;
    s.vp_x = CMatrix::Zero(m, m);
    Sweep sw;
    sw.v.resize(nn);
    sw.vp.resize(nn);
    const cplx inv2ik = cplx(1) / (cplx(0, 2) * k);
    const cplx shift = std::exp(cplx(0, 2) * k * (xs - x));
    for (int it = 1; it <= opts.max_iterations; ++it) {
        sweep(d, s.v, k, n, m, sw);
        real change = 0;
        for (std::size_t i = 0; i < nn; ++i)
            change = std::max(change, (sw.v[i] - s.v[i]).cwiseAbs().maxCoeff());
        s.v.swap(sw.v);
        s.vp.swap(sw.vp);
        const CMatrix b = shift * sw.t_start;
        const CMatrix vx = id - inv2ik * (sw.a_total - b);
        const CMatrix vpx = -b;
        const real change_x = std::max((vx - s.v_x).cwiseAbs().maxCoeff(),
                                       (vpx - s.vp_x).cwiseAbs().maxCoeff());
        s.v_x = vx;
        s.vp_x = vpx;
        s.iterations = it;
        if (nn == 0 || (change <= opts.tol * 1e-2L && change_x <= opts.tol * 1e-2L)) return s;
    }
    std::ostringstream os;
    os << "solve_volterra: Picard iteration did not converge in " << opts.max_iterations
       << " sweeps at |z| = " << static_cast<double>(std::norm(k))
       << "; use a larger |z| or the ODE path";
    throw NonConvergenceError(os.str(), {});
}

}  // namespace

VolterraSolution solve_volterra(cplx z, const PotentialModel& pot, real x,
                                const VolterraOptions& opts) {
    if (!pot.support())
        throw InvalidArgument("solve_volterra: potential has no compact support hint");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(x))
        throw InvalidArgument("solve_volterra: z and x must be finite");
    const cplx k = sqrt_upper(z);
    if (!(k.imag() > 0)) throw InvalidArgument("solve_volterra: requires Im z^{1/2} > 0");
    if (!(opts.tol > 0) || opts.max_iterations < 1 || opts.nodes_per_panel < 2 ||
        opts.max_refinements < 1)
        throw InvalidArgument("solve_volterra: invalid options");
    const int m = pot.dim();
    const int n = opts.nodes_per_panel;
    const real a = pot.support()->lo;
    const real r = pot.support()->hi;

    VolterraSolution sol;
    sol.z = z;
    sol.k = k;
    sol.x = x;
    sol.support_end = r;
    const CMatrix id = CMatrix::Identity(m, m);
    if (x >= r) {
        sol.v_x = id;
        sol.v_prime_x = CMatrix::Zero(m, m);
        sol.iterations = 1;
        sol.max_norm = 1;
        sol.majorant = 1;
        return sol;
    }
    const real xs = std::max(x, a);

    Discretization d = discretize(pot, xs, r, k, 0, n);
    Solve cur = picard(d, k, x, xs, n, m, opts);
    real res = std::numeric_limits<real>::infinity();
    for (int ref = 1; ref <= opts.max_refinements; ++ref) {
        Discretization dn = discretize(pot, xs, r, k, ref, n);
        Solve next = picard(dn, k, x, xs, n, m, opts);
        res = std::max((next.v_x - cur.v_x).cwiseAbs().maxCoeff(),
                       (next.vp_x - cur.vp_x).cwiseAbs().maxCoeff());
        d = std::move(dn);
        cur = std::move(next);
        if (res < opts.tol) break;
    }
    if (!(res < opts.tol)) {
        std::ostringstream os;
        os << "solve_volterra: grid refinement stalled at change " << static_cast<double>(res);
        throw NonConvergenceError(os.str(), {static_cast<double>(res)});
    }

    sol.grid = d.nodes;
    sol.v = std::move(cur.v);
    sol.v_prime = std::move(cur.vp);
    sol.v_x = cur.v_x;
    sol.v_prime_x = cur.vp_x;
    sol.iterations = cur.iterations;
    sol.panels = static_cast<int>(d.panels.size());
    sol.residual = res;
    sol.max_norm = op_norm(sol.v_x);
    for (const auto& vi : sol.v) sol.max_norm = std::max(sol.max_norm, op_norm(vi));
    const real ratio = l1_norm(pot, xs, r) / std::abs(k);
    sol.majorant = 1 + ratio * std::exp(ratio);
    if (sol.max_norm > sol.majorant * (1 + 1e-10L) + 1e-12L)
        throw NumericalError("solve_volterra: ||v|| exceeds the Volterra majorant");
    return sol;
}

CMatrix m_from_volterra(const VolterraSolution& sol, real x) {
    const auto m = sol.v_x.rows();
    if (x >= sol.support_end) return kI * sol.k * CMatrix::Identity(m, m);
    if (x != sol.x)
        throw InvalidArgument("m_from_volterra: x must be the solution's evaluation point");
    return kI * sol.k * CMatrix::Identity(m, m) +
           checked_right_solve(sol.v_prime_x, sol.v_x,
                               "m_from_volterra: v(x) (use a larger |z| or the ODE path)");
}

}  // namespace weylkit
