#include "weylkit/asymptotics.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "weylkit/propagate.hpp"

namespace weylkit {

namespace {

std::mutex g_poly_mutex;
std::vector<NcPoly> g_m_polys;  // g_m_polys[j-1] = m_j

// m_1 = Q/(2i); m_{k+1} = (i/2)(m_k' + sum_{l=1}^{k-1} m_l m_{k-l}).
void extend_m_polys(int n) {
    if (g_m_polys.empty()) g_m_polys.push_back(NcPoly::symbol(0, cplx(1) / cplx(0, 2)));
    while (static_cast<int>(g_m_polys.size()) < n) {
        const int k = static_cast<int>(g_m_polys.size());
        NcPoly acc = g_m_polys[k - 1].derivative();
        for (int l = 1; l <= k - 1; ++l) acc += g_m_polys[l - 1] * g_m_polys[k - l - 1];
        g_m_polys.push_back(acc.scaled(cplx(0, 0.5L)));
    }
}

void require_smoothness(const PotentialModel& pot, int needed, std::string_view what) {
    if (pot.smoothness_order() < needed) {
        std::ostringstream os;
        os << what << ": needs Q^(" << needed << ") but the potential's smoothness_order is "
           << pot.smoothness_order();
        throw InvalidArgument(os.str());
    }
}

std::vector<CMatrix> derivs_for(const std::vector<NcPoly>& polys, const PotentialModel& pot,
                                real x) {
    int top = 0;
    for (const auto& p : polys) top = std::max(top, p.max_order());
    return pot.derivatives(x, top);
}

cplx inv_pow(cplx k, int j) { return std::pow(k, -j); }

}  // namespace

std::vector<NcPoly> m_coeff_polys(int n) {
    if (n < 0) throw InvalidArgument("m_coeff_polys: order must be >= 0");
    std::lock_guard<std::mutex> lock(g_poly_mutex);
    extend_m_polys(std::max(n, 1));
    return {g_m_polys.begin(), g_m_polys.begin() + n};
}

AsymptoticSeries m_coeffs(const PotentialModel& pot, real x, int n) {
    if (n < 0) throw InvalidArgument("m_coeffs: order must be >= 0");
    if (n > 0) require_smoothness(pot, n - 1, "m_coeffs");
    AsymptoticSeries s;
    s.x = x;
    s.order = n;
    s.dim = pot.dim();
    if (n == 0) return s;
    const auto polys = m_coeff_polys(n);
    const auto d = derivs_for(polys, pot, x);
    for (const auto& p : polys) s.coeffs.push_back(p.evaluate(d));
    return s;
}

CMatrix eval_series(const AsymptoticSeries& series, cplx z) {
    const cplx k = sqrt_upper(z);
    if (!(k.imag() > 0)) throw InvalidArgument("eval_series: requires Im z^{1/2} > 0");
    CMatrix m = kI * k * CMatrix::Identity(series.dim, series.dim);
    for (int j = 1; j <= static_cast<int>(series.coeffs.size()); ++j)
        m += series.coeffs[j - 1] * inv_pow(k, j);
    return m;
}

std::vector<NcPoly> riccati_residual_polys(int n) {
    if (n < 0) throw InvalidArgument("riccati_residual_polys: order must be >= 0");
    const auto m = m_coeff_polys(n);
    auto mj = [&](int j) { return (j >= 1 && j <= n) ? m[j - 1] : NcPoly{}; };
    // index p -> power k^{2-p}, p = 0 .. 2n+2
    std::vector<NcPoly> out(static_cast<std::size_t>(2 * n + 3));
    // (ik)^2 + k^2
    out[0] = NcPoly::constant(-1) + NcPoly::constant(1);
    for (int j = 1; j <= 2 * n + 1; ++j) {
        // power k^{1-j}: 2i m_j + m_{j-1}' + sum_{a+b=j-1} m_a m_b - [j=1] Q
        NcPoly c = mj(j).scaled(cplx(0, 2)) + mj(j - 1).derivative();
        for (int a = 1; a <= j - 2; ++a) c += mj(a) * mj(j - 1 - a);
        if (j == 1) c -= NcPoly::symbol(0);
        out[static_cast<std::size_t>(j + 1)] = c;
    }
    return out;
}

int riccati_cancelled_powers(int n) {
    const auto r = riccati_residual_polys(n);
    int count = 0;
    while (count < static_cast<int>(r.size()) && r[count].is_zero()) ++count;
    return count;
}

CMatrix reference_m(cplx z, const PotentialModel& pot, real x0, const VerifyOptions& opts,
                    std::string* method) {
    MMethod mth = opts.method;
    if (mth == MMethod::automatic) mth = pot.support() ? MMethod::volterra : MMethod::limit;
    if (mth == MMethod::volterra) {
        if (method) *method = "volterra";
        return m_from_volterra(solve_volterra(z, pot, x0, opts.volterra), x0);
    }
    if (method) *method = "limit_m";
    return limit_m(z, x0, pot, opts.limit);
}

std::vector<OrderReport> verify_orders(const PotentialModel& pot, real x0,
                                       const std::vector<int>& orders,
                                       const std::vector<real>& moduli,
                                       const std::vector<real>& deltas,
                                       const VerifyOptions& opts) {
    if (moduli.size() < 3) throw InvalidArgument("verify_order: needs at least three moduli");
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (!(moduli[i] > 0) || (i > 0 && !(moduli[i] > moduli[i - 1])))
            throw InvalidArgument("verify_order: moduli must be positive and increasing");
    for (real d : deltas)
        if (!(d > 0 && d < kPi)) throw InvalidArgument("verify_order: angles must lie in (0, pi)");
    int top = 0;
    for (int n : orders) {
        if (n < 0) throw InvalidArgument("verify_order: order must be >= 0");
        top = std::max(top, n);
    }
    const AsymptoticSeries full = m_coeffs(pot, x0, top);

    std::vector<OrderReport> reports(orders.size());
    for (std::size_t o = 0; o < orders.size(); ++o) {
        reports[o].order = orders[o];
        reports[o].x0 = x0;
        reports[o].moduli = moduli;
        reports[o].deltas = deltas;
    }
    for (real d : deltas) {
        std::vector<std::vector<real>> scaled(orders.size()), plain(orders.size());
        for (real r : moduli) {
            const cplx z = std::polar(r, d);
            std::string method;
            const CMatrix m = reference_m(z, pot, x0, opts, &method);
            const real floor = opts.noise_floor * op_norm(m);
            for (std::size_t o = 0; o < orders.size(); ++o) {
                AsymptoticSeries s = full;
                s.order = orders[o];
                s.coeffs.resize(static_cast<std::size_t>(orders[o]));
                const real rem = op_norm(m - eval_series(s, z));
                plain[o].push_back(rem <= floor ? -rem : rem);
                scaled[o].push_back(rem * std::pow(r, orders[o] / 2.0L));
                reports[o].method = method;
            }
        }
        for (std::size_t o = 0; o < orders.size(); ++o) {
            const auto& sr = scaled[o];
            const auto& pr = plain[o];
            const std::size_t n = sr.size();
            const bool decreasing = sr[n - 1] < sr[n - 2] && sr[n - 2] < sr[n - 3];
            // Negative entries mark remainders under the noise floor.
            const bool at_noise = pr[n - 1] <= 0 && pr[n - 2] <= 0 && pr[n - 3] <= 0;
            reports[o].pass_per_delta.push_back(decreasing || at_noise);
            std::vector<real> abs_plain;
            for (real v : pr) abs_plain.push_back(std::abs(v));
            reports[o].scaled_remainder.push_back(sr);
            reports[o].remainder.push_back(abs_plain);
        }
    }
    for (auto& rep : reports) {
        rep.pass = !rep.pass_per_delta.empty();
        for (bool b : rep.pass_per_delta) rep.pass = rep.pass && b;
    }
    return reports;
}

OrderReport verify_order(const PotentialModel& pot, real x0, int n,
                         const std::vector<real>& moduli, const std::vector<real>& deltas,
                         const VerifyOptions& opts) {
    return verify_orders(pot, x0, {n}, moduli, deltas, opts).front();
}

CMatrix sandwich_solve(const MatrixField& a, const CMatrix& x_end, real x1, real x0,
                       const StepControl& ctrl) {
    if (!a) throw InvalidArgument("sandwich_solve: empty coefficient field");
    if (x_end.rows() != x_end.cols() || x_end.rows() == 0)
        throw InvalidArgument("sandwich_solve: X_end must be square and non-empty");
    require_finite(x_end, "sandwich_solve");
    const auto m = x_end.rows();
    const auto mm = m * m;
    const CMatrix id = CMatrix::Identity(m, m);
    CVector y(2 * mm);
    y.head(mm) = pack(id);
    y.tail(mm) = pack(id);
    OdeRhs rhs = [&](real x, const CVector& s, CVector& ds) {
        const CMatrix ax = a(x);
        const auto yy = Eigen::Map<const CMatrix>(s.data(), m, m);
        const auto zz = Eigen::Map<const CMatrix>(s.data() + mm, m, m);
        Eigen::Map<CMatrix>(ds.data(), m, m).noalias() = ax * yy;
        Eigen::Map<CMatrix>(ds.data() + mm, m, m).noalias() = zz * ax;
    };
    const CVector out = integrate_ode(rhs, y, x1, x0, ctrl);
    return unpack(out, m, m) * x_end * unpack(out, m, m, mm);
}

LocalityReport locality_experiment(const PotentialModel& pot1, const PotentialModel& pot2,
                                   real x0, real x1, const std::vector<real>& moduli,
                                   const LocalityOptions& opts) {
    if (!(x1 > x0)) throw InvalidArgument("locality_experiment: requires x1 > x0");
    if (pot1.dim() != pot2.dim()) throw InvalidArgument("locality_experiment: dimension mismatch");
    if (moduli.size() < 2) throw InvalidArgument("locality_experiment: needs at least two moduli");
    if (!(opts.delta > 0 && opts.delta < kPi))
        throw InvalidArgument("locality_experiment: angle must lie in (0, pi)");
    for (int i = 1; i < 64; ++i) {
        const real x = x0 + (x1 - x0) * i / 64;
        const CMatrix q1 = pot1.eval(x), q2 = pot2.eval(x);
        if (op_norm(q1 - q2) > 1e-12L * (1 + op_norm(q1))) {
            std::ostringstream os;
            os << "locality_experiment: potentials differ at x = " << static_cast<double>(x);
            throw InvalidArgument(os.str());
        }
    }
    const int m = pot1.dim();
    const auto mm = static_cast<Eigen::Index>(m) * m;
    const real len = x1 - x0;

    LocalityReport rep;
    rep.moduli = moduli;
    rep.slope_bound = -2 * len * (1 - opts.slope_slack);
    for (real r : moduli) {
        const cplx z = std::polar(r, opts.delta);
        const real im = sqrt_upper(z).imag();
        const CMatrix m1 = limit_m(z, x1, pot1, opts.limit);
        const CMatrix m2 = limit_m(z, x1, pot2, opts.limit);
        // X = M1 - M2 solves X' = AX + XA with A = -(M1 + M2)/2 on [x0, x1];
        // M1, M2, Y, Z are carried back to x0 together.
        CVector y(4 * mm);
        y.segment(0, mm) = pack(m1);
        y.segment(mm, mm) = pack(m2);
        y.segment(2 * mm, mm) = pack(CMatrix::Identity(m, m));
        y.segment(3 * mm, mm) = pack(CMatrix::Identity(m, m));
        const auto pieces = smooth_pieces(pot1, x1, x0);
        for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
            const real lo = pieces[p], hi = pieces[p + 1];
            OdeRhs rhs = [&](real x, const CVector& s, CVector& ds) {
                CMatrix qz = pot1.eval(clamp_into_piece(x, lo, hi));
                qz.diagonal().array() -= z;
                const auto a1 = Eigen::Map<const CMatrix>(s.data(), m, m);
                const auto a2 = Eigen::Map<const CMatrix>(s.data() + mm, m, m);
                const auto yy = Eigen::Map<const CMatrix>(s.data() + 2 * mm, m, m);
                const auto zz = Eigen::Map<const CMatrix>(s.data() + 3 * mm, m, m);
                const CMatrix a = -(a1 + a2) * cplx(0.5L);
                Eigen::Map<CMatrix>(ds.data(), m, m) = qz - a1 * a1;
                Eigen::Map<CMatrix>(ds.data() + mm, m, m) = qz - a2 * a2;
                Eigen::Map<CMatrix>(ds.data() + 2 * mm, m, m) = a * yy;
                Eigen::Map<CMatrix>(ds.data() + 3 * mm, m, m) = zz * a;
            };
            y = integrate_ode(rhs, y, lo, hi, opts.step);
        }
        const CMatrix d = unpack(y, m, m, 2 * mm) * (m1 - m2) * unpack(y, m, m, 3 * mm);
        const real dn = op_norm(d);
        rep.im_sqrt.push_back(im);
        rep.diff.push_back(dn);
        rep.normalized.push_back(dn * std::exp(2 * len * im));
    }

    real dmax = 0;
    for (real d : rep.diff) dmax = std::max(dmax, d);
    if (dmax <= std::numeric_limits<real>::min() * 1e10L) {
        rep.identical = rep.slope_pass = rep.bounded = rep.pass = true;
        rep.slope = -std::numeric_limits<real>::infinity();
        return rep;
    }
    // Least-squares slope of log D against Im sqrt z.
    const std::size_t n = rep.diff.size();
    real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const real xv = rep.im_sqrt[i];
        const real yv = std::log(std::max(rep.diff[i], std::numeric_limits<real>::min()));
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
    }
    const real nn = static_cast<real>(n);
    rep.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    rep.slope_pass = rep.slope <= rep.slope_bound;
    real nmax = 0;
    for (real v : rep.normalized) nmax = std::max(nmax, v);
    rep.bounded = nmax <= opts.bounded_factor * rep.normalized.front();
    rep.pass = rep.slope_pass && rep.bounded;
    return rep;
}

CMatrix green_diag(const CMatrix& m_minus, const CMatrix& m_plus) {
    if (m_minus.rows() != m_plus.rows() || m_minus.cols() != m_plus.cols() ||
        m_minus.rows() != m_minus.cols() || m_minus.rows() == 0)
        throw InvalidArgument("green_diag: M_- and M_+ must be square of equal size");
    require_finite(m_minus, "green_diag");
    require_finite(m_plus, "green_diag");
    return checked_inverse(m_minus - m_plus, "green_diag: M_- - M_+");
}

std::vector<NcPoly> green_coeff_polys(int n) {
    if (n < 0) throw InvalidArgument("green_coeff_polys: order must be >= 0");
    const int top = std::max(1, 2 * n - 1);
    const auto m = m_coeff_polys(top);
    // M_- - M_+ = -2ik (I + sum_{j>=1} e_{j+1} k^{-(j+1)}), e_{j+1} = (m~_j + m_j)/(2i).
    std::vector<NcPoly> e(static_cast<std::size_t>(2 * n + 1));
    for (int j = 1; j + 1 <= 2 * n; ++j)
        e[static_cast<std::size_t>(j + 1)] =
            (m[j - 1].reflected() + m[j - 1]).scaled(cplx(1) / cplx(0, 2));
    std::vector<NcPoly> b(static_cast<std::size_t>(2 * n + 1));
    b[0] = NcPoly::constant(1);
    for (int k = 1; k <= 2 * n; ++k) {
        NcPoly acc;
        for (int j = 1; j <= k; ++j) acc -= e[j] * b[k - j];
        b[k] = acc;
    }
    std::vector<NcPoly> g;
    for (int p = 0; p <= n; ++p) {
        if (p >= 1 && !b[2 * p - 1].is_zero())
            throw NumericalError("green_coeff_polys: odd inverse coefficient does not vanish");
        g.push_back(b[2 * p]);
    }
    return g;
}

GreenSeries green_coeffs(const PotentialModel& pot, real x, int n) {
    if (n < 0) throw InvalidArgument("green_coeffs: order must be >= 0");
    if (n > 0) require_smoothness(pot, 2 * n - 2, "green_coeffs");
    const auto polys = green_coeff_polys(n);
    const auto d = derivs_for(polys, pot, x);
    GreenSeries g;
    g.x = x;
    g.order = n;
    g.dim = pot.dim();
    for (const auto& p : polys) g.coeffs.push_back(p.evaluate(d));
    return g;
}

CMatrix eval_green_series(const GreenSeries& series, cplx z) {
    const cplx k = sqrt_upper(z);
    if (!(k.imag() > 0)) throw InvalidArgument("eval_green_series: requires Im z^{1/2} > 0");
    CMatrix g = CMatrix::Zero(series.dim, series.dim);
    for (int p = 0; p < static_cast<int>(series.coeffs.size()); ++p)
        g += series.coeffs[p] * inv_pow(k, 2 * p + 1);
    return cplx(0, 0.5L) * g;
}

}  // namespace weylkit
