#include "weylkit/potential.hpp"

#include <cmath>
#include <sstream>

#include "weylkit/quadrature.hpp"

namespace weylkit {

namespace {

using detail::PotentialImpl;

void require_order(const PotentialImpl& impl, int k) {
    if (k < 0) throw InvalidArgument("potential: negative derivative order");
    if (k > impl.order) {
        std::ostringstream os;
        os << "potential '" << impl.kind << "': derivative Q^(" << k
           << ") requested but smoothness_order is " << impl.order;
        throw InvalidArgument(os.str());
    }
}

std::vector<real> merged(std::vector<real> a, const std::vector<real>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Physicists' Hermite polynomial H_k(u).
real hermite(int k, real u) {
    real h0 = 1;
    if (k == 0) return h0;
    real h1 = 2 * u;
    for (int n = 1; n < k; ++n) {
        const real h2 = 2 * u * h1 - 2 * n * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// d^k/dx^k exp(-((x - c)/w)^2)
real gaussian_derivative(real x, int k, real center, real width) {
    const real u = (x - center) / width;
    const real sign = (k % 2 == 0) ? 1 : -1;
    return sign * hermite(k, u) * std::exp(-u * u) / std::pow(width, static_cast<real>(k));
}

class ConstantImpl final : public PotentialImpl {
public:
    explicit ConstantImpl(CMatrix q0) : q0_(std::move(q0)) {}
    CMatrix eval(real, int k) const override {
        if (k == 0) return q0_;
        return CMatrix::Zero(dim, dim);
    }
    std::optional<CMatrix> constant_on(real, real) const override { return q0_; }

private:
    CMatrix q0_;
};

class TruncatedImpl final : public PotentialImpl {
public:
    TruncatedImpl(PotentialModel base, real x0, real x1)
        : base_(std::move(base)), x0_(x0), x1_(x1) {}
    CMatrix eval(real x, int k) const override {
        if (x < x0_ || x > x1_) return CMatrix::Zero(dim, dim);
        return base_.eval(x, k);
    }
    std::optional<CMatrix> constant_on(real a, real b) const override {
        if (a > b) std::swap(a, b);
        if (b <= x0_ || a >= x1_) return CMatrix::Zero(dim, dim);
        if (a >= x0_ && b <= x1_) return base_.constant_on(a, b);
        return std::nullopt;
    }

private:
    PotentialModel base_;
    real x0_, x1_;
};

class GaussianImpl final : public PotentialImpl {
public:
    GaussianImpl(CMatrix a, real c, real w) : a_(std::move(a)), c_(c), w_(w) {}
    CMatrix eval(real x, int k) const override {
        return a_ * cplx(gaussian_derivative(x, k, c_, w_));
    }

private:
    CMatrix a_;
    real c_, w_;
};

class PiecewiseConstantImpl final : public PotentialImpl {
public:
    PiecewiseConstantImpl(std::vector<real> b, std::vector<CMatrix> v)
        : b_(std::move(b)), v_(std::move(v)) {}
    CMatrix eval(real x, int k) const override {
        if (k > 0 || x < b_.front() || x > b_.back()) return CMatrix::Zero(dim, dim);
        auto it = std::upper_bound(b_.begin(), b_.end(), x);
        std::size_t piece = static_cast<std::size_t>(it - b_.begin());
        piece = piece == 0 ? 0 : piece - 1;
        if (piece >= v_.size()) piece = v_.size() - 1;
        return v_[piece];
    }
    std::optional<CMatrix> constant_on(real a, real b) const override {
        if (a > b) std::swap(a, b);
        if (b <= b_.front() || a >= b_.back()) return CMatrix::Zero(dim, dim);
        for (std::size_t i = 0; i + 1 < b_.size(); ++i)
            if (a >= b_[i] && b <= b_[i + 1]) return v_[i];
        return std::nullopt;
    }

private:
    std::vector<real> b_;
    std::vector<CMatrix> v_;
};

class SumImpl final : public PotentialImpl {
public:
    SumImpl(PotentialModel a, PotentialModel b) : a_(std::move(a)), b_(std::move(b)) {}
    CMatrix eval(real x, int k) const override { return a_.eval(x, k) + b_.eval(x, k); }
    std::optional<CMatrix> constant_on(real a, real b) const override {
        auto qa = a_.constant_on(a, b);
        if (!qa) return std::nullopt;
        auto qb = b_.constant_on(a, b);
        if (!qb) return std::nullopt;
        return CMatrix(*qa + *qb);
    }

private:
    PotentialModel a_, b_;
};

class ReflectedImpl final : public PotentialImpl {
public:
    ReflectedImpl(PotentialModel base, real center) : base_(std::move(base)), c_(center) {}
    CMatrix eval(real y, int k) const override {
        CMatrix q = base_.eval(2 * c_ - y, k);
        if (k % 2 != 0) q = -q;
        return q;
    }
    std::optional<CMatrix> constant_on(real a, real b) const override {
        return base_.constant_on(2 * c_ - b, 2 * c_ - a);
    }

private:
    PotentialModel base_;
    real c_;
};

class SmoothImpl final : public PotentialImpl {
public:
    explicit SmoothImpl(DerivativeFn fn) : fn_(std::move(fn)) {}
    CMatrix eval(real x, int k) const override { return fn_(x, k); }

private:
    DerivativeFn fn_;
};

void require_hermitian_input(const CMatrix& q, std::string_view what) {
    if (q.rows() == 0 || q.rows() != q.cols())
        throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
    require_finite(q, what);
    if (hermiticity_defect(q) > 1e-12L * (1 + op_norm(q)))
        throw InvalidArgument(std::string(what) + ": matrix is not Hermitian");
}

}  // namespace

PotentialModel::PotentialModel(std::shared_ptr<const detail::PotentialImpl> impl)
    : impl_(std::move(impl)) {
    if (!impl_) throw InvalidArgument("potential: null implementation");
}

CMatrix PotentialModel::eval(real x, int k) const {
    require_order(*impl_, k);
    return impl_->eval(x, k);
}

std::optional<CMatrix> PotentialModel::constant_on(real a, real b) const {
    return impl_->constant_on(a, b);
}

std::vector<CMatrix> PotentialModel::derivatives(real x, int n) const {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.push_back(eval(x, k));
    return out;
}

PotentialModel PotentialModel::reflected(real center) const {
    auto impl = std::make_shared<ReflectedImpl>(*this, center);
    impl->dim = dim();
    impl->order = smoothness_order();
    impl->kind = "reflected(" + kind() + ")";
    if (support()) impl->support = Interval{2 * center - support()->hi, 2 * center - support()->lo};
    for (real b : breakpoints()) impl->breaks.push_back(2 * center - b);
    std::sort(impl->breaks.begin(), impl->breaks.end());
    return PotentialModel(std::move(impl));
}

PotentialModel make_constant(const CMatrix& q0) {
    require_hermitian_input(q0, "make_constant");
    auto impl = std::make_shared<ConstantImpl>(hermitian_part(q0));
    impl->dim = static_cast<int>(q0.rows());
    impl->order = kInfiniteSmoothness;
    impl->kind = "constant";
    return PotentialModel(std::move(impl));
}

PotentialModel make_truncated(const PotentialModel& base, real x0, real x1) {
    if (!(x0 < x1)) throw InvalidArgument("make_truncated: requires x0 < x1");
    auto impl = std::make_shared<TruncatedImpl>(base, x0, x1);
    impl->dim = base.dim();
    impl->order = base.smoothness_order();
    impl->kind = "truncated(" + base.kind() + ")";
    real lo = x0, hi = x1;
    if (base.support()) {
        lo = std::max(lo, base.support()->lo);
        hi = std::min(hi, base.support()->hi);
        if (lo > hi) lo = hi = x0;
    }
    impl->support = Interval{lo, hi};
    std::vector<real> br{x0, x1};
    for (real b : base.breakpoints())
        if (b > x0 && b < x1) br.push_back(b);
    impl->breaks = merged(std::move(br), {});
    return PotentialModel(std::move(impl));
}

PotentialModel make_gaussian(const CMatrix& amplitude, real center, real width) {
    require_hermitian_input(amplitude, "make_gaussian");
    if (!(width > 0) || !std::isfinite(width) || !std::isfinite(center))
        throw InvalidArgument("make_gaussian: width must be positive and finite");
    auto impl = std::make_shared<GaussianImpl>(hermitian_part(amplitude), center, width);
    impl->dim = static_cast<int>(amplitude.rows());
    impl->order = kInfiniteSmoothness;
    impl->kind = "gaussian";
    return PotentialModel(std::move(impl));
}

PotentialModel make_piecewise_constant(std::vector<real> breaks, std::vector<CMatrix> values) {
    if (values.empty() || breaks.size() != values.size() + 1)
        throw InvalidArgument("make_piecewise_constant: need n+1 breaks for n values");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] < breaks[i + 1]))
            throw InvalidArgument("make_piecewise_constant: breaks must be strictly increasing");
    const auto m = values.front().rows();
    for (auto& v : values) {
        require_hermitian_input(v, "make_piecewise_constant");
        if (v.rows() != m) throw InvalidArgument("make_piecewise_constant: dimension mismatch");
        v = hermitian_part(v);
    }
    auto impl = std::make_shared<PiecewiseConstantImpl>(breaks, std::move(values));
    impl->dim = static_cast<int>(m);
    impl->order = 0;
    impl->kind = "piecewise_constant";
    impl->support = Interval{breaks.front(), breaks.back()};
    impl->breaks = std::move(breaks);
    return PotentialModel(std::move(impl));
}

PotentialModel make_sum(const PotentialModel& a, const PotentialModel& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("make_sum: dimension mismatch");
    auto impl = std::make_shared<SumImpl>(a, b);
    impl->dim = a.dim();
    impl->order = std::min(a.smoothness_order(), b.smoothness_order());
    impl->kind = "sum(" + a.kind() + "," + b.kind() + ")";
    if (a.support() && b.support())
        impl->support = Interval{std::min(a.support()->lo, b.support()->lo),
                                 std::max(a.support()->hi, b.support()->hi)};
    impl->breaks = merged(a.breakpoints(), b.breakpoints());
    return PotentialModel(std::move(impl));
}

PotentialModel make_smooth(int dim, int order, DerivativeFn fn, std::vector<real> check_points,
                           std::string kind) {
    if (dim < 1) throw InvalidArgument("make_smooth: dim must be >= 1");
    if (order < 0) throw InvalidArgument("make_smooth: order must be >= 0");
    if (!fn) throw InvalidArgument("make_smooth: empty derivative function");

    const real h = 1e-5L;
    const int checked = std::min(order, 4);
    for (real x : check_points) {
        const CMatrix q = fn(x, 0);
        require_square(q, dim, "make_smooth");
        require_finite(q, "make_smooth");
        if (hermiticity_defect(q) > 1e-12L * (1 + op_norm(q))) {
            std::ostringstream os;
            os << "make_smooth: Q(" << static_cast<double>(x) << ") is not Hermitian";
            throw InvalidArgument(os.str());
        }
        for (int k = 0; k < checked; ++k) {
            const CMatrix fd = (fn(x + h, k) - fn(x - h, k)) / cplx(2 * h);
            const CMatrix d = fn(x, k + 1);
            require_square(d, dim, "make_smooth");
            if (op_norm(fd - d) > 1e-6L * std::max<real>(1, op_norm(d))) {
                std::ostringstream os;
                os << "make_smooth: derivative of order " << k + 1 << " at x = "
                   << static_cast<double>(x)
                   << " disagrees with the central difference of order " << k;
                throw InvalidArgument(os.str());
            }
        }
    }
    auto impl = std::make_shared<SmoothImpl>(std::move(fn));
    impl->dim = dim;
    impl->order = order;
    impl->kind = std::move(kind);
    return PotentialModel(std::move(impl));
}

real ScalarTerm::value(real x, int k) const {
    switch (kind) {
        case Kind::polynomial: {
            // k-th derivative of sum_j c_j x^j
            real acc = 0;
            for (std::size_t j = params.size(); j-- > static_cast<std::size_t>(k);) {
                real fall = 1;
                for (int i = 0; i < k; ++i) fall *= static_cast<real>(j - i);
                acc = acc * x + fall * params[j];
            }
            return acc;
        }
        case Kind::gaussian:
            return gaussian_derivative(x, k, params.at(0), params.at(1));
        case Kind::cosine:
        case Kind::sine: {
            const real w = params.at(0), ph = params.size() > 1 ? params[1] : 0;
            // d^k cos(wx+ph) = w^k cos(wx + ph + k pi/2); sine shifts by -pi/2.
            const real shift = kind == Kind::sine ? -kPi / 2 : 0;
            return std::pow(w, static_cast<real>(k)) * std::cos(w * x + ph + shift + k * kPi / 2);
        }
        case Kind::exponential: {
            const real r = params.at(0);
            return std::pow(r, static_cast<real>(k)) * std::exp(r * x);
        }
    }
    return 0;
}

PotentialModel make_matrix_expr(int dim, std::vector<EntryTerm> terms) {
    if (dim < 1) throw InvalidArgument("make_matrix_expr: dim must be >= 1");
    for (const auto& t : terms) {
        if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim)
            throw InvalidArgument("make_matrix_expr: entry index out of range");
        const auto& p = t.term.params;
        using K = ScalarTerm::Kind;
        const bool ok = (t.term.kind == K::polynomial && !p.empty()) ||
                        (t.term.kind == K::gaussian && p.size() == 2 && p[1] > 0) ||
                        ((t.term.kind == K::cosine || t.term.kind == K::sine) && !p.empty() &&
                         p.size() <= 2) ||
                        (t.term.kind == K::exponential && p.size() == 1);
        if (!ok) throw InvalidArgument("make_matrix_expr: malformed term parameters");
    }
    auto fn = [dim, terms = std::move(terms)](real x, int k) {
        CMatrix q = CMatrix::Zero(dim, dim);
        for (const auto& t : terms) q(t.row, t.col) += t.term.coefficient * t.term.value(x, k);
        return q;
    };
    return make_smooth(dim, kInfiniteSmoothness, std::move(fn),
                       {-1.3L, -0.4L, 0.1L, 0.75L, 1.6L}, "matrix_expr");
}

std::vector<real> smooth_pieces(const PotentialModel& pot, real a, real b) {
    std::vector<real> pts{a};
    const real lo = std::min(a, b), hi = std::max(a, b);
    std::vector<real> inner;
    for (real x : pot.breakpoints())
        if (x > lo && x < hi) inner.push_back(x);
    if (b < a) std::reverse(inner.begin(), inner.end());
    pts.insert(pts.end(), inner.begin(), inner.end());
    pts.push_back(b);
    return pts;
}

real sup_norm(const PotentialModel& pot, real a, real b, int samples) {
    real best = 0;
    for (int i = 0; i < samples; ++i) {
        const real x = a + (b - a) * static_cast<real>(i) / std::max(1, samples - 1);
        best = std::max(best, op_norm(pot.eval(x)));
    }
    for (real x : pot.breakpoints())
        if (x >= a && x <= b) best = std::max(best, op_norm(pot.eval(x)));
    return best;
}

real l1_norm(const PotentialModel& pot, real a, real b) {
    const auto& rule = gauss_legendre(16);
    const auto pts = smooth_pieces(pot, std::min(a, b), std::max(a, b));
    real acc = 0;
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
        const real lo = pts[p], hi = pts[p + 1];
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.25L)));
        const real h = (hi - lo) / panels;
        for (int j = 0; j < panels; ++j) {
            const real mid = lo + (j + 0.5L) * h;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const real x = clamp_into_piece(mid + rule.nodes[i] * h / 2, lo, hi);
                acc += rule.weights[i] * h / 2 * op_norm(pot.eval(x));
            }
        }
    }
    return acc;
}

}  // namespace weylkit
