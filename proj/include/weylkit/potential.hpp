#pragma once

// Potential models Q(x): Hermitian m x m, locally integrable, with analytic
// derivatives up to a declared order.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/matkit.hpp"

namespace weylkit {

// Sentinel order for models with derivatives of every order.
inline constexpr int kInfiniteSmoothness = 1 << 20;

struct Interval {
    real lo = 0;
    real hi = 0;
};

namespace detail {

class PotentialImpl {
public:
    virtual ~PotentialImpl() = default;
    virtual CMatrix eval(real x, int k) const = 0;
    // Value of Q when it is constant on the open interval (a, b).
    virtual std::optional<CMatrix> constant_on(real, real) const { return std::nullopt; }

    int dim = 1;
    int order = 0;
    std::optional<Interval> support;
    std::vector<real> breaks;  // sorted points where Q may jump
    std::string kind;
};

}  // namespace detail

class PotentialModel {
public:
    explicit PotentialModel(std::shared_ptr<const detail::PotentialImpl> impl);

    int dim() const noexcept { return impl_->dim; }
    int smoothness_order() const noexcept { return impl_->order; }
    const std::string& kind() const noexcept { return impl_->kind; }

    // k-th derivative Q^{(k)}(x); throws InvalidArgument when k exceeds the order.
    CMatrix eval(real x, int k = 0) const;

    // Q, Q', ..., Q^{(n)} at x.
    std::vector<CMatrix> derivatives(real x, int n) const;

    // When present, Q vanishes identically outside this closed interval.
    const std::optional<Interval>& support() const noexcept { return impl_->support; }

    // Points where Q (or a derivative) may be discontinuous.
    const std::vector<real>& breakpoints() const noexcept { return impl_->breaks; }

    // Q on (a, b) when it is known to be constant there.
    std::optional<CMatrix> constant_on(real a, real b) const;

    // y -> Q(2 * center - y); derivatives pick up (-1)^k.
    PotentialModel reflected(real center) const;

private:
    std::shared_ptr<const detail::PotentialImpl> impl_;
};

// Q(x) = Q0 everywhere.
PotentialModel make_constant(const CMatrix& q0);

// Q restricted to the closed interval [x0, x1], zero elsewhere.
PotentialModel make_truncated(const PotentialModel& base, real x0, real x1);

// Q(x) = A exp(-((x - center)/width)^2), A Hermitian.
PotentialModel make_gaussian(const CMatrix& amplitude, real center, real width);

// values[i] on [breaks[i], breaks[i+1]) (last piece closed), zero outside.
PotentialModel make_piecewise_constant(std::vector<real> breaks, std::vector<CMatrix> values);

PotentialModel make_sum(const PotentialModel& a, const PotentialModel& b);

// (x, k) -> Q^{(k)}(x) for k <= order.
using DerivativeFn = std::function<CMatrix(real x, int k)>;

// Wraps analytic derivative closures. Consistency Q^{(k+1)} ~ central
// difference of Q^{(k)} and Hermiticity are spot-checked at `check_points`.
PotentialModel make_smooth(int dim, int order, DerivativeFn fn,
                           std::vector<real> check_points = {-1.3L, -0.4L, 0.1L, 0.75L, 1.6L},
                           std::string kind = "smooth");

// Scalar building blocks for entry-wise matrix expressions.
struct ScalarTerm {
    enum class Kind { polynomial, gaussian, cosine, sine, exponential };
    Kind kind = Kind::polynomial;
    cplx coefficient{1, 0};
    // polynomial: c0, c1, ...   gaussian: center, width
    // cosine / sine: frequency, phase   exponential: rate
    std::vector<real> params;

    real value(real x, int k) const;  // k-th derivative of the real shape
};

struct EntryTerm {
    int row = 0;
    int col = 0;
    ScalarTerm term;
};

// Q_{row,col}(x) = sum of coefficient * shape(x) over the terms of that entry.
PotentialModel make_matrix_expr(int dim, std::vector<EntryTerm> terms);

// sup over sampled points of ||Q(x)|| on [a, b].
real sup_norm(const PotentialModel& pot, real a, real b, int samples = 257);

// Integral of ||Q(x)|| over [a, b] (Gauss-Legendre on each smooth piece).
real l1_norm(const PotentialModel& pot, real a, real b);

// a, the breakpoints strictly between a and b, and b, ordered from a to b.
std::vector<real> smooth_pieces(const PotentialModel& pot, real a, real b);

// Evaluates Q inside the open piece (lo, hi) so that values at a cut point
// come from the piece being integrated.
inline real clamp_into_piece(real x, real lo, real hi) {
    if (lo > hi) std::swap(lo, hi);
    const real a = std::nextafter(lo, hi);
    const real b = std::nextafter(hi, lo);
    if (a > b) return (lo + hi) / 2;
    return std::clamp(x, a, b);
}

}  // namespace weylkit
