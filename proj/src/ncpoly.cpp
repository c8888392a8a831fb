#include "weylkit/ncpoly.hpp"

#include <sstream>

namespace weylkit {

namespace {

// Coefficients are dyadic rationals times powers of i; anything this small
// is cancellation debris.
constexpr real kDropBelow = 1e-40L;

}  // namespace

NcPoly NcPoly::constant(cplx c) {
    NcPoly p;
    p.add_term({}, c);
    return p;
}

NcPoly NcPoly::symbol(int order, cplx c) {
    if (order < 0) throw InvalidArgument("NcPoly::symbol: negative derivative order");
    NcPoly p;
    p.add_term({order}, c);
    return p;
}

void NcPoly::add_term(const Monomial& w, cplx c) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (std::abs(c) > kDropBelow) terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= kDropBelow) terms_.erase(it);
}

int NcPoly::max_order() const {
    int best = -1;
    for (const auto& [w, c] : terms_)
        for (int j : w) best = std::max(best, j);
    return best;
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
    NcPoly r = *this;
    r += o;
    return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
    NcPoly r = *this;
    r -= o;
    return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
    NcPoly r;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            Monomial w = a;
            w.insert(w.end(), b.begin(), b.end());
            r.add_term(w, ca * cb);
        }
    return r;
}

NcPoly NcPoly::scaled(cplx c) const {
    NcPoly r;
    for (const auto& [w, v] : terms_) r.add_term(w, v * c);
    return r;
}

NcPoly NcPoly::derivative() const {
    NcPoly r;
    for (const auto& [w, c] : terms_)
        for (std::size_t i = 0; i < w.size(); ++i) {
            Monomial d = w;
            ++d[i];
            r.add_term(d, c);
        }
    return r;
}

NcPoly NcPoly::reflected() const {
    NcPoly r;
    for (const auto& [w, c] : terms_) {
        int total = 0;
        for (int j : w) total += j;
        r.add_term(w, total % 2 == 0 ? c : -c);
    }
    return r;
}

CMatrix NcPoly::evaluate(const std::vector<CMatrix>& derivs) const {
    if (derivs.empty()) throw InvalidArgument("NcPoly::evaluate: no derivative values");
    const auto m = derivs.front().rows();
    CMatrix acc = CMatrix::Zero(m, m);
    for (const auto& [w, c] : terms_) {
        CMatrix prod = CMatrix::Identity(m, m);
        for (int j : w) {
            if (j >= static_cast<int>(derivs.size()))
                throw InvalidArgument("NcPoly::evaluate: missing derivative value");
            prod = prod * derivs[j];
        }
        acc += c * prod;
    }
    return acc;
}

std::string NcPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << static_cast<double>(c.real()) << "," << static_cast<double>(c.imag()) << ")";
        for (int j : w) os << "*Q" << std::string(static_cast<std::size_t>(j), '\'');
    }
    return os.str();
}

}  // namespace weylkit
