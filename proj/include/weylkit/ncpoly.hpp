#pragma once

// Non-commutative polynomials in the symbols Q, Q', Q'', ...
// A monomial is a word of derivative orders, e.g. {0, 1} = Q Q'.

#include <map>
#include <string>
#include <vector>

#include "weylkit/matkit.hpp"

namespace weylkit {

using Monomial = std::vector<int>;

class NcPoly {
public:
    NcPoly() = default;

    static NcPoly constant(cplx c);     // c * (empty word); evaluates to c I
    static NcPoly symbol(int order, cplx c = 1);

    const std::map<Monomial, cplx>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Highest derivative order appearing (-1 for constants / zero).
    int max_order() const;

    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    NcPoly operator*(const NcPoly& o) const;  // word concatenation
    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-(const NcPoly& o) const;
    NcPoly scaled(cplx c) const;

    // Leibniz rule on every word.
    NcPoly derivative() const;

    // Q^{(j)} -> (-1)^j Q^{(j)}.
    NcPoly reflected() const;

    // derivs[j] = Q^{(j)}(x); returns the m x m value.
    CMatrix evaluate(const std::vector<CMatrix>& derivs) const;

    std::string to_string() const;

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Monomial& w, cplx c);
    std::map<Monomial, cplx> terms_;
};

}  // namespace weylkit
