#pragma once

#include <vector>

#include "weylkit/matkit.hpp"

namespace weylkit {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<real> nodes;
    std::vector<real> weights;
};

// Nodes ascending; computed by Newton iteration on P_n, cached per order.
const GaussRule& gauss_legendre(int n);

}  // namespace weylkit
