#include "weylkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace weylkit {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        real x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        real dp = 0;
        for (int it = 0; it < 100; ++it) {
            real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        // recompute derivative at the converged node
        real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
        const real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

}  // namespace weylkit
