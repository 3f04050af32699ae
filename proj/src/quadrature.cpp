#include "swfem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace swfem {

namespace {

// Legendre P_s and its derivative at x by the three-term recurrence.
void legendre(int s, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (s == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int n = 1; n < s; ++n) p1 = ((2 * n + 1) * x * p1 - n * std::exchange(p0, p1)) / (n + 1);
    p = p1;
    dp = s * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadratureRule gauss_rule(int s) {
    if (s < 1 || s > 16) throw std::invalid_argument("gauss_rule: s must be in [1, 16]");
    QuadratureRule rule;
    rule.s = s;
    rule.nodes.assign(static_cast<std::size_t>(s), 0.0);
    rule.weights.assign(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < (s + 1) / 2; ++i) {
        // deterministic initial guess (Chebyshev-like), refined by Newton
        double x = std::cos(std::numbers::pi * (i + 0.75) / (s + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(s, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(s, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // enforce exact symmetry of the rule
        rule.nodes[static_cast<std::size_t>(i)] = -std::abs(x);
        rule.nodes[static_cast<std::size_t>(s - 1 - i)] = std::abs(x);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(s - 1 - i)] = w;
    }
    if (s % 2 == 1) rule.nodes[static_cast<std::size_t>(s / 2)] = 0.0;
    return rule;
}

} // namespace swfem
