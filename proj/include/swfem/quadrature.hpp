#pragma once

#include <vector>

namespace swfem {

/// Gauss-Legendre rule on the reference interval [-1, 1]; exact for
/// polynomials of degree <= 2s-1.
struct QuadratureRule {
    int s = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes computed by Newton iteration on the Legendre polynomial; no tables.
QuadratureRule gauss_rule(int s);

} // namespace swfem
