#pragma once

#include <memory>
#include <span>
#include <vector>

#include "swfem/mesh.hpp"

namespace swfem {

enum class Constraint { Free, ZeroLeft, ZeroRight, ZeroBoth, Periodic };

/// Spline finite element space on a mesh: piecewise polynomials of degree
/// order-1 with C^continuity joins, realized as a B-spline basis with
/// interior knot multiplicity order-1-continuity. Boundary constraints drop
/// the endpoint-interpolatory basis functions; Periodic wraps the basis
/// around the domain.
class FemSpace {
public:
    FemSpace(Mesh mesh, int order, int continuity, Constraint constraint);

    const Mesh& mesh() const { return mesh_; }
    int order() const { return order_; }
    int continuity() const { return continuity_; }
    Constraint constraint() const { return constraint_; }
    bool periodic() const { return constraint_ == Constraint::Periodic; }
    int dim() const { return dim_; }

    // Column bandwidth of the Gram matrix in this numbering.
    int bandwidth() const { return order_ - 1; }
    // Number of basis functions supported on one element.
    int local_size() const { return order_; }

    // Global index of local basis function `local` on `element`, or -1 when
    // the function was removed by a boundary constraint.
    int dof_index(int element, int local) const;

    // Values (and derivatives up to n_der <= 2) of the local_size() basis
    // functions on `element` at x. Output layout: out[d * local_size() + l].
    void basis_on_element(int element, double x, int n_der, double* out) const;

    // Spline evaluation given a coefficient vector of length dim().
    // Derivatives are one-sided from the right at breakpoints, except at the
    // right end of the domain.
    double eval(std::span<const double> coef, double x, int deriv = 0) const;

    // Greville abscissae paired with the dofs; classical collocation points
    // for interpolation (Schoenberg-Whitney ordering).
    std::vector<double> greville_points() const;

private:
    Mesh mesh_;
    int order_;       // r: local polynomial space is P_{r-1}
    int continuity_;  // k: C^k across breakpoints
    int mult_;        // interior knot multiplicity r-1-k
    int dim_;
    int unconstrained_dim_;  // basis count before boundary constraints
    Constraint constraint_;
    // Per-element knot window of 2*order_ values: the knots surrounding the
    // element's span, so evaluation never needs the global knot vector.
    std::vector<double> elem_knots_;

    const double* window(int element) const {
        return elem_knots_.data() + static_cast<std::size_t>(element) * 2 * order_;
    }
};

/// Coefficient vector of a function in a FemSpace.
struct CoefVec {
    std::shared_ptr<const FemSpace> space;
    std::vector<double> coef;

    double operator()(double x, int deriv = 0) const { return space->eval(coef, x, deriv); }
};

std::shared_ptr<const FemSpace> make_space(const Mesh& mesh, int order, int continuity,
                                           Constraint constraint);

} // namespace swfem
