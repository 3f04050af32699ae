#pragma once

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "swfem/banded.hpp"
#include "swfem/quadrature.hpp"
#include "swfem/space.hpp"

namespace swfem {

/// Per-element quadrature/basis tables for fast assembly: physical points,
/// scaled weights, basis values and first derivatives, and the dof map.
struct SpaceQuadTable {
    int n_elem = 0;
    int s = 0;  // points per element
    int r = 0;  // local basis size
    std::vector<double> xq;   // n_elem*s physical quadrature points
    std::vector<double> wq;   // n_elem*s weights (scaled by element size)
    std::vector<double> b0;   // n_elem*s*r basis values
    std::vector<double> b1;   // n_elem*s*r basis first derivatives
    std::vector<int> dofs;    // n_elem*r global indices, -1 = constrained

    static SpaceQuadTable build(const FemSpace& space, const QuadratureRule& rule);

    int n_points() const { return n_elem * s; }
};

// value[iq] (and optionally deriv[iq]) of the spline with coefficients c at
// every tabulated quadrature point.
void eval_at_quadrature(const SpaceQuadTable& t, std::span<const double> c,
                        std::span<double> value, std::span<double> deriv);

// out[i] += sum_q wq * g[q] * phi_i(x_q)
void add_load(const SpaceQuadTable& t, std::span<const double> g, std::span<double> out);
// out[i] += sum_q wq * g[q] * phi_i'(x_q)
void add_load_dphi(const SpaceQuadTable& t, std::span<const double> g, std::span<double> out);

/// Factored Gram (mass) matrix of a space; banded Cholesky, or the
/// cyclic-banded variant for periodic spaces.
class MassMatrix {
public:
    MassMatrix(const FemSpace& space, const QuadratureRule& rule);

    int dim() const;
    double coeff(int i, int j) const;
    void solve_in_place(std::span<double> b) const;
    std::vector<double> solve(std::vector<double> b) const;
    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::variant<BandedSPD, PeriodicSPD> m_;
};

std::vector<double> weak_load(const FemSpace& space, const QuadratureRule& rule,
                              const std::function<double(double)>& g);

CoefVec l2_project(const std::shared_ptr<const FemSpace>& space,
                   const std::function<double(double)>& f, const QuadratureRule& rule);

// Spline interpolation at the Greville abscissae (dense solve; intended for
// small dimensions and test oracles).
CoefVec interpolate(const std::shared_ptr<const FemSpace>& space,
                    const std::function<double(double)>& f);

double l2_norm(const CoefVec& f, const QuadratureRule& rule);
double l2_norm(const Mesh& mesh, const std::function<double(double)>& f,
               const QuadratureRule& rule);
double l2_error(const CoefVec& fh, const std::function<double(double)>& f,
                const QuadratureRule& rule);
double linf_error(const CoefVec& fh, const std::function<double(double)>& f,
                  int samples_per_element = 20);

} // namespace swfem
