#pragma once

#include <memory>

#include "swfem/bathymetry.hpp"

namespace swfem {

enum class FlowBranch { Supercritical, Subcritical };

/// Analytic steady profile of flow over a variable bottom: the discharge
/// Q = (beta + eta) u and the head g eta + u^2/2 are conserved, so eta(x)
/// solves a cubic at every x. The admissible root is picked on the requested
/// branch (depth below / above the critical depth).
class SteadyProfile {
public:
    SteadyProfile(std::shared_ptr<const Bathymetry> bathymetry, double eta0, double u0, double g,
                  FlowBranch branch);

    double eta(double x) const;
    double u(double x) const;
    double depth(double x) const;  // beta + eta

    double discharge() const { return Q0_; }
    double head() const { return E0_; }  // g eta0 + u0^2 / 2
    double critical_depth() const { return Dc_; }
    FlowBranch branch() const { return branch_; }

    // residual of the cubic (eta+beta)^2 (g eta - E0) + Q0^2/2 at (x, eta)
    double cubic_residual(double x, double eta) const;

private:
    std::shared_ptr<const Bathymetry> bathy_;
    double eta0_, u0_, g_, Q0_, E0_, Dc_;
    FlowBranch branch_;
};

std::shared_ptr<const SteadyProfile> solve_steady(std::shared_ptr<const Bathymetry> bathymetry,
                                                  double eta0, double u0, double g,
                                                  FlowBranch branch);

} // namespace swfem
