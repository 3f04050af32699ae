#pragma once

#include <memory>
#include <vector>

#include "swfem/assembly.hpp"
#include "swfem/problem.hpp"

namespace swfem {

/// Time plus the two coefficient vectors of the active formulation:
/// (eta_h, u_h), (v_h, w_h) or (d_h, q_h).
struct SimState {
    double t = 0.0;
    std::vector<double> a, b;
};

/// Anything the explicit Runge-Kutta stepper can advance.
class RhsOperator {
public:
    virtual ~RhsOperator() = default;
    // out.a/out.b receive the time derivatives; out.t is ignored.
    virtual void rhs(const SimState& state, SimState& out) const = 0;
};

enum class SourceMode { AnalyticBeta, ProjectedBeta, InterpolatedBeta };

/// Galerkin semidiscretization dc/dt = M^{-1} F(c) of one of the four
/// formulations. Mass matrices are factored once at construction.
class GalerkinScheme : public RhsOperator {
public:
    ~GalerkinScheme() override = default;

    const ProblemConfig& problem() const { return cfg_; }
    const QuadratureRule& rule() const { return rule_; }
    std::shared_ptr<const FemSpace> space_a() const { return sa_; }
    std::shared_ptr<const FemSpace> space_b() const { return sb_; }

    // L2 projection of the configured initial data, transformed to the
    // formulation's unknowns.
    virtual SimState initial_state() const = 0;

    // physical free-surface elevation / velocity at x
    virtual double eval_eta(const SimState& s, double x) const = 0;
    virtual double eval_u(const SimState& s, double x) const = 0;

protected:
    GalerkinScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                   std::shared_ptr<const FemSpace> sb, QuadratureRule rule);

    ProblemConfig cfg_;
    QuadratureRule rule_;
    std::shared_ptr<const FemSpace> sa_, sb_;
    SpaceQuadTable ta_, tb_;
    MassMatrix ma_, mb_;
    std::vector<double> beta_q_, beta_x_q_;  // bathymetry at the shared quadrature grid
};

struct SchemeOptions {
    SourceMode source_mode = SourceMode::AnalyticBeta;   // balance law only
    SourceMode init_mode = SourceMode::AnalyticBeta;     // balance-law rest runs
};

std::unique_ptr<GalerkinScheme> make_scheme(const ProblemConfig& cfg, const Mesh& mesh, int order,
                                            int continuity, const QuadratureRule& rule,
                                            const SchemeOptions& opts = {});

/// Physical variables recovered from the subcritical diagonal pair:
/// H = ((v - w)/2 + delta0)^2 / g, u = v + w + u0, eta = H - beta.
struct PhysicalRecovery {
    CoefVec v, w;
    double u0 = 0.0, delta0 = 1.0, g = 1.0;
    std::shared_ptr<const Bathymetry> bathymetry;

    double H(double x) const;
    double u(double x) const;
    double eta(double x) const;
    // exact coefficient combination in the unconstrained span
    CoefVec u_coefvec() const;
};

PhysicalRecovery recover_physical(const CoefVec& v, const CoefVec& w, const ProblemConfig& cfg);

// integral of the spline over the domain (for mass-conservation monitoring)
double integral(const CoefVec& f, const QuadratureRule& rule);

} // namespace swfem
