#pragma once

#include <map>
#include <string>
#include <vector>

#include "swfem/problem.hpp"
#include "swfem/runge_kutta.hpp"
#include "swfem/semidiscrete.hpp"
#include "swfem/steady_state.hpp"

namespace swfem {

/// Errors and observed convergence rates over a mesh-refinement sweep.
/// rate[i] = log(err[i-1]/err[i]) / log(N[i]/N[i-1]); blank on the first row.
struct RateTable {
    std::vector<std::string> columns;           // error-column labels
    std::vector<int> n_values;
    std::vector<std::vector<double>> errors;    // row-major [row][column]
    std::vector<std::vector<double>> rates;     // NaN where undefined
    std::map<std::string, std::string> metadata;

    void compute_rates();
};

struct StudyOptions {
    int order = 2;
    int continuity = 0;
    int quad_points = 0;        // 0: default order+1
    double dt_ratio = 0.1;      // dt = ratio * h_max
    double dt_abs = 0.0;        // overrides ratio when positive
    double T = 1.0;
    double mesh_perturb = 0.0;  // relative interior-node jitter
    unsigned long seed = 0;
    int rk_order = 4;
    int threads = 0;            // parallelism across study rows; 0 = serial
};

ButcherTableau tableau_for(int rk_order);

// Discrete l2 norm sampled at the mesh nodes and scaled by the average
// spacing; the norm behind the error tables. Equivalent to the quadrature L2
// norm up to an O(1) factor on quasiuniform meshes.
double nodal_l2(const Mesh& mesh, const std::function<double(double)>& f);

// L2 errors of (eta, u) at T against the manufactured solution for each N.
RateTable convergence_study(const ProblemConfig& problem, const std::vector<int>& n_list,
                            const StudyOptions& opts);

struct WellBalanceRow {
    std::string source;  // "analytic" | "projected" | "interpolated"
    int s = 0;
    double l2_drift = 0.0;
    double linf_drift = 0.0;
};

// Rest-state drift d_h(T) - d_h(0) of the periodic balance-law form for each
// (source treatment, quadrature order) combination.
std::vector<WellBalanceRow> well_balance_study(const ProblemConfig& problem,
                                               const std::vector<SourceMode>& source_modes,
                                               const std::vector<int>& s_list, int n,
                                               SourceMode init_mode, const StudyOptions& opts);

struct FroudeRow {
    double froude = 0.0;
    double c = 0.0;
    double max_eta = 0.0;
    std::vector<double> x, eta;  // steady profile samples
};

// Steady states of dimensional supercritical flow over the trapezoidal sill
// for a grid of Froude numbers and ramp parameters.
std::vector<FroudeRow> froude_sweep(double L, double d0, double kappa, double h0, double g,
                                    const std::vector<double>& froude_list,
                                    const std::vector<double>& c_list, int n, double dt, double T,
                                    int profile_samples = 501);

struct SteadyDrift {
    double eta_l2 = 0.0;
    double u_l2 = 0.0;
};

// Initialize from the analytic steady profile, run to T, and report the L2
// distance of each physical component from its initial projection.
SteadyDrift steady_preservation(const ProblemConfig& problem, int n, const StudyOptions& opts);

// CSV helpers ('#'-prefixed metadata lines, then a header row; %.12e values)
void write_rate_table_csv(const RateTable& table, const std::string& path);
void write_profile_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::map<std::string, std::string>& metadata,
                       const std::string& value_name);

} // namespace swfem
