#pragma once

#include <map>
#include <string>
#include <vector>

#include "swfem/diagnostics.hpp"
#include "swfem/problem.hpp"
#include "swfem/semidiscrete.hpp"

namespace swfem {

/// One experiment, as described by a JSON config document: the problem, its
/// discretization parameters and the per-command options.
struct ExperimentConfig {
    ProblemConfig problem;
    StudyOptions study;
    int n = 100;
    std::vector<double> snapshots;
    std::vector<int> n_list;
    // wellbalance
    std::vector<int> wb_s_list{3, 5};
    std::vector<SourceMode> wb_sources{SourceMode::AnalyticBeta, SourceMode::ProjectedBeta};
    SourceMode wb_init = SourceMode::ProjectedBeta;
    // froude sweep (trapezoid parameters live in problem.bathymetry)
    std::vector<double> fr_list, c_list;
    double trap_L = 0.0, trap_sill = 0.0, trap_kappa = 0.0, trap_h0 = 0.0;
    int profile_samples = 1001;
    std::string resolved_json;  // the fully resolved document, for manifests
};

// Parse a config document; throws std::invalid_argument with a line/column
// diagnostic on malformed JSON and on schema violations. A document that
// contains a "resolved_config" object (a manifest) is unwrapped first.
ExperimentConfig parse_experiment(const std::string& json_text);
ExperimentConfig load_experiment(const std::string& path);

struct ProfileSeries {
    double t = 0.0;
    std::vector<double> x, eta, u;
};

struct SimulationOutput {
    std::vector<ProfileSeries> snapshots;  // includes the final time
    std::vector<double> bathymetry;        // at the x sample points
    std::vector<double> x;
    double steady_time = -1.0;  // negative when the detector never fired
    long steps = 0;
};

SimulationOutput run_simulation(const ExperimentConfig& cfg);
RateTable converge_experiment(const ExperimentConfig& cfg);
std::vector<WellBalanceRow> wellbalance_experiment(const ExperimentConfig& cfg);
SteadyDrift steady_experiment(const ExperimentConfig& cfg);
std::vector<FroudeRow> froude_experiment(const ExperimentConfig& cfg);

} // namespace swfem
