#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swfem/semidiscrete.hpp"

namespace swfem {

/// Explicit Runge-Kutta tableau. A is strictly lower triangular, sum(b) = 1
/// and c_i = sum_j A[i][j].
struct ButcherTableau {
    std::string name;
    int order = 0;
    std::vector<std::vector<double>> a;
    std::vector<double> b, c;

    int stages() const { return static_cast<int>(b.size()); }
    void validate() const;

    static ButcherTableau rk3();  // Kutta's third-order method
    static ButcherTableau rk4();  // the classical four-stage method
    static ButcherTableau rk6();  // Butcher's seven-stage sixth-order method

    // Plain-text format: rows of A, then b, then c; '#' starts a comment.
    static ButcherTableau from_file(const std::string& path, int claimed_order);
};

/// One explicit RK step; owns the stage workspace. Throws BlowUpError when a
/// stage produces non-finite coefficients.
class RkStepper {
public:
    RkStepper(const RhsOperator& op, ButcherTableau tableau);
    void step(SimState& state, double dt);
    const ButcherTableau& tableau() const { return tableau_; }

private:
    const RhsOperator& op_;
    ButcherTableau tableau_;
    std::vector<SimState> k_;
    SimState work_;
};

struct RunOptions {
    double dt = 0.0;        // base step
    double T = 0.0;         // final time (hit exactly; last step shortened)
    std::vector<double> snapshot_times;  // hit exactly by step splitting
    double steady_tol = 1e-10;  // relative L2 change per unit time
};

struct Snapshot {
    double t;
    SimState state;
};

struct RunResult {
    SimState final_state;
    std::vector<Snapshot> snapshots;
    std::optional<double> steady_time;  // first time the steady detector fired
    long steps = 0;
};

RunResult run(const RhsOperator& op, SimState initial, const ButcherTableau& tableau,
              const RunOptions& opts);

} // namespace swfem
