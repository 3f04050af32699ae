#include "swfem/runge_kutta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swfem/errors.hpp"

namespace swfem {

void ButcherTableau::validate() const {
    const int s = stages();
    if (s < 1 || static_cast<int>(a.size()) != s || static_cast<int>(c.size()) != s)
        throw std::invalid_argument("tableau: inconsistent sizes");
    double sb = 0.0;
    for (double w : b) sb += w;
    if (std::abs(sb - 1.0) > 1e-12) throw std::invalid_argument("tableau: sum(b) != 1");
    for (int i = 0; i < s; ++i) {
        if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != s)
            throw std::invalid_argument("tableau: A not square");
        double sc = 0.0;
        for (int j = 0; j < s; ++j) {
            if (j >= i && a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0.0)
                throw std::invalid_argument("tableau: A not strictly lower triangular");
            sc += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        if (std::abs(sc - c[static_cast<std::size_t>(i)]) > 1e-12)
            throw std::invalid_argument("tableau: c_i != sum_j A_ij");
    }
}

namespace {

ButcherTableau make(std::string name, int order, std::vector<std::vector<double>> rows,
                    std::vector<double> b, std::vector<double> c) {
    const int s = static_cast<int>(b.size());
    ButcherTableau t;
    t.name = std::move(name);
    t.order = order;
    t.b = std::move(b);
    t.c = std::move(c);
    t.a.assign(static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(s), 0.0));
    for (int i = 1; i < s; ++i)
        for (std::size_t j = 0; j < rows[static_cast<std::size_t>(i - 1)].size(); ++j)
            t.a[static_cast<std::size_t>(i)][j] = rows[static_cast<std::size_t>(i - 1)][j];
    t.validate();
    return t;
}

} // namespace

ButcherTableau ButcherTableau::rk3() {
    return make("rk3", 3, {{0.5}, {-1.0, 2.0}}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, {0.0, 0.5, 1.0});
}

ButcherTableau ButcherTableau::rk4() {
    return make("rk4", 4, {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
                {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {0.0, 0.5, 0.5, 1.0});
}

ButcherTableau ButcherTableau::rk6() {
    // Butcher (1964), seven stages
    return make("rk6", 6,
                {{1.0 / 3},
                 {0.0, 2.0 / 3},
                 {1.0 / 12, 1.0 / 3, -1.0 / 12},
                 {-1.0 / 16, 9.0 / 8, -3.0 / 16, -3.0 / 8},
                 {0.0, 9.0 / 8, -3.0 / 8, -3.0 / 4, 1.0 / 2},
                 {9.0 / 44, -9.0 / 11, 63.0 / 44, 18.0 / 11, 0.0, -16.0 / 11}},
                {11.0 / 120, 0.0, 27.0 / 40, 27.0 / 40, -4.0 / 15, -4.0 / 15, 11.0 / 120},
                {0.0, 1.0 / 3, 2.0 / 3, 1.0 / 3, 1.0 / 2, 1.0 / 2, 1.0});
}

ButcherTableau ButcherTableau::from_file(const std::string& path, int claimed_order) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("tableau file not found: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() < 3) throw std::invalid_argument("tableau file: need A rows, b and c");
    ButcherTableau t;
    t.name = path;
    t.order = claimed_order;
    t.c = rows.back();
    rows.pop_back();
    t.b = rows.back();
    rows.pop_back();
    const int s = static_cast<int>(t.b.size());
    t.a.assign(static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(s), 0.0));
    if (static_cast<int>(rows.size()) != s)
        throw std::invalid_argument("tableau file: A must have one row per stage");
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < std::min<int>(s, static_cast<int>(rows[static_cast<std::size_t>(i)].size())); ++j)
            t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    t.validate();
    return t;
}

RkStepper::RkStepper(const RhsOperator& op, ButcherTableau tableau)
    : op_(op), tableau_(std::move(tableau)) {
    tableau_.validate();
    k_.resize(static_cast<std::size_t>(tableau_.stages()));
}

namespace {

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

void RkStepper::step(SimState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk step: dt must be positive");
    const int s = tableau_.stages();
    for (int i = 0; i < s; ++i) {
        work_.t = state.t + tableau_.c[static_cast<std::size_t>(i)] * dt;
        work_.a = state.a;
        work_.b = state.b;
        for (int j = 0; j < i; ++j) {
            const double w = tableau_.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * dt;
            if (w == 0.0) continue;
            const SimState& kj = k_[static_cast<std::size_t>(j)];
            for (std::size_t n = 0; n < work_.a.size(); ++n) work_.a[n] += w * kj.a[n];
            for (std::size_t n = 0; n < work_.b.size(); ++n) work_.b[n] += w * kj.b[n];
        }
        op_.rhs(work_, k_[static_cast<std::size_t>(i)]);
        if (!finite(k_[static_cast<std::size_t>(i)].a) || !finite(k_[static_cast<std::size_t>(i)].b))
            throw BlowUpError("non-finite state derivative", i, work_.t);
    }
    for (int i = 0; i < s; ++i) {
        const double w = tableau_.b[static_cast<std::size_t>(i)] * dt;
        if (w == 0.0) continue;
        const SimState& ki = k_[static_cast<std::size_t>(i)];
        for (std::size_t n = 0; n < state.a.size(); ++n) state.a[n] += w * ki.a[n];
        for (std::size_t n = 0; n < state.b.size(); ++n) state.b[n] += w * ki.b[n];
    }
    state.t += dt;
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm2_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}

} // namespace

RunResult run(const RhsOperator& op, SimState initial, const ButcherTableau& tableau,
              const RunOptions& opts) {
    if (!(opts.T > initial.t)) throw std::invalid_argument("run: T must exceed initial time");
    if (!(opts.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    std::vector<double> events = opts.snapshot_times;
    for (double t : events)
        if (t < initial.t || t > opts.T + 1e-12 * std::max(1.0, std::abs(opts.T)))
            throw std::invalid_argument("run: snapshot time outside [t0, T]");
    events.push_back(opts.T);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [&](double x, double y) {
                                 return std::abs(x - y) <= 1e-13 * std::max(1.0, opts.T);
                             }),
                 events.end());

    RkStepper stepper(op, tableau);
    RunResult res;
    SimState prev;
    const double teps = 1e-12 * std::max(1.0, std::abs(opts.T));
    std::size_t ev = 0;
    SimState state = std::move(initial);
    while (ev < events.size() && events[ev] <= state.t + teps) {
        res.snapshots.push_back({events[ev], state});
        ++ev;
    }
    while (state.t < opts.T - teps) {
        const double target = events[ev];
        double dt = std::min(opts.dt, target - state.t);
        if (target - (state.t + dt) < teps) dt = target - state.t;
        prev = state;
        stepper.step(state, dt);
        ++res.steps;
        if (std::abs(state.t - target) <= teps) {
            state.t = target;  // land exactly on event times
            res.snapshots.push_back({target, state});
            ++ev;
        }
        if (!res.steady_time) {
            const double scale = std::max(norm2(state.a) + norm2(state.b), 1e-30);
            const double change = (norm2_diff(state.a, prev.a) + norm2_diff(state.b, prev.b));
            if (change / scale / dt < opts.steady_tol) res.steady_time = state.t;
        }
    }
    res.final_state = std::move(state);
    return res;
}

} // namespace swfem
