#include "swfem/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

#include "swfem/assembly.hpp"

namespace swfem {

namespace {

QuadratureRule rule_for(const StudyOptions& opts) {
    return gauss_rule(opts.quad_points > 0 ? opts.quad_points : opts.order + 1);
}

Mesh mesh_for(int n, double left, double right, const StudyOptions& opts) {
    if (opts.mesh_perturb > 0.0)
        return Mesh::perturbed(n, left, right, opts.mesh_perturb, opts.seed);
    return Mesh::uniform(n, left, right);
}

double run_dt(const Mesh& mesh, const StudyOptions& opts) {
    return opts.dt_abs > 0.0 ? opts.dt_abs : opts.dt_ratio * mesh.h_max();
}

// L2 norm of f over the mesh by elementwise quadrature (finer rule than the
// assembly one so the error integrand is well resolved)
double l2_of(const Mesh& mesh, const std::function<double(double)>& f, int s) {
    return l2_norm(mesh, f, gauss_rule(s));
}

} // namespace

ButcherTableau tableau_for(int rk_order) {
    switch (rk_order) {
        case 3: return ButcherTableau::rk3();
        case 4: return ButcherTableau::rk4();
        case 6: return ButcherTableau::rk6();
        default: throw std::invalid_argument("rk order must be 3, 4 or 6");
    }
}

double nodal_l2(const Mesh& mesh, const std::function<double(double)>& f) {
    const double w = mesh.length() / mesh.n_elements();
    double acc = 0.0;
    for (int i = 0; i <= mesh.n_elements(); ++i) {
        const double v = f(mesh.node(i));
        acc += v * v;
    }
    return std::sqrt(w * acc);
}

void RateTable::compute_rates() {
    const std::size_t cols = columns.size();
    rates.assign(errors.size(), std::vector<double>(cols, std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double ratio = std::log(static_cast<double>(n_values[i]) / n_values[i - 1]);
        for (std::size_t j = 0; j < cols; ++j) {
            const double e0 = errors[i - 1][j], e1 = errors[i][j];
            if (e0 > 0.0 && e1 > 0.0) rates[i][j] = std::log(e0 / e1) / ratio;
        }
    }
}

RateTable convergence_study(const ProblemConfig& problem, const std::vector<int>& n_list,
                            const StudyOptions& opts) {
    if (!problem.manufactured) throw std::invalid_argument("convergence study needs a manufactured solution");
    RateTable table;
    table.columns = {"eta", "u"};
    table.n_values = n_list;
    table.errors.assign(n_list.size(), {0.0, 0.0});
    table.metadata["formulation"] = to_string(problem.formulation);
    table.metadata["r"] = std::to_string(opts.order);
    table.metadata["s"] = std::to_string(opts.quad_points > 0 ? opts.quad_points : opts.order + 1);
    table.metadata["ratio"] = std::to_string(opts.dt_ratio);
    table.metadata["T"] = std::to_string(opts.T);

    auto run_row = [&](std::size_t row) {
        const int n = n_list[row];
        const Mesh mesh = mesh_for(n, problem.domain_left, problem.domain_right, opts);
        const QuadratureRule rule = rule_for(opts);
        auto scheme = make_scheme(problem, mesh, opts.order, opts.continuity, rule);
        RunOptions ro;
        ro.dt = run_dt(mesh, opts);
        ro.T = opts.T;
        const RunResult res = run(*scheme, scheme->initial_state(), tableau_for(opts.rk_order), ro);
        const auto& ms = *problem.manufactured;
        const double T = opts.T;
        table.errors[row][0] = nodal_l2(mesh, [&](double x) {
            return scheme->eval_eta(res.final_state, x) - ms.eta(x, T);
        });
        table.errors[row][1] = nodal_l2(mesh, [&](double x) {
            return scheme->eval_u(res.final_state, x) - ms.u(x, T);
        });
    };

    if (opts.threads > 0) {
        std::vector<std::future<void>> jobs;
        for (std::size_t row = 0; row < n_list.size(); ++row)
            jobs.push_back(std::async(std::launch::async, run_row, row));
        for (auto& j : jobs) j.get();
    } else {
        for (std::size_t row = 0; row < n_list.size(); ++row) run_row(row);
    }
    table.compute_rates();
    return table;
}

std::vector<WellBalanceRow> well_balance_study(const ProblemConfig& problem,
                                               const std::vector<SourceMode>& source_modes,
                                               const std::vector<int>& s_list, int n,
                                               SourceMode init_mode, const StudyOptions& opts) {
    std::vector<WellBalanceRow> rows;
    for (SourceMode mode : source_modes) {
        for (int s : s_list) {
            const Mesh mesh = mesh_for(n, problem.domain_left, problem.domain_right, opts);
            const QuadratureRule rule = gauss_rule(s);
            SchemeOptions so;
            so.source_mode = mode;
            so.init_mode = init_mode;
            auto scheme = make_scheme(problem, mesh, opts.order, opts.continuity, rule, so);
            const SimState init = scheme->initial_state();
            RunOptions ro;
            ro.dt = run_dt(mesh, opts);
            ro.T = opts.T;
            const RunResult res = run(*scheme, init, tableau_for(opts.rk_order), ro);
            CoefVec diff{scheme->space_a(), res.final_state.a};
            for (std::size_t i = 0; i < diff.coef.size(); ++i) diff.coef[i] -= init.a[i];
            WellBalanceRow row;
            switch (mode) {
                case SourceMode::AnalyticBeta: row.source = "analytic"; break;
                case SourceMode::ProjectedBeta: row.source = "projected"; break;
                case SourceMode::InterpolatedBeta: row.source = "interpolated"; break;
            }
            row.s = s;
            row.l2_drift = l2_norm(diff, gauss_rule(std::min(16, s + 3)));
            row.linf_drift = linf_error(diff, [](double) { return 0.0; });
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<FroudeRow> froude_sweep(double L, double d0, double kappa, double h0, double g,
                                    const std::vector<double>& froude_list,
                                    const std::vector<double>& c_list, int n, double dt, double T,
                                    int profile_samples) {
    std::vector<FroudeRow> rows;
    for (double c : c_list) {
        for (double fr : froude_list) {
            ProblemConfig cfg;
            cfg.formulation = Formulation::SupercriticalChar;
            cfg.bathymetry = d0 == 0.0 ? bathy_flat(h0) : bathy_trapezoid(L, d0, kappa, c, h0);
            cfg.domain_left = 0.0;
            cfg.domain_right = L;
            cfg.g = g;
            cfg.eta0 = 0.0;
            cfg.u0 = fr * std::sqrt(g * h0);
            cfg.H0 = h0;
            cfg.eta_init = [](double) { return 0.0; };
            const double u0 = cfg.u0;
            cfg.u_init = [u0](double) { return u0; };
            const Mesh mesh = Mesh::uniform(n, 0.0, L);
            auto scheme = make_scheme(cfg, mesh, 2, 0, gauss_rule(3));
            RunOptions ro;
            ro.dt = dt;
            ro.T = T;
            const RunResult res = run(*scheme, scheme->initial_state(), ButcherTableau::rk4(), ro);
            FroudeRow row;
            row.froude = fr;
            row.c = c;
            row.max_eta = -std::numeric_limits<double>::max();
            row.x.resize(static_cast<std::size_t>(profile_samples));
            row.eta.resize(static_cast<std::size_t>(profile_samples));
            for (int i = 0; i < profile_samples; ++i) {
                const double x = L * i / (profile_samples - 1);
                const double e = scheme->eval_eta(res.final_state, x);
                row.x[static_cast<std::size_t>(i)] = x;
                row.eta[static_cast<std::size_t>(i)] = e;
                row.max_eta = std::max(row.max_eta, e);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

SteadyDrift steady_preservation(const ProblemConfig& problem, int n, const StudyOptions& opts) {
    const FlowBranch branch = problem.formulation == Formulation::SupercriticalChar
                                  ? FlowBranch::Supercritical
                                  : FlowBranch::Subcritical;
    auto profile = solve_steady(problem.bathymetry, problem.eta0, problem.u0, problem.g, branch);
    ProblemConfig cfg = problem;
    cfg.eta_init = [profile](double x) { return profile->eta(x); };
    cfg.u_init = [profile](double x) { return profile->u(x); };
    const Mesh mesh = mesh_for(n, cfg.domain_left, cfg.domain_right, opts);
    const QuadratureRule rule = rule_for(opts);
    auto scheme = make_scheme(cfg, mesh, opts.order, opts.continuity, rule);
    const SimState init = scheme->initial_state();
    RunOptions ro;
    ro.dt = run_dt(mesh, opts);
    ro.T = opts.T;
    const RunResult res = run(*scheme, init, tableau_for(opts.rk_order), ro);
    const int s_err = rule.s + 3;
    SteadyDrift drift;
    drift.eta_l2 = l2_of(mesh, [&](double x) {
        return scheme->eval_eta(res.final_state, x) - scheme->eval_eta(init, x);
    }, s_err);
    drift.u_l2 = l2_of(mesh, [&](double x) {
        return scheme->eval_u(res.final_state, x) - scheme->eval_u(init, x);
    }, s_err);
    return drift;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

} // namespace

void write_rate_table_csv(const RateTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (const auto& [k, v] : table.metadata) out << "# " << k << " = " << v << "\n";
    out << "N";
    for (const auto& c : table.columns) out << ",err_" << c << ",rate_" << c;
    out << "\n";
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        out << table.n_values[i];
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            out << "," << fmt(table.errors[i][j]) << ",";
            if (i > 0 && std::isfinite(table.rates[i][j])) out << fmt(table.rates[i][j]);
        }
        out << "\n";
    }
}

void write_profile_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::map<std::string, std::string>& metadata,
                       const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
    out << "x," << value_name << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) out << fmt(x[i]) << "," << fmt(y[i]) << "\n";
}

} // namespace swfem
