#include "swfem/driver.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "swfem/steady_state.hpp"

namespace swfem {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

double num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<double>();
}

std::shared_ptr<const Bathymetry> parse_bathymetry(const json& j, ExperimentConfig& cfg) {
    const std::string kind = j.value("kind", "flat");
    if (kind == "gaussian")
        return bathy_gaussian(num(j, "depth", 1.0), num(j, "amplitude", 0.0),
                              num(j, "rate", 100.0), num(j, "center", 0.5));
    if (kind == "trapezoid") {
        cfg.trap_L = num(j, "L", 1e6);
        cfg.trap_sill = num(j, "sill", 500.0);
        cfg.trap_kappa = num(j, "kappa", cfg.trap_L / 10);
        cfg.trap_h0 = num(j, "h0", 1000.0);
        return bathy_trapezoid(cfg.trap_L, cfg.trap_sill, cfg.trap_kappa, num(j, "c", 1.0),
                               cfg.trap_h0);
    }
    if (kind == "cosine")
        return bathy_cosine(num(j, "L", 1e6), num(j, "sill", 5000.0), num(j, "kappa", 1e5),
                            num(j, "h0", 1e4));
    if (kind == "flat") return bathy_flat(num(j, "depth", 1.0));
    fail("unknown bathymetry kind '" + kind + "'");
}

Formulation parse_formulation(const std::string& s) {
    if (s == "dirichlet") return Formulation::DirichletVelocity;
    if (s == "supercritical") return Formulation::SupercriticalChar;
    if (s == "subcritical") return Formulation::SubcriticalChar;
    if (s == "balance_law") return Formulation::PeriodicBalanceLaw;
    fail("unknown formulation '" + s + "'");
}

SourceMode parse_source(const std::string& s) {
    if (s == "analytic") return SourceMode::AnalyticBeta;
    if (s == "projected") return SourceMode::ProjectedBeta;
    if (s == "interpolated") return SourceMode::InterpolatedBeta;
    fail("unknown source mode '" + s + "'");
}

void parse_initial(const json& j, ExperimentConfig& cfg) {
    const std::string kind = j.value("kind", "constant");
    ProblemConfig& p = cfg.problem;
    if (kind == "constant") {
        const double e0 = p.eta0, u0 = p.u0;
        p.eta_init = [e0](double) { return e0; };
        p.u_init = [u0](double) { return u0; };
        return;
    }
    if (kind == "rest") {
        p.eta_init = [](double) { return 0.0; };
        p.u_init = [](double) { return 0.0; };
        return;
    }
    if (kind == "gaussian") {
        const double ea = num(j, "eta_amplitude", 0.0), ua = num(j, "u_amplitude", 0.0);
        const double c = num(j, "center", 0.5), r = num(j, "rate", 400.0);
        const double e0 = p.eta0, u0 = p.u0;
        p.eta_init = [=](double x) { return e0 + ea * std::exp(-r * (x - c) * (x - c)); };
        p.u_init = [=](double x) { return u0 + ua * std::exp(-r * (x - c) * (x - c)); };
        return;
    }
    if (kind == "steady") {
        const FlowBranch branch = p.formulation == Formulation::SupercriticalChar
                                      ? FlowBranch::Supercritical
                                      : FlowBranch::Subcritical;
        auto profile = solve_steady(p.bathymetry, p.eta0, p.u0, p.g, branch);
        p.eta_init = [profile](double x) { return profile->eta(x); };
        p.u_init = [profile](double x) { return profile->u(x); };
        return;
    }
    fail("unknown initial kind '" + kind + "'");
}

} // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // e.what() carries "at line L, column C" for nlohmann >= 3.10
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (j.contains("resolved_config")) j = j.at("resolved_config");  // manifest round-trip

    ExperimentConfig cfg;
    try {
        const std::string manufactured = j.value("manufactured", "");
        if (!manufactured.empty()) {
            if (manufactured == "supercritical") cfg.problem = manufactured_supercritical();
            else if (manufactured == "subcritical") cfg.problem = manufactured_subcritical();
            else if (manufactured == "periodic") cfg.problem = manufactured_periodic();
            else fail("unknown manufactured preset '" + manufactured + "'");
        } else {
            if (!j.contains("formulation")) fail("missing 'formulation'");
            cfg.problem.formulation = parse_formulation(j.at("formulation").get<std::string>());
            if (!j.contains("bathymetry")) fail("missing 'bathymetry'");
            cfg.problem.bathymetry = parse_bathymetry(j.at("bathymetry"), cfg);
            if (j.contains("domain")) {
                cfg.problem.domain_left = num(j.at("domain"), "left", 0.0);
                cfg.problem.domain_right = num(j.at("domain"), "right", 1.0);
            }
            const json constants = j.value("constants", json::object());
            cfg.problem.eta0 = num(constants, "eta0", 0.0);
            cfg.problem.u0 = num(constants, "u0", 0.0);
            cfg.problem.g = num(constants, "g", 1.0);
            cfg.problem.H0 = num(constants, "H0",
                                 cfg.problem.eta0 + cfg.problem.bathymetry->height(
                                                        cfg.problem.domain_left));
            parse_initial(j.value("initial", json{{"kind", "constant"}}), cfg);
            validate_bathymetry(*cfg.problem.bathymetry, cfg.problem.domain_left,
                                cfg.problem.domain_right);
        }

        const json space = j.value("space", json::object());
        cfg.study.order = static_cast<int>(num(space, "order", 2));
        cfg.study.continuity = space.contains("continuity")
                                   ? static_cast<int>(num(space, "continuity", 0))
                                   : cfg.study.order - 2;  // smoothest splines by default

        const json mesh = j.value("mesh", json::object());
        cfg.n = static_cast<int>(num(mesh, "n", 100));
        cfg.study.mesh_perturb = num(mesh, "perturb", 0.0);
        cfg.study.seed = static_cast<unsigned long>(num(mesh, "seed", 0));

        cfg.study.quad_points = static_cast<int>(num(j.value("quadrature", json::object()), "s", 0));

        const json time = j.value("time", json::object());
        cfg.study.T = num(time, "T", 1.0);
        cfg.study.dt_ratio = num(time, "ratio", 0.1);
        cfg.study.dt_abs = num(time, "dt", 0.0);
        cfg.study.rk_order = static_cast<int>(num(j, "rk_order", 4));

        if (j.contains("snapshots"))
            for (const auto& t : j.at("snapshots")) cfg.snapshots.push_back(t.get<double>());
        if (j.contains("n_list"))
            for (const auto& n : j.at("n_list")) cfg.n_list.push_back(n.get<int>());

        if (j.contains("wellbalance")) {
            const json& wb = j.at("wellbalance");
            if (wb.contains("s_list")) {
                cfg.wb_s_list.clear();
                for (const auto& s : wb.at("s_list")) cfg.wb_s_list.push_back(s.get<int>());
            }
            if (wb.contains("sources")) {
                cfg.wb_sources.clear();
                for (const auto& s : wb.at("sources"))
                    cfg.wb_sources.push_back(parse_source(s.get<std::string>()));
            }
            cfg.wb_init = parse_source(wb.value("init", "projected"));
        }
        if (j.contains("froude")) {
            const json& fr = j.at("froude");
            for (const auto& f : fr.value("fr_list", json::array())) cfg.fr_list.push_back(f.get<double>());
            for (const auto& c : fr.value("c_list", json::array())) cfg.c_list.push_back(c.get<double>());
        }
        cfg.profile_samples = static_cast<int>(num(j, "output_points", 1001));

        for (double t : cfg.snapshots)
            if (t > cfg.study.T + 1e-12 * std::max(1.0, cfg.study.T))
                fail("snapshot time " + std::to_string(t) + " exceeds T");
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.resolved_json = j.dump(2);
    return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

SimulationOutput run_simulation(const ExperimentConfig& cfg) {
    const Mesh mesh = cfg.study.mesh_perturb > 0.0
                          ? Mesh::perturbed(cfg.n, cfg.problem.domain_left,
                                            cfg.problem.domain_right, cfg.study.mesh_perturb,
                                            cfg.study.seed)
                          : Mesh::uniform(cfg.n, cfg.problem.domain_left, cfg.problem.domain_right);
    const QuadratureRule rule =
        gauss_rule(cfg.study.quad_points > 0 ? cfg.study.quad_points : cfg.study.order + 1);
    SchemeOptions so;
    so.source_mode = cfg.wb_sources.empty() ? SourceMode::AnalyticBeta : cfg.wb_sources.front();
    auto scheme = make_scheme(cfg.problem, mesh, cfg.study.order, cfg.study.continuity, rule, so);
    RunOptions ro;
    ro.dt = cfg.study.dt_abs > 0.0 ? cfg.study.dt_abs : cfg.study.dt_ratio * mesh.h_max();
    ro.T = cfg.study.T;
    ro.snapshot_times = cfg.snapshots;
    const RunResult res = run(*scheme, scheme->initial_state(), tableau_for(cfg.study.rk_order), ro);

    SimulationOutput out;
    out.steps = res.steps;
    out.steady_time = res.steady_time.value_or(-1.0);
    const int m = cfg.profile_samples;
    out.x.resize(static_cast<std::size_t>(m));
    out.bathymetry.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double x = cfg.problem.domain_left +
                         (cfg.problem.domain_right - cfg.problem.domain_left) * i / (m - 1);
        out.x[static_cast<std::size_t>(i)] = x;
        out.bathymetry[static_cast<std::size_t>(i)] = cfg.problem.bathymetry->height(x);
    }
    auto record = [&](double t, const SimState& s) {
        ProfileSeries ps;
        ps.t = t;
        ps.x = out.x;
        ps.eta.resize(static_cast<std::size_t>(m));
        ps.u.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            ps.eta[static_cast<std::size_t>(i)] = scheme->eval_eta(s, out.x[static_cast<std::size_t>(i)]);
            ps.u[static_cast<std::size_t>(i)] = scheme->eval_u(s, out.x[static_cast<std::size_t>(i)]);
        }
        out.snapshots.push_back(std::move(ps));
    };
    for (const Snapshot& snap : res.snapshots) record(snap.t, snap.state);
    const bool have_final = !res.snapshots.empty() &&
                            std::abs(res.snapshots.back().t - cfg.study.T) <= 1e-12 * std::max(1.0, cfg.study.T);
    if (!have_final) record(res.final_state.t, res.final_state);
    return out;
}

RateTable converge_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty()) throw std::invalid_argument("config: converge needs 'n_list'");
    return convergence_study(cfg.problem, cfg.n_list, cfg.study);
}

std::vector<WellBalanceRow> wellbalance_experiment(const ExperimentConfig& cfg) {
    return well_balance_study(cfg.problem, cfg.wb_sources, cfg.wb_s_list, cfg.n, cfg.wb_init,
                              cfg.study);
}

SteadyDrift steady_experiment(const ExperimentConfig& cfg) {
    return steady_preservation(cfg.problem, cfg.n, cfg.study);
}

std::vector<FroudeRow> froude_experiment(const ExperimentConfig& cfg) {
    if (cfg.fr_list.empty() || cfg.c_list.empty())
        throw std::invalid_argument("config: froude sweep needs 'froude.fr_list' and 'froude.c_list'");
    if (cfg.trap_L <= 0.0)
        throw std::invalid_argument("config: froude sweep needs a trapezoid bathymetry");
    const double dt = cfg.study.dt_abs > 0.0
                          ? cfg.study.dt_abs
                          : cfg.study.dt_ratio * (cfg.problem.domain_right - cfg.problem.domain_left) / cfg.n;
    return froude_sweep(cfg.trap_L, cfg.trap_sill, cfg.trap_kappa, cfg.trap_h0, cfg.problem.g,
                        cfg.fr_list, cfg.c_list, cfg.n, dt, cfg.study.T, cfg.profile_samples);
}

} // namespace swfem
