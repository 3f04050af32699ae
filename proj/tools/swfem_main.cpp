#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "swfem/driver.hpp"
#include "swfem/errors.hpp"
#include "swfem/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swfem;

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir = "out";
    int threads = 0;
    long seed = -1;
    double perturb = -1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config, "JSON experiment config")->required();
    cmd->add_option("-o,--out", args.out_dir, "output directory");
    cmd->add_option("--threads", args.threads, "sweep parallelism (0 = serial, deterministic)");
    cmd->add_option("--seed", args.seed, "override the perturbed-mesh seed");
    cmd->add_option("--perturb", args.perturb, "override the mesh perturbation amplitude");
}

ExperimentConfig load(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args.config);
    cfg.study.threads = args.threads;
    if (args.seed >= 0) cfg.study.seed = static_cast<unsigned long>(args.seed);
    if (args.perturb >= 0.0) cfg.study.mesh_perturb = args.perturb;
    return cfg;
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_manifest(const CommonArgs& args, const ExperimentConfig& cfg,
                    const std::string& command, const std::vector<std::string>& outputs,
                    double wall_s) {
    json m;
    m["tool"] = "swfem";
    m["version"] = std::string(kVersion);
    m["command"] = command;
    m["config_path"] = args.config;
    m["threads"] = args.threads;
    m["wall_time_s"] = wall_s;
    m["outputs"] = outputs;
    m["resolved_config"] = json::parse(cfg.resolved_json);
    if (args.seed >= 0) m["resolved_config"]["mesh"]["seed"] = args.seed;
    if (args.perturb >= 0.0) m["resolved_config"]["mesh"]["perturb"] = args.perturb;
    std::ofstream out(fs::path(args.out_dir) / "manifest.json");
    out << m.dump(2) << "\n";
}

int cmd_converge(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load(args);
    const RateTable table = converge_experiment(cfg);
    fs::create_directories(args.out_dir);
    const std::string path = (fs::path(args.out_dir) / "rates.csv").string();
    write_rate_table_csv(table, path);
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        std::printf("N=%5d", table.n_values[i]);
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            std::printf("  %s %.4e", table.columns[j].c_str(), table.errors[i][j]);
            if (i > 0 && std::isfinite(table.rates[i][j]))
                std::printf(" (rate %.3f)", table.rates[i][j]);
        }
        std::printf("\n");
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args, cfg, "converge", {"rates.csv"}, wall);
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load(args);
    const SimulationOutput out = run_simulation(cfg);
    fs::create_directories(args.out_dir);
    std::vector<std::string> outputs;
    std::map<std::string, std::string> meta;
    meta["formulation"] = to_string(cfg.problem.formulation);
    meta["n"] = std::to_string(cfg.n);
    {
        const std::string name = "bathymetry.csv";
        write_profile_csv((fs::path(args.out_dir) / name).string(), out.x, out.bathymetry, meta,
                          "beta");
        outputs.push_back(name);
    }
    for (const ProfileSeries& ps : out.snapshots) {
        char tag[32];
        std::snprintf(tag, sizeof tag, "%.6f", ps.t);
        auto m = meta;
        m["t"] = tag;
        const std::string eta_name = std::string("eta_t") + tag + ".csv";
        const std::string u_name = std::string("u_t") + tag + ".csv";
        write_profile_csv((fs::path(args.out_dir) / eta_name).string(), ps.x, ps.eta, m, "eta");
        write_profile_csv((fs::path(args.out_dir) / u_name).string(), ps.x, ps.u, m, "u");
        outputs.push_back(eta_name);
        outputs.push_back(u_name);
    }
    if (out.steady_time >= 0.0)
        std::printf("steady-state detector fired at t = %.6f\n", out.steady_time);
    std::printf("%zu snapshots, %ld steps\n", out.snapshots.size(), out.steps);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args, cfg, "simulate", outputs, wall);
    return 0;
}

int cmd_wellbalance(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load(args);
    const std::vector<WellBalanceRow> rows = wellbalance_experiment(cfg);
    fs::create_directories(args.out_dir);
    const std::string path = (fs::path(args.out_dir) / "wellbalance.csv").string();
    {
        std::ofstream csv(path);
        csv << "# drift of d_h(T) - d_h(0) for the periodic balance-law form\n";
        csv << "source,s,l2_drift,linf_drift\n";
        for (const auto& r : rows)
            csv << r.source << "," << r.s << "," << csv_number(r.l2_drift) << ","
                << csv_number(r.linf_drift) << "\n";
    }
    for (const auto& r : rows)
        std::printf("source=%-12s s=%d  L2 %.4e  Linf %.4e\n", r.source.c_str(), r.s, r.l2_drift,
                    r.linf_drift);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args, cfg, "wellbalance", {"wellbalance.csv"}, wall);
    return 0;
}

int cmd_steady(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load(args);
    const SteadyDrift drift = steady_experiment(cfg);
    fs::create_directories(args.out_dir);
    const std::string path = (fs::path(args.out_dir) / "steady.csv").string();
    {
        std::ofstream csv(path);
        csv << "# L2 drift from the projected analytic steady profile after time T\n";
        csv << "component,l2_drift\n";
        csv << "eta," << csv_number(drift.eta_l2) << "\n";
        csv << "u," << csv_number(drift.u_l2) << "\n";
    }
    std::printf("steady drift: eta %.4e  u %.4e\n", drift.eta_l2, drift.u_l2);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args, cfg, "steady", {"steady.csv"}, wall);
    return 0;
}

int cmd_froude(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load(args);
    const std::vector<FroudeRow> rows = froude_experiment(cfg);
    fs::create_directories(args.out_dir);
    std::vector<std::string> outputs{"froude.csv"};
    {
        std::ofstream csv(fs::path(args.out_dir) / "froude.csv");
        csv << "# steady free-surface maxima over the trapezoidal sill\n";
        csv << "froude,c,max_eta\n";
        for (const auto& r : rows)
            csv << r.froude << "," << r.c << "," << csv_number(r.max_eta) << "\n";
    }
    for (const auto& r : rows) {
        char name[64];
        std::snprintf(name, sizeof name, "eta_fr%.3f_c%.3f.csv", r.froude, r.c);
        write_profile_csv((fs::path(args.out_dir) / name).string(), r.x, r.eta, {}, "eta");
        outputs.push_back(name);
        std::printf("Fr=%.3f c=%.3f  max eta %.6e\n", r.froude, r.c, r.max_eta);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args, cfg, "froude", outputs, wall);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galerkin finite element solver for the 1D shallow water equations "
                 "over variable bottom"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CommonArgs args;
    auto* converge = app.add_subcommand("converge", "mesh-refinement error study");
    auto* simulate = app.add_subcommand("simulate", "run one experiment and dump profiles");
    auto* wellbalance = app.add_subcommand("wellbalance", "rest-state drift study");
    auto* steady = app.add_subcommand("steady", "steady-profile preservation check");
    auto* froude = app.add_subcommand("froude", "steady-state sweep over Froude numbers");
    for (auto* cmd : {converge, simulate, wellbalance, steady, froude}) add_common(cmd, args);

    try {
        app.parse(argc, argv);
        if (converge->parsed()) return cmd_converge(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (wellbalance->parsed()) return cmd_wellbalance(args);
        if (steady->parsed()) return cmd_steady(args);
        if (froude->parsed()) return cmd_froude(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << " (stage " << e.stage << ", t = " << e.time
                  << ")\n";
        return 2;
    } catch (const DryStateError& e) {
        std::cerr << "dry state: " << e.what() << " (x = " << e.x << ", t = " << e.time << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
