// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values and tolerances are pinned in code.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "swfem/diagnostics.hpp"
#include "swfem/driver.hpp"

using namespace swfem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ------------------------------------------------------------------ 1 & 2

void criterion_tables_1_2() {
    struct TableSpec {
        int criterion;
        const char* name;
        ProblemConfig cfg;
        double eta[5];
        double u[5];
    };
    const std::vector<int> n_list{40, 80, 160, 320, 640};
    TableSpec specs[2] = {
        {1, "supercritical manufactured errors and rates",
         manufactured_supercritical(),
         {1.3202e-03, 3.2932e-04, 8.2245e-05, 2.0550e-05, 5.1361e-06},
         {6.1375e-03, 1.5334e-03, 3.8335e-04, 9.5918e-05, 2.4070e-05}},
        {2, "subcritical manufactured errors and rates",
         manufactured_subcritical(),
         {7.8451e-03, 1.9602e-03, 4.8955e-04, 1.2229e-04, 3.0560e-05},
         {4.7238e-03, 1.2154e-03, 3.0717e-04, 7.7169e-05, 1.9349e-05}}};
    for (const TableSpec& spec : specs) {
        const auto t0 = std::chrono::steady_clock::now();
        StudyOptions opts;
        opts.order = 2;
        opts.continuity = 0;
        opts.dt_ratio = 0.1;
        opts.T = 1.0;
        const RateTable table = convergence_study(spec.cfg, n_list, opts);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = spec.criterion == 1 ? wall < 120.0 : true;
        double worst_rel = 0.0, worst_rate_lo = 2.0, worst_rate_hi = 2.0;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            worst_rel = std::max(worst_rel,
                                 std::abs(table.errors[i][0] - spec.eta[i]) / spec.eta[i]);
            worst_rel = std::max(worst_rel, std::abs(table.errors[i][1] - spec.u[i]) / spec.u[i]);
            if (!within(table.errors[i][0], spec.eta[i], 0.10)) pass = false;
            if (!within(table.errors[i][1], spec.u[i], 0.10)) pass = false;
            if (i > 0)
                for (int c = 0; c < 2; ++c) {
                    worst_rate_lo = std::min(worst_rate_lo, table.rates[i][c]);
                    worst_rate_hi = std::max(worst_rate_hi, table.rates[i][c]);
                    if (!(table.rates[i][c] >= 1.95 && table.rates[i][c] <= 2.05)) pass = false;
                }
        }
        report(spec.criterion, spec.name, pass,
               fmt("worst error deviation %.1f%%, rates in [%.3f, %.3f], %.1f s", 100 * worst_rel,
                   worst_rate_lo, worst_rate_hi, wall));
    }
}

// ---------------------------------------------------------------------- 3

void criterion_3_wellbalance() {
    ProblemConfig cfg;
    cfg.formulation = Formulation::PeriodicBalanceLaw;
    cfg.bathymetry = bathy_gaussian(1.0, 0.3, 1000.0, 0.5);
    cfg.eta_init = [](double) { return 0.0; };
    cfg.u_init = [](double) { return 0.0; };
    StudyOptions opts;
    opts.order = 4;
    opts.continuity = 2;
    opts.dt_abs = 0.01;
    opts.T = 1.0;
    const auto analytic3 = well_balance_study(cfg, {SourceMode::AnalyticBeta}, {3}, 50,
                                              SourceMode::ProjectedBeta, opts);
    const auto projected = well_balance_study(cfg, {SourceMode::ProjectedBeta}, {3, 5}, 50,
                                              SourceMode::ProjectedBeta, opts);
    const bool pass_p5 = projected[1].l2_drift <= 1e-12 && projected[1].linf_drift <= 1e-12;
    const bool pass_p3 = within(projected[0].l2_drift, 1.2204e-6, 4.0);  // within factor 5
    const bool pass_a3 = within(analytic3[0].l2_drift, 1.8191e-4, 4.0);
    report(3, "balance-law rest-state drift vs source treatment and quadrature",
           pass_p5 && pass_p3 && pass_a3,
           fmt("Pbeta s=5: %.2e/%.2e; Pbeta s=3: %.3e (target 1.2204e-6); analytic s=3: %.3e "
               "(target 1.8191e-4)",
               projected[1].l2_drift, projected[1].linf_drift, projected[0].l2_drift,
               analytic3[0].l2_drift));
}

// ---------------------------------------------------------------------- 4

void criterion_4_steady_preservation() {
    ProblemConfig sup;
    sup.formulation = Formulation::SupercriticalChar;
    sup.bathymetry = bathy_gaussian(1.0, 0.4, 100.0, 0.5);
    sup.eta0 = 1.0;
    sup.u0 = 3.0;
    sup.H0 = 2.0;
    StudyOptions os;
    os.order = 2;
    os.continuity = 0;
    os.dt_ratio = 0.1;
    os.T = 0.6;
    const SteadyDrift ds = steady_preservation(sup, 400, os);

    ProblemConfig sub;
    sub.formulation = Formulation::SubcriticalChar;
    sub.bathymetry = bathy_gaussian(1.0, 0.04, 100.0, 0.5);
    sub.eta0 = 1.0;
    sub.u0 = 1.0;
    sub.H0 = 2.0;
    StudyOptions ob = os;
    ob.T = 2.0;
    const SteadyDrift db = steady_preservation(sub, 2000, ob);

    const bool pass = ds.eta_l2 <= 5e-9 && ds.u_l2 <= 5e-9 && db.eta_l2 <= 5e-8 && db.u_l2 <= 5e-8;
    report(4, "steady-profile preservation", pass,
           fmt("supercritical: %.2e/%.2e (gate 5e-9); subcritical: %.2e/%.2e (gate 5e-8)",
               ds.eta_l2, ds.u_l2, db.eta_l2, db.u_l2));
}

// ---------------------------------------------------------------------- 5

void criterion_5_spatial_order() {
    const std::vector<int> n_list{16, 32, 64, 128};
    StudyOptions opts;
    opts.order = 4;
    opts.continuity = 2;
    opts.quad_points = 5;
    opts.dt_ratio = 0.125;
    opts.T = 1.0;
    const RateTable uni = convergence_study(manufactured_periodic(), n_list, opts);
    // overall observed order: first-to-last slope, robust to the random mesh
    // realization changing between refinement levels
    auto slope = [&](const RateTable& t, int col) {
        return std::log(t.errors.front()[static_cast<std::size_t>(col)] /
                        t.errors.back()[static_cast<std::size_t>(col)]) /
               std::log(static_cast<double>(n_list.back()) / n_list.front());
    };
    const double ord_eta = slope(uni, 0), ord_u = slope(uni, 1);

    StudyOptions po = opts;
    po.mesh_perturb = 0.25;
    po.seed = 1;
    const RateTable per = convergence_study(manufactured_periodic(), n_list, po);
    const double pord_eta = slope(per, 0), pord_u = slope(per, 1);

    const bool pass = std::abs(ord_eta - 4.0) <= 0.2 && std::abs(ord_u - 4.0) <= 0.2 &&
                      pord_eta >= 2.8 && pord_u >= 2.8;
    report(5, "cubic-spline spatial orders (uniform and quasiuniform)", pass,
           fmt("uniform: %.2f/%.2f (gate 4.0 +- 0.2); perturbed: %.2f/%.2f (gate >= 2.8)",
               ord_eta, ord_u, pord_eta, pord_u));
}

// ---------------------------------------------------------------------- 6

void criterion_6_temporal_order() {
    const ProblemConfig cfg = manufactured_periodic();
    const Mesh mesh = Mesh::uniform(200, 0.0, 1.0);
    auto scheme = make_scheme(cfg, mesh, 4, 2, gauss_rule(5));
    const double h = mesh.h_max(), T = 0.5;
    auto run_dt = [&](double dt) {
        RunOptions ro;
        ro.dt = dt;
        ro.T = T;
        return run(*scheme, scheme->initial_state(), ButcherTableau::rk4(), ro).final_state;
    };
    const SimState ref = run_dt(h / 32.0);
    std::vector<double> errs;
    for (double div : {2.0, 4.0, 8.0}) {
        const SimState s = run_dt(h / div);
        double e = 0.0;
        for (std::size_t i = 0; i < s.a.size(); ++i) e += (s.a[i] - ref.a[i]) * (s.a[i] - ref.a[i]);
        for (std::size_t i = 0; i < s.b.size(); ++i) e += (s.b[i] - ref.b[i]) * (s.b[i] - ref.b[i]);
        errs.push_back(std::sqrt(e));
    }
    const double o1 = std::log2(errs[0] / errs[1]);
    const double o2 = std::log2(errs[1] / errs[2]);
    const bool pass = std::abs(o1 - 4.0) <= 0.2 && std::abs(o2 - 4.0) <= 0.2;
    report(6, "RK4 temporal self-convergence at N = 200", pass,
           fmt("observed orders %.3f, %.3f (gate 4.0 +- 0.2)", o1, o2));
}

// ---------------------------------------------------------------------- 7

void criterion_7_properties() {
    bool pass = true;
    std::string notes;

    // quadrature exactness through degree 2s-1
    for (int s = 1; s <= 16 && pass; ++s) {
        const QuadratureRule q = gauss_rule(s);
        for (int d = 0; d <= 2 * s - 1; ++d) {
            double acc = 0.0;
            for (int i = 0; i < s; ++i)
                acc += q.weights[static_cast<std::size_t>(i)] *
                       std::pow(q.nodes[static_cast<std::size_t>(i)], d);
            const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
            if (std::abs(acc - exact) > 1e-13) {
                pass = false;
                notes = fmt("quadrature s=%d degree %d", s, d);
            }
        }
    }

    // SPD mass matrices with small solve residual; projection properties
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Mesh mesh = Mesh::perturbed(12, 0.0, 1.0, 0.2, 3);
    for (int r : {2, 3, 4}) {
        for (Constraint c : {Constraint::Free, Constraint::ZeroLeft, Constraint::ZeroBoth,
                             Constraint::Periodic}) {
            auto space = make_space(mesh, r, r - 2, c);
            const QuadratureRule rule = gauss_rule(r + 1);
            const MassMatrix M(*space, rule);
            std::vector<double> x(static_cast<std::size_t>(space->dim()));
            for (auto& v : x) v = dist(rng);
            std::vector<double> b = M.multiply(x);
            M.solve_in_place(b);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                num += (b[i] - x[i]) * (b[i] - x[i]);
                den += x[i] * x[i];
            }
            if (std::sqrt(num / den) > 1e-12) {
                pass = false;
                notes = fmt("mass solve residual r=%d c=%d", r, static_cast<int>(c));
            }
        }
    }
    {
        auto space = make_space(mesh, 4, 2, Constraint::Free);
        const QuadratureRule rule = gauss_rule(5);
        auto f = [](double x) { return std::exp(x) * std::cos(4 * x); };
        auto g = [](double x) { return x * x * std::sin(3 * x); };
        const CoefVec pf = l2_project(space, f, rule);
        const CoefVec pg = l2_project(space, g, rule);
        const CoefVec p2 = l2_project(space, [&](double x) { return pf(x); }, rule);
        for (std::size_t i = 0; i < pf.coef.size(); ++i)
            if (std::abs(p2.coef[i] - pf.coef[i]) > 1e-12) pass = false;
        const CoefVec plin =
            l2_project(space, [&](double x) { return 2.0 * f(x) - 0.5 * g(x); }, rule);
        for (std::size_t i = 0; i < pf.coef.size(); ++i)
            if (std::abs(plin.coef[i] - 2.0 * pf.coef[i] + 0.5 * pg.coef[i]) > 1e-12) pass = false;
        const std::vector<double> bf = weak_load(*space, rule, f);
        const std::vector<double> bp = weak_load(*space, rule, [&](double x) { return pf(x); });
        const double fn = l2_norm(mesh, f, rule);
        for (std::size_t i = 0; i < bf.size(); ++i)
            if (std::abs(bf[i] - bp[i]) > 1e-11 * fn) pass = false;
        if (!pass && notes.empty()) notes = "projection properties";
    }

    // polynomial reproduction through Greville interpolation
    for (int r : {2, 3, 4, 6}) {
        auto space = make_space(mesh, r, r - 2, Constraint::Free);
        for (int deg = 0; deg <= r - 1; ++deg) {
            auto p = [deg](double x) { return std::pow(x + 0.2, deg); };
            const CoefVec ph = interpolate(space, p);
            std::mt19937_64 prng(100 + static_cast<unsigned>(deg));
            std::uniform_real_distribution<double> xs(0.0, 1.0);
            for (int i = 0; i < 100; ++i) {
                const double x = xs(prng);
                if (std::abs(ph(x) - p(x)) > 10 * 1e-15 * std::max(1.0, std::abs(p(x)))) {
                    pass = false;
                    notes = fmt("polynomial reproduction r=%d deg=%d", r, deg);
                }
            }
        }
    }

    // still water is a fixed point of the nonconservative form
    {
        ProblemConfig cfg;
        cfg.formulation = Formulation::DirichletVelocity;
        cfg.bathymetry = bathy_gaussian(1.0, 0.2, 100.0, 0.5);
        cfg.eta_init = [](double) { return 0.4; };
        cfg.u_init = [](double) { return 0.0; };
        auto scheme = make_scheme(cfg, Mesh::uniform(20, 0.0, 1.0), 3, 1, gauss_rule(4));
        SimState ds;
        scheme->rhs(scheme->initial_state(), ds);
        for (double v : ds.a)
            if (std::abs(v) > 1e-13) pass = false;
        for (double v : ds.b)
            if (std::abs(v) > 1e-13) pass = false;
        if (!pass && notes.empty()) notes = "still-water fixed point";
    }

    // lake at rest is a fixed point of the balance-law form at exact quadrature
    {
        ProblemConfig cfg;
        cfg.formulation = Formulation::PeriodicBalanceLaw;
        cfg.bathymetry = bathy_gaussian(1.0, 0.3, 1000.0, 0.5);
        cfg.eta_init = [](double) { return 0.0; };
        cfg.u_init = [](double) { return 0.0; };
        SchemeOptions so;
        so.source_mode = SourceMode::ProjectedBeta;
        auto scheme = make_scheme(cfg, Mesh::uniform(50, 0.0, 1.0), 4, 2, gauss_rule(5), so);
        SimState ds;
        scheme->rhs(scheme->initial_state(), ds);
        for (double v : ds.a)
            if (std::abs(v) > 1e-12) pass = false;
        for (double v : ds.b)
            if (std::abs(v) > 1e-12) pass = false;
        if (!pass && notes.empty()) notes = "lake-at-rest fixed point";
    }

    // periodic mass conservation across a full run
    {
        ProblemConfig cfg = manufactured_periodic();
        cfg.manufactured.reset();
        const Mesh pm = Mesh::uniform(32, 0.0, 1.0);
        auto scheme = make_scheme(cfg, pm, 4, 2, gauss_rule(5));
        const SimState init = scheme->initial_state();
        RunOptions ro;
        ro.dt = pm.h_max() / 4.0;
        ro.T = 1.0;
        const RunResult res = run(*scheme, init, ButcherTableau::rk4(), ro);
        const double m0 = integral(CoefVec{scheme->space_a(), init.a}, gauss_rule(6));
        const double m1 = integral(CoefVec{scheme->space_a(), res.final_state.a}, gauss_rule(6));
        if (std::abs(m1 - m0) > 1e-11 * std::abs(m0)) {
            pass = false;
            notes = fmt("mass conservation drift %.2e", std::abs(m1 - m0) / std::abs(m0));
        }
    }

    // steady-profile invariants
    {
        auto bathy = bathy_gaussian(1.0, 0.4, 100.0, 0.5);
        auto p = solve_steady(bathy, 1.0, 3.0, 1.0, FlowBranch::Supercritical);
        for (int i = 0; i <= 500; ++i) {
            const double x = i / 500.0;
            const double Q = (bathy->height(x) + p->eta(x)) * p->u(x);
            const double E = p->eta(x) + 0.5 * p->u(x) * p->u(x);
            if (std::abs(Q - p->discharge()) > 1e-12 * std::abs(p->discharge())) pass = false;
            if (std::abs(E - p->head()) > 1e-12 * std::abs(p->head())) pass = false;
        }
        if (!pass && notes.empty()) notes = "steady invariants";
    }

    // characteristic boundary homogeneity is exact
    {
        std::mt19937_64 crng(5);
        for (auto [c, x0] : {std::pair{Constraint::ZeroLeft, 0.0},
                             std::pair{Constraint::ZeroRight, 1.0}}) {
            auto space = make_space(mesh, 3, 1, c);
            std::vector<double> coef(static_cast<std::size_t>(space->dim()));
            for (auto& v : coef) v = dist(crng);
            if (space->eval(coef, x0, 0) != 0.0) {
                pass = false;
                notes = "constrained endpoint value not exactly zero";
            }
        }
    }

    report(7, "property suites (quadrature, algebra, fixed points, invariants)", pass,
           pass ? "all property checks hold" : notes);
}

// ---------------------------------------------------------------------- 8

void criterion_8_qualitative() {
    // (a) settling of the supercritical constant-data run
    {
        ProblemConfig cfg;
        cfg.formulation = Formulation::SupercriticalChar;
        cfg.bathymetry = bathy_gaussian(1.0, 0.4, 100.0, 0.5);
        cfg.eta0 = 1.0;
        cfg.u0 = 3.0;
        cfg.H0 = 2.0;
        cfg.eta_init = [](double) { return 1.0; };
        cfg.u_init = [](double) { return 3.0; };
        const Mesh mesh = Mesh::uniform(400, 0.0, 1.0);
        auto scheme = make_scheme(cfg, mesh, 2, 0, gauss_rule(3));
        RunOptions ro;
        ro.dt = mesh.h_max() / 3.0;
        ro.T = 0.5;
        ro.snapshot_times = {0.45, 0.5};
        const RunResult res = run(*scheme, scheme->initial_state(), ButcherTableau::rk4(), ro);
        const double change = l2_norm(mesh, [&](double x) {
            return scheme->eval_eta(res.snapshots[1].state, x) -
                   scheme->eval_eta(res.snapshots[0].state, x);
        }, gauss_rule(4));
        report(8, "constant-data supercritical run settles by t = 0.5", change <= 1e-6,
               fmt("||eta(0.5) - eta(0.45)|| = %.3e (gate 1e-6)", change));
    }
    // (b) steady maxima decrease with the Froude number; dt = 2 s damps the
    // recirculating grid-scale transient enough to read off settled maxima
    {
        const std::vector<double> frs{2.0, 2.2, 2.5};
        const auto rows = froude_sweep(1e6, 500.0, 1e5, 1000.0, 9.812, frs, {1.0}, 1000, 2.0,
                                       20000.0, 501);
        bool monotone = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i].max_eta < rows[i - 1].max_eta)) monotone = false;
        // cross-check the settled maxima against the steady-state root of the
        // conserved-quantity cubic
        double worst_rel = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto bathy = bathy_trapezoid(1e6, 500.0, 1e5, 1.0, 1000.0);
            auto prof = solve_steady(bathy, 0.0, frs[i] * std::sqrt(9.812 * 1000.0), 9.812,
                                     FlowBranch::Supercritical);
            double max_exact = 0.0;
            for (int k = 0; k <= 500; ++k)
                max_exact = std::max(max_exact, prof->eta(1e6 * k / 500.0));
            worst_rel = std::max(worst_rel,
                                 std::abs(rows[i].max_eta - max_exact) / max_exact);
        }
        report(8, "steady free-surface maxima decrease with Froude number",
               monotone && worst_rel < 0.01,
               fmt("max eta = %.2f > %.2f > %.2f m; vs analytic steady within %.2f%%",
                   rows[0].max_eta, rows[1].max_eta, rows[2].max_eta, 100 * worst_rel));
    }
    // (c) the dimensional subcritical pulse drains out of the domain
    {
        ProblemConfig cfg;
        cfg.formulation = Formulation::SubcriticalChar;
        cfg.bathymetry = bathy_cosine(1e6, 5000.0, 1e5, 1e4);
        cfg.g = 9.812;
        cfg.eta0 = 0.0;
        cfg.u0 = 0.0;
        cfg.H0 = 1e4;
        const double amp = 0.2 * 0.2 * 1e4, rate = 5e-10, c0 = 3.0 * 1e6 / 20.0;
        cfg.eta_init = [=](double x) { return amp * std::exp(-rate * (x - c0) * (x - c0)); };
        cfg.u_init = [](double) { return 0.0; };
        const Mesh mesh = Mesh::uniform(1000, 0.0, 1e6);
        auto scheme = make_scheme(cfg, mesh, 2, 0, gauss_rule(3));
        const SimState init = scheme->initial_state();
        RunOptions ro;
        ro.dt = 1.0;
        ro.T = 12000.0;
        const RunResult res = run(*scheme, init, ButcherTableau::rk4(), ro);
        const QuadratureRule er = gauss_rule(4);
        const double n0 =
            l2_norm(mesh, [&](double x) { return scheme->eval_eta(init, x); }, er);
        const double nT =
            l2_norm(mesh, [&](double x) { return scheme->eval_eta(res.final_state, x); }, er);
        report(8, "dimensional subcritical pulse decays to rest", nT <= 1e-3 * n0,
               fmt("||eta(T)||/||eta(0)|| = %.2e (gate 1e-3)", nT / n0));
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_tables_1_2();
    criterion_3_wellbalance();
    criterion_4_steady_preservation();
    criterion_5_spatial_order();
    criterion_6_temporal_order();
    criterion_7_properties();
    criterion_8_qualitative();
    std::printf("----------------\n%s (%d failing check%s)\n",
                g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT", g_failures,
                g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
