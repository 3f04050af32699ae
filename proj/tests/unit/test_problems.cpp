#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "swfem/problem.hpp"

using namespace swfem;

namespace {

// finite-difference residual of the mass/momentum equations for the closed
// forms; the oracle for the manufactured partial derivatives
double pde_residual(const ManufacturedSolution& ms, const Bathymetry& b, double g, double x,
                    double t) {
    const double h = 1e-5;
    const double eta_t = (ms.eta(x, t + h) - ms.eta(x, t - h)) / (2 * h);
    const double eta_x = (ms.eta(x + h, t) - ms.eta(x - h, t)) / (2 * h);
    const double u_t = (ms.u(x, t + h) - ms.u(x, t - h)) / (2 * h);
    const double u_x = (ms.u(x + h, t) - ms.u(x - h, t)) / (2 * h);
    const double f_eta = eta_t + (b.slope(x) + eta_x) * ms.u(x, t) +
                         (b.height(x) + ms.eta(x, t)) * u_x;
    const double f_u = u_t + g * eta_x + ms.u(x, t) * u_x;
    // closed-form forcings from the analytic partials
    const double F_eta = ms.eta_t(x, t) + (b.slope(x) + ms.eta_x(x, t)) * ms.u(x, t) +
                         (b.height(x) + ms.eta(x, t)) * ms.u_x(x, t);
    const double F_u = ms.u_t(x, t) + g * ms.eta_x(x, t) + ms.u(x, t) * ms.u_x(x, t);
    const double scale = std::max({std::abs(F_eta), std::abs(F_u), 1.0});
    return std::max(std::abs(f_eta - F_eta), std::abs(f_u - F_u)) / scale;
}

} // namespace

TEST_CASE("gaussian bathymetry values") {
    auto b = bathy_gaussian(1.0, 0.04, 100.0, 0.5);
    CHECK(b->height(0.5) == doctest::Approx(0.96).epsilon(1e-15));
    CHECK(b->height(0.0) == doctest::Approx(1.0 - 0.04 * std::exp(-25.0)).epsilon(1e-15));
    auto flat = bathy_gaussian(1.0, 0.0, 100.0, 0.5);
    CHECK(flat->height(0.3) == 1.0);
    CHECK(flat->slope(0.3) == 0.0);
    auto big = bathy_gaussian(1.0, 0.4, 100.0, 0.5);
    CHECK(big->height(0.5) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(bathy_gaussian(1.0, 1.0, 100.0, 0.5), std::invalid_argument);
}

TEST_CASE("trapezoid bathymetry values") {
    const double L = 1e6, d0 = 500, kappa = L / 10, h0 = 1000;
    auto b = bathy_trapezoid(L, d0, kappa, 1.0, h0);
    CHECK(b->height(L / 2) == doctest::Approx(500.0));
    CHECK(b->height(0.0) == doctest::Approx(1000.0));
    // midpoint of the left ramp
    const double ramp_mid = L / 2 - (kappa / 2 + kappa) / 2;
    CHECK(b->height(ramp_mid) == doctest::Approx(h0 - d0 / 2));
    CHECK(b->slope(0.0) == 0.0);
    CHECK_THROWS_AS(bathy_trapezoid(L, 1500.0, kappa, 1.0, 1000.0), std::invalid_argument);
    CHECK_THROWS_AS(bathy_trapezoid(L, d0, kappa, 0.4, h0), std::invalid_argument);
}

TEST_CASE("bathymetry positivity and slope consistency") {
    for (auto b : {bathy_gaussian(1.0, 0.3, 1000.0, 0.5), bathy_cosine(1e6, 5000.0, 1e5, 1e4),
                   bathy_trapezoid(1e6, 500.0, 1e5, 1.0, 1000.0)}) {
        const double L = b->kind() == "gaussian" ? 1.0 : 1e6;
        CHECK_NOTHROW(validate_bathymetry(*b, 0.0, L));
        const int n = 10000;
        for (int i = 0; i <= n; i += 7) CHECK(b->height(L * i / n) > 0.0);
    }
}

TEST_CASE("supercritical manufactured solution") {
    ProblemConfig cfg = manufactured_supercritical();
    CHECK_NOTHROW(cfg.validate());
    const auto& ms = *cfg.manufactured;
    CHECK(ms.eta(0.5, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
    for (double t : {0.0, 0.3, 1.0}) CHECK(ms.u(0.0, t) == doctest::Approx(3.0).epsilon(1e-13));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xs(0.01, 0.99), ts(0.01, 0.99);
    for (int i = 0; i < 100; ++i)
        CHECK(pde_residual(ms, *cfg.bathymetry, cfg.g, xs(rng), ts(rng)) < 1e-5);
}

TEST_CASE("subcritical manufactured solution") {
    ProblemConfig cfg = manufactured_subcritical();
    CHECK_NOTHROW(cfg.validate());
    const auto& ms = *cfg.manufactured;
    for (double t : {0.0, 0.5, 1.0}) CHECK(ms.eta(0.0, t) == doctest::Approx(1.0).epsilon(1e-15));
    // B(0) = -2 sqrt(2) + 1 + 2 sqrt(2) = 1 = u(0, 0)
    CHECK(ms.u(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));

    // the outflow Riemann invariant u - 2 sqrt(beta + eta) is t-independent
    const double ref = ms.u(1.0, 0.0) -
                       2.0 * std::sqrt(cfg.bathymetry->height(1.0) + ms.eta(1.0, 0.0));
    for (double t : {0.25, 0.5, 1.0}) {
        const double val = ms.u(1.0, t) -
                           2.0 * std::sqrt(cfg.bathymetry->height(1.0) + ms.eta(1.0, t));
        CHECK(val == doctest::Approx(ref).epsilon(1e-10));
    }
    // diagonal boundary traces vanish (up to the far-field bathymetry tail)
    const double d0 = cfg.delta0();
    for (double t : {0.0, 0.37, 1.0}) {
        const double H0x = cfg.bathymetry->height(0.0) + ms.eta(0.0, t);
        const double v0 = 0.5 * (ms.u(0.0, t) - cfg.u0) + (std::sqrt(cfg.g * H0x) - d0);
        const double H1x = cfg.bathymetry->height(1.0) + ms.eta(1.0, t);
        const double w1 = 0.5 * (ms.u(1.0, t) - cfg.u0) - (std::sqrt(cfg.g * H1x) - d0);
        CHECK(std::abs(v0) < 1e-10);
        CHECK(std::abs(w1) < 1e-10);
    }

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> xs(0.01, 0.99), ts(0.01, 0.99);
    for (int i = 0; i < 100; ++i)
        CHECK(pde_residual(ms, *cfg.bathymetry, cfg.g, xs(rng), ts(rng)) < 1e-5);
}

TEST_CASE("periodic manufactured solution") {
    ProblemConfig cfg = manufactured_periodic();
    const auto& ms = *cfg.manufactured;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> xs(0.01, 0.99), ts(0.01, 0.99);
    for (int i = 0; i < 100; ++i)
        CHECK(pde_residual(ms, *cfg.bathymetry, cfg.g, xs(rng), ts(rng)) < 1e-5);
    // depth stays positive
    for (int i = 0; i <= 100; ++i)
        CHECK(cfg.bathymetry->height(i / 100.0) + ms.eta(i / 100.0, 0.5) > 0.0);
}

TEST_CASE("criticality checks") {
    ProblemConfig cfg;
    cfg.formulation = Formulation::SupercriticalChar;
    cfg.bathymetry = bathy_flat(1.0);
    cfg.eta0 = 1.0;
    cfg.u0 = 3.0;
    cfg.H0 = 2.0;
    auto eta = [](double) { return 1.0; };
    auto u = [](double) { return 3.0; };
    const CriticalityReport rep = check_supercriticality(eta, u, cfg, 0.5, 1.0);
    CHECK(rep.pass);
    CHECK(rep.margin_depth == doctest::Approx(1.0));  // 2 >= 1
    CHECK(rep.margin_speed == doctest::Approx(2.0));  // 3 >= 2a = 1
    CHECK(rep.margin_char == doctest::Approx(2.5 * (3.0 - 1.0 / 3.0) - 2.0));

    auto slow = [](double x) { return x < 0.5 ? 3.0 : 0.8; };
    const CriticalityReport bad = check_supercriticality(eta, slow, cfg, 0.5, 1.0);
    CHECK(!bad.pass);
    CHECK(bad.margin_speed < 0.0);
    CHECK(bad.x_speed > 0.45);

    const SubcriticalityReport sub = check_subcriticality(
        [](double) { return 1.0; }, [](double) { return 1.0; }, cfg, 0.4);
    CHECK(sub.pass);
    CHECK(sub.min_lambda1 == doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK(sub.max_lambda2 == doctest::Approx(1.0 - std::sqrt(2.0)));
}

TEST_CASE("criticality constraints validated at construction") {
    ProblemConfig cfg;
    cfg.formulation = Formulation::SupercriticalChar;
    cfg.bathymetry = bathy_flat(1.0);
    cfg.eta0 = 1.0;
    cfg.u0 = 1.0;  // slower than sqrt(beta + eta0) = sqrt(2)
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg.formulation = Formulation::SubcriticalChar;
    cfg.u0 = 2.0;
    cfg.H0 = 2.0;  // u0^2 = 4 > 2
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
