#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "swfem/diagnostics.hpp"

using namespace swfem;

TEST_CASE("rate formula on synthetic errors") {
    RateTable t;
    t.columns = {"e"};
    t.n_values = {10, 20, 40, 80};
    const double C = 3.7, p = 2.5;
    for (int n : t.n_values) t.errors.push_back({C * std::pow(n, -p)});
    t.compute_rates();
    CHECK(std::isnan(t.rates[0][0]));
    for (std::size_t i = 1; i < t.rates.size(); ++i)
        CHECK(t.rates[i][0] == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("rates undefined when errors vanish") {
    RateTable t;
    t.columns = {"e"};
    t.n_values = {10, 20};
    t.errors = {{1e-15}, {0.0}};
    t.compute_rates();
    CHECK(std::isnan(t.rates[1][0]));
}

TEST_CASE("csv output is deterministic") {
    RateTable t;
    t.columns = {"eta", "u"};
    t.n_values = {40, 80};
    t.errors = {{1.25e-3, 3.5e-3}, {3.125e-4, 8.75e-4}};
    t.compute_rates();
    t.metadata["formulation"] = "supercritical";
    write_rate_table_csv(t, "rates_a.csv");
    write_rate_table_csv(t, "rates_b.csv");
    std::ifstream a("rates_a.csv"), b("rates_b.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("# formulation = supercritical") != std::string::npos);
    CHECK(sa.str().find("N,err_eta,rate_eta,err_u,rate_u") != std::string::npos);
    std::remove("rates_a.csv");
    std::remove("rates_b.csv");
}

TEST_CASE("nodal norm of simple functions") {
    const Mesh mesh = Mesh::uniform(100, 0.0, 1.0);
    CHECK(nodal_l2(mesh, [](double) { return 0.0; }) == 0.0);
    // constant c over N+1 nodes with weight h = 1/N
    CHECK(nodal_l2(mesh, [](double) { return 2.0; }) ==
          doctest::Approx(2.0 * std::sqrt(101.0 / 100.0)).epsilon(1e-14));
}

TEST_CASE("spline family convergence orders match the space order") {
    // linear splines with third-order RK and quintic splines with the
    // seven-stage sixth-order scheme, periodic manufactured flow
    {
        StudyOptions opts;
        opts.order = 2;
        opts.continuity = 0;
        opts.quad_points = 3;
        opts.dt_ratio = 0.1;
        opts.T = 0.5;
        opts.rk_order = 3;
        const RateTable t = convergence_study(manufactured_periodic(), {32, 64, 128}, opts);
        for (std::size_t i = 1; i < 3; ++i) {
            CHECK(t.rates[i][0] == doctest::Approx(2.0).epsilon(0.06));
            CHECK(t.rates[i][1] == doctest::Approx(2.0).epsilon(0.06));
        }
    }
    {
        StudyOptions opts;
        opts.order = 6;
        opts.continuity = 4;
        opts.quad_points = 8;  // >= 3(r-1)/2 keeps the source terms exact
        opts.dt_ratio = 0.05;
        opts.T = 0.5;
        opts.rk_order = 6;
        const RateTable t = convergence_study(manufactured_periodic(), {16, 32, 64}, opts);
        for (std::size_t i = 1; i < 3; ++i) {
            CHECK(t.rates[i][0] == doctest::Approx(6.0).epsilon(0.07));
            CHECK(t.rates[i][1] == doctest::Approx(6.0).epsilon(0.07));
        }
    }
}
