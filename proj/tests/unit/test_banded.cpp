#include <cmath>
#include <random>

#include "doctest.h"
#include "swfem/banded.hpp"
#include "swfem/errors.hpp"

using namespace swfem;

namespace {

template <typename M>
double solve_residual(M& m, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(m.dim()));
    for (auto& v : x) v = dist(rng);
    std::vector<double> b = m.multiply(x);
    m.solve_in_place(b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (b[i] - x[i]) * (b[i] - x[i]);
        den += x[i] * x[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("banded Cholesky solves a diagonally dominant system") {
    const int n = 40, bw = 3;
    BandedSPD m(n, bw);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
        m.add_sym(i, i, 10.0 + dist(rng));
        for (int d = 1; d <= bw && i + d < n; ++d) m.add_sym(i, i + d, dist(rng));
    }
    CHECK(m.coeff(3, 5) == m.coeff(5, 3));
    m.factorize();
    CHECK(solve_residual(m, 2) < 1e-13);
}

TEST_CASE("non-SPD banded matrix is rejected") {
    BandedSPD m(4, 1);
    for (int i = 0; i < 4; ++i) m.add_sym(i, i, 1.0);
    m.add_sym(1, 1, -3.0);
    CHECK_THROWS_AS(m.factorize(), SingularMatrixError);
}

TEST_CASE("cyclic banded solve") {
    for (int n : {5, 7, 9, 24, 101}) {
        for (int bw : {1, 2, 3}) {
            PeriodicSPD m(n, bw);
            std::mt19937_64 rng(static_cast<unsigned>(n * 10 + bw));
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (int i = 0; i < n; ++i) {
                m.add_sym(i, i, 8.0 + dist(rng));
                for (int d = 1; d <= bw; ++d) m.add_sym(i, (i + d) % n, dist(rng));
            }
            CHECK(m.coeff(0, n - 1) == m.coeff(n - 1, 0));
            m.factorize();
            CHECK(solve_residual(m, 3) < 1e-12);
        }
    }
}

TEST_CASE("dense LU pivots") {
    std::vector<double> a = {0.0, 2.0, 1.0, 0.0};
    std::vector<int> piv;
    detail::lu_factor(a, piv, 2);
    std::vector<double> b = {4.0, 3.0};  // solves [0 2; 1 0] x = b
    detail::lu_solve(a, piv, 2, b);
    CHECK(b[0] == doctest::Approx(3.0));
    CHECK(b[1] == doctest::Approx(2.0));
}

TEST_CASE("dense LU on random general matrices") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {3, 10, 24}) {
        std::vector<double> a(static_cast<std::size_t>(n) * n);
        for (auto& v : a) v = dist(rng);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = dist(rng);
        std::vector<double> b(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)];
        std::vector<int> piv;
        detail::lu_factor(a, piv, n);
        detail::lu_solve(a, piv, n, b);
        for (int i = 0; i < n; ++i)
            CHECK(b[static_cast<std::size_t>(i)] == doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
}
