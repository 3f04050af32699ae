#include "swfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swfem {

SpaceQuadTable SpaceQuadTable::build(const FemSpace& space, const QuadratureRule& rule) {
    SpaceQuadTable t;
    const Mesh& mesh = space.mesh();
    t.n_elem = mesh.n_elements();
    t.s = rule.s;
    t.r = space.local_size();
    const std::size_t nq = static_cast<std::size_t>(t.n_elem) * t.s;
    t.xq.resize(nq);
    t.wq.resize(nq);
    t.b0.resize(nq * t.r);
    t.b1.resize(nq * t.r);
    t.dofs.resize(static_cast<std::size_t>(t.n_elem) * t.r);
    std::vector<double> basis(static_cast<std::size_t>(2) * t.r);
    for (int e = 0; e < t.n_elem; ++e) {
        const double a = mesh.node(e), b = mesh.node(e + 1);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int l = 0; l < t.r; ++l)
            t.dofs[static_cast<std::size_t>(e) * t.r + l] = space.dof_index(e, l);
        for (int q = 0; q < t.s; ++q) {
            const std::size_t iq = static_cast<std::size_t>(e) * t.s + q;
            const double x = mid + half * rule.nodes[static_cast<std::size_t>(q)];
            t.xq[iq] = x;
            t.wq[iq] = half * rule.weights[static_cast<std::size_t>(q)];
            space.basis_on_element(e, x, 1, basis.data());
            for (int l = 0; l < t.r; ++l) {
                t.b0[iq * t.r + l] = basis[static_cast<std::size_t>(l)];
                t.b1[iq * t.r + l] = basis[static_cast<std::size_t>(t.r + l)];
            }
        }
    }
    return t;
}

void eval_at_quadrature(const SpaceQuadTable& t, std::span<const double> c,
                        std::span<double> value, std::span<double> deriv) {
    const int r = t.r, s = t.s;
    for (int e = 0; e < t.n_elem; ++e) {
        const int* dof = t.dofs.data() + static_cast<std::size_t>(e) * r;
        double cl[16];
        for (int l = 0; l < r; ++l) cl[l] = dof[l] >= 0 ? c[static_cast<std::size_t>(dof[l])] : 0.0;
        for (int q = 0; q < s; ++q) {
            const std::size_t iq = static_cast<std::size_t>(e) * s + q;
            const double* B0 = t.b0.data() + iq * r;
            double v = 0.0;
            for (int l = 0; l < r; ++l) v += cl[l] * B0[l];
            value[iq] = v;
            if (!deriv.empty()) {
                const double* B1 = t.b1.data() + iq * r;
                double d = 0.0;
                for (int l = 0; l < r; ++l) d += cl[l] * B1[l];
                deriv[iq] = d;
            }
        }
    }
}

namespace {

template <bool UseDeriv>
void add_load_impl(const SpaceQuadTable& t, std::span<const double> g, std::span<double> out) {
    const int r = t.r, s = t.s;
    const std::vector<double>& B = UseDeriv ? t.b1 : t.b0;
    for (int e = 0; e < t.n_elem; ++e) {
        const int* dof = t.dofs.data() + static_cast<std::size_t>(e) * r;
        double acc[16] = {0.0};
        for (int q = 0; q < s; ++q) {
            const std::size_t iq = static_cast<std::size_t>(e) * s + q;
            const double wg = t.wq[iq] * g[iq];
            const double* Bq = B.data() + iq * r;
            for (int l = 0; l < r; ++l) acc[l] += wg * Bq[l];
        }
        for (int l = 0; l < r; ++l)
            if (dof[l] >= 0) out[static_cast<std::size_t>(dof[l])] += acc[l];
    }
}

} // namespace

void add_load(const SpaceQuadTable& t, std::span<const double> g, std::span<double> out) {
    add_load_impl<false>(t, g, out);
}

void add_load_dphi(const SpaceQuadTable& t, std::span<const double> g, std::span<double> out) {
    add_load_impl<true>(t, g, out);
}

MassMatrix::MassMatrix(const FemSpace& space, const QuadratureRule& rule)
    : m_(space.periodic() ? std::variant<BandedSPD, PeriodicSPD>(
                                std::in_place_type<PeriodicSPD>, space.dim(), space.bandwidth())
                          : std::variant<BandedSPD, PeriodicSPD>(
                                std::in_place_type<BandedSPD>, space.dim(), space.bandwidth())) {
    const SpaceQuadTable t = SpaceQuadTable::build(space, rule);
    const int r = t.r;
    auto add = [this](int i, int j, double v) {
        std::visit([&](auto& m) { m.add_sym(i, j, v); }, m_);
    };
    for (int e = 0; e < t.n_elem; ++e) {
        const int* dof = t.dofs.data() + static_cast<std::size_t>(e) * r;
        for (int l0 = 0; l0 < r; ++l0) {
            if (dof[l0] < 0) continue;
            for (int l1 = l0; l1 < r; ++l1) {
                if (dof[l1] < 0) continue;
                double v = 0.0;
                for (int q = 0; q < t.s; ++q) {
                    const std::size_t iq = static_cast<std::size_t>(e) * t.s + q;
                    v += t.wq[iq] * t.b0[iq * r + l0] * t.b0[iq * r + l1];
                }
                if (dof[l0] == dof[l1] && l0 != l1) {
                    // same wrapped dof reached twice on one element: count once
                    // per unordered pair; the symmetric partner is this entry
                    add(dof[l0], dof[l1], 2.0 * v);
                } else {
                    add(dof[l0], dof[l1], v);
                }
            }
        }
    }
    std::visit([](auto& m) { m.factorize(); }, m_);
}

int MassMatrix::dim() const {
    return std::visit([](const auto& m) { return m.dim(); }, m_);
}

double MassMatrix::coeff(int i, int j) const {
    return std::visit([&](const auto& m) { return m.coeff(i, j); }, m_);
}

void MassMatrix::solve_in_place(std::span<double> b) const {
    std::visit([&](const auto& m) { m.solve_in_place(b); }, m_);
}

std::vector<double> MassMatrix::solve(std::vector<double> b) const {
    solve_in_place(b);
    return b;
}

std::vector<double> MassMatrix::multiply(std::span<const double> x) const {
    return std::visit([&](const auto& m) { return m.multiply(x); }, m_);
}

std::vector<double> weak_load(const FemSpace& space, const QuadratureRule& rule,
                              const std::function<double(double)>& g) {
    const SpaceQuadTable t = SpaceQuadTable::build(space, rule);
    std::vector<double> gv(static_cast<std::size_t>(t.n_points()));
    for (int i = 0; i < t.n_points(); ++i) gv[static_cast<std::size_t>(i)] = g(t.xq[static_cast<std::size_t>(i)]);
    std::vector<double> b(static_cast<std::size_t>(space.dim()), 0.0);
    add_load(t, gv, b);
    return b;
}

CoefVec l2_project(const std::shared_ptr<const FemSpace>& space,
                   const std::function<double(double)>& f, const QuadratureRule& rule) {
    MassMatrix M(*space, rule);
    return CoefVec{space, M.solve(weak_load(*space, rule, f))};
}

CoefVec interpolate(const std::shared_ptr<const FemSpace>& space,
                    const std::function<double(double)>& f) {
    const int n = space->dim();
    const std::vector<double> pts = space->greville_points();
    std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> basis(static_cast<std::size_t>(space->local_size()));
    for (int i = 0; i < n; ++i) {
        const int e = space->mesh().element_of(pts[static_cast<std::size_t>(i)]);
        space->basis_on_element(e, pts[static_cast<std::size_t>(i)], 0, basis.data());
        for (int l = 0; l < space->local_size(); ++l) {
            const int d = space->dof_index(e, l);
            if (d >= 0) A[static_cast<std::size_t>(i) * n + d] += basis[static_cast<std::size_t>(l)];
        }
    }
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = f(pts[static_cast<std::size_t>(i)]);
    std::vector<int> piv;
    detail::lu_factor(A, piv, n);
    detail::lu_solve(A, piv, n, b);
    return CoefVec{space, std::move(b)};
}

double l2_norm(const CoefVec& f, const QuadratureRule& rule) {
    return l2_error(f, [](double) { return 0.0; }, rule);
}

double l2_norm(const Mesh& mesh, const std::function<double(double)>& f,
               const QuadratureRule& rule) {
    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double a = mesh.node(e), b = mesh.node(e + 1);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < rule.s; ++q) {
            const double x = mid + half * rule.nodes[static_cast<std::size_t>(q)];
            const double v = f(x);
            acc += half * rule.weights[static_cast<std::size_t>(q)] * v * v;
        }
    }
    return std::sqrt(acc);
}

double l2_error(const CoefVec& fh, const std::function<double(double)>& f,
                const QuadratureRule& rule) {
    const FemSpace& space = *fh.space;
    const SpaceQuadTable t = SpaceQuadTable::build(space, rule);
    std::vector<double> v(static_cast<std::size_t>(t.n_points()));
    eval_at_quadrature(t, fh.coef, v, {});
    double acc = 0.0;
    for (int i = 0; i < t.n_points(); ++i) {
        const double d = v[static_cast<std::size_t>(i)] - f(t.xq[static_cast<std::size_t>(i)]);
        acc += t.wq[static_cast<std::size_t>(i)] * d * d;
    }
    return std::sqrt(acc);
}

double linf_error(const CoefVec& fh, const std::function<double(double)>& f,
                  int samples_per_element) {
    const Mesh& mesh = fh.space->mesh();
    double worst = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double a = mesh.node(e), b = mesh.node(e + 1);
        for (int q = 0; q <= samples_per_element; ++q) {
            const double x = a + (b - a) * q / samples_per_element;
            worst = std::max(worst, std::abs(fh(x) - f(x)));
        }
    }
    return worst;
}

} // namespace swfem
