#include "swfem/space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace swfem {

namespace {

constexpr int kMaxOrder = 12;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Basis values and derivatives on one span via the de Boor recurrence
// (the standard "DersBasisFuns" triangle). W holds the 2p+2 knots around the
// span, so W[p] <= x <= W[p+1]. Output: out[d*(p+1) + j], j = 0..p.
void ders_basis(const double* W, int p, double x, int n_der, double* out) {
    std::array<double, kMaxOrder> left{}, right{};
    std::array<std::array<double, kMaxOrder>, kMaxOrder> ndu{};
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - W[p + 1 - j];
        right[j] = W[p + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int j = 0; j <= p; ++j) out[j] = ndu[j][p];
    if (n_der == 0) return;

    std::array<std::array<double, kMaxOrder>, 2> a{};
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= n_der; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            out[k * (p + 1) + r] = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= n_der; ++k) {
        for (int j = 0; j <= p; ++j) out[k * (p + 1) + j] *= factor;
        factor *= (p - k);
    }
}

// Clamped (open) knot vector: endpoints with multiplicity r, interior
// breakpoints with multiplicity mult.
std::vector<double> clamped_knots(const Mesh& mesh, int order, int mult) {
    std::vector<double> t;
    const int n = mesh.n_elements();
    t.reserve(static_cast<std::size_t>(2 * order + (n - 1) * mult));
    for (int i = 0; i < order; ++i) t.push_back(mesh.left());
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < mult; ++j) t.push_back(mesh.node(i));
    for (int i = 0; i < order; ++i) t.push_back(mesh.right());
    return t;
}

double periodic_knot(const Mesh& mesh, int mult, long q) {
    const long n = static_cast<long>(mesh.n_elements()) * mult;
    const long shift = floor_div(q, n);
    const long qq = q - shift * n;
    return mesh.node(static_cast<int>(qq / mult)) + static_cast<double>(shift) * mesh.length();
}

} // namespace

FemSpace::FemSpace(Mesh mesh, int order, int continuity, Constraint constraint)
    : mesh_(std::move(mesh)), order_(order), continuity_(continuity), constraint_(constraint) {
    require(order_ >= 2 && order_ <= kMaxOrder, "spline order must be in [2, 12]");
    require(continuity_ >= 0 && continuity_ <= order_ - 2,
            "continuity must be in [0, order-2]");
    mult_ = order_ - 1 - continuity_;
    const int n = mesh_.n_elements();
    const int p = order_ - 1;

    if (constraint_ == Constraint::Periodic) {
        unconstrained_dim_ = n * mult_;
        dim_ = unconstrained_dim_;
        require(dim_ >= order_, "periodic space needs n_elements*multiplicity >= order");
        elem_knots_.resize(static_cast<std::size_t>(n) * 2 * order_);
        for (int e = 0; e < n; ++e) {
            const long j = static_cast<long>(e) * mult_ + mult_ - 1;
            double* w = elem_knots_.data() + static_cast<std::size_t>(e) * 2 * order_;
            for (int i = 0; i < 2 * order_; ++i) w[i] = periodic_knot(mesh_, mult_, j - p + i);
        }
    } else {
        unconstrained_dim_ = order_ + (n - 1) * mult_;
        int removed = 0;
        if (constraint_ == Constraint::ZeroLeft || constraint_ == Constraint::ZeroBoth) ++removed;
        if (constraint_ == Constraint::ZeroRight || constraint_ == Constraint::ZeroBoth) ++removed;
        dim_ = unconstrained_dim_ - removed;
        require(dim_ >= 1, "constraints leave an empty space");
        const std::vector<double> t = clamped_knots(mesh_, order_, mult_);
        elem_knots_.resize(static_cast<std::size_t>(n) * 2 * order_);
        for (int e = 0; e < n; ++e) {
            const int j = p + e * mult_;  // span index of element e
            double* w = elem_knots_.data() + static_cast<std::size_t>(e) * 2 * order_;
            for (int i = 0; i < 2 * order_; ++i) w[i] = t[static_cast<std::size_t>(j - p + i)];
        }
    }
}

int FemSpace::dof_index(int element, int local) const {
    if (constraint_ == Constraint::Periodic) {
        const long n = dim_;
        long g = static_cast<long>(element) * mult_ + mult_ - 1 - (order_ - 1) + local;
        g %= n;
        if (g < 0) g += n;
        return static_cast<int>(g);
    }
    const int g = element * mult_ + local;
    switch (constraint_) {
        case Constraint::Free:
            return g;
        case Constraint::ZeroLeft:
            return g == 0 ? -1 : g - 1;
        case Constraint::ZeroRight:
            return g == unconstrained_dim_ - 1 ? -1 : g;
        case Constraint::ZeroBoth:
            return (g == 0 || g == unconstrained_dim_ - 1) ? -1 : g - 1;
        default:
            return -1;
    }
}

void FemSpace::basis_on_element(int element, double x, int n_der, double* out) const {
    ders_basis(window(element), order_ - 1, x, n_der, out);
}

double FemSpace::eval(std::span<const double> coef, double x, int deriv) const {
    if (deriv < 0 || deriv > 2) throw std::invalid_argument("deriv must be 0, 1 or 2");
    if (coef.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("coefficient vector length mismatch");
    const int e = mesh_.element_of(x);
    const double xc = std::clamp(x, mesh_.left(), mesh_.right());
    std::array<double, 3 * kMaxOrder> b{};
    basis_on_element(e, xc, deriv, b.data());
    const double* row = b.data() + deriv * order_;
    double v = 0.0;
    for (int l = 0; l < order_; ++l) {
        const int d = dof_index(e, l);
        if (d >= 0) v += coef[static_cast<std::size_t>(d)] * row[l];
    }
    return v;
}

std::vector<double> FemSpace::greville_points() const {
    const int p = order_ - 1;
    std::vector<double> pts(static_cast<std::size_t>(dim_));
    if (constraint_ == Constraint::Periodic) {
        for (int q = 0; q < dim_; ++q) {
            double s = 0.0;
            for (int j = 1; j <= p; ++j) s += periodic_knot(mesh_, mult_, q + j);
            double x = s / p;
            // wrap into [left, right)
            const double L = mesh_.length();
            x = mesh_.left() + std::fmod(std::fmod(x - mesh_.left(), L) + L, L);
            pts[static_cast<std::size_t>(q)] = x;
        }
        std::sort(pts.begin(), pts.end());
        return pts;
    }
    const std::vector<double> t = clamped_knots(mesh_, order_, mult_);
    const int first = (constraint_ == Constraint::ZeroLeft || constraint_ == Constraint::ZeroBoth) ? 1 : 0;
    for (int d = 0; d < dim_; ++d) {
        const int g = d + first;
        double s = 0.0;
        for (int j = 1; j <= p; ++j) s += t[static_cast<std::size_t>(g + j)];
        pts[static_cast<std::size_t>(d)] = s / p;
    }
    return pts;
}

std::shared_ptr<const FemSpace> make_space(const Mesh& mesh, int order, int continuity,
                                           Constraint constraint) {
    return std::make_shared<const FemSpace>(mesh, order, continuity, constraint);
}

} // namespace swfem
