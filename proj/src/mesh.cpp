#include "swfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace swfem {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    require(nodes_.size() >= 2, "mesh needs at least two nodes");
    double hmax = 0.0;
    double hmin = nodes_.back() - nodes_.front();
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const double h = nodes_[i + 1] - nodes_[i];
        require(std::isfinite(h) && h > 0.0, "mesh nodes must be strictly increasing");
        hmax = std::max(hmax, h);
        hmin = std::min(hmin, h);
    }
    h_max_ = hmax;
    uniform_ = (hmax - hmin) <= 1e-12 * hmax;
}

Mesh Mesh::uniform(int n_elements, double left, double right) {
    require(n_elements >= 1, "n_elements must be >= 1");
    require(std::isfinite(left) && std::isfinite(right) && left < right,
            "invalid interval bounds");
    std::vector<double> nodes(static_cast<std::size_t>(n_elements) + 1);
    const double h = (right - left) / n_elements;
    for (int i = 0; i <= n_elements; ++i) nodes[static_cast<std::size_t>(i)] = left + i * h;
    nodes.front() = left;
    nodes.back() = right;
    return Mesh(std::move(nodes));
}

Mesh Mesh::perturbed(int n_elements, double left, double right, double amplitude,
                     unsigned long seed) {
    require(amplitude >= 0.0 && amplitude < 0.45, "perturbation amplitude must be in [0, 0.45)");
    Mesh base = uniform(n_elements, left, right);
    if (amplitude == 0.0 || n_elements < 2) return base;
    std::vector<double> nodes = base.nodes();
    const double h = (right - left) / n_elements;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-amplitude * h, amplitude * h);
    for (int i = 1; i < n_elements; ++i) nodes[static_cast<std::size_t>(i)] += jitter(rng);
    return Mesh(std::move(nodes));
}

int Mesh::element_of(double x) const {
    const double tol = 1e-12 * std::max(1.0, length());
    if (x < left() - tol || x > right() + tol)
        throw std::invalid_argument("point outside mesh domain");
    if (x >= right()) return n_elements() - 1;
    if (x <= left()) return 0;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::clamp(e, 0, n_elements() - 1);
}

} // namespace swfem
