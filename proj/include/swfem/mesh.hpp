#pragma once

#include <vector>

namespace swfem {

/// Partition of an interval [left, right] into elements with strictly
/// increasing nodes.
class Mesh {
public:
    explicit Mesh(std::vector<double> nodes);

    static Mesh uniform(int n_elements, double left, double right);

    // Uniform mesh whose interior nodes are jittered by at most
    // amplitude * (uniform spacing), deterministically from seed.
    // amplitude must lie in [0, 0.45) so nodes stay strictly increasing.
    static Mesh perturbed(int n_elements, double left, double right, double amplitude,
                          unsigned long seed);

    int n_elements() const { return static_cast<int>(nodes_.size()) - 1; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double left() const { return nodes_.front(); }
    double right() const { return nodes_.back(); }
    double length() const { return right() - left(); }
    double h_max() const { return h_max_; }
    bool uniform_spacing() const { return uniform_; }

    // Element containing x (right-continuous at interior nodes; the right
    // endpoint belongs to the last element). Throws std::invalid_argument if
    // x lies outside the domain by more than a roundoff tolerance.
    int element_of(double x) const;

private:
    std::vector<double> nodes_;
    double h_max_ = 0.0;
    bool uniform_ = false;
};

} // namespace swfem
