#include "swfem/bathymetry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swfem {

namespace {

class GaussianHump final : public Bathymetry {
public:
    GaussianHump(double depth, double amp, double rate, double center)
        : depth_(depth), amp_(amp), rate_(rate), center_(center) {
        if (!(depth - std::abs(amp) > 0.0))
            throw std::invalid_argument("gaussian bathymetry: nonpositive minimum depth");
    }
    double height(double x) const override {
        const double d = x - center_;
        return depth_ - amp_ * std::exp(-rate_ * d * d);
    }
    double slope(double x) const override {
        const double d = x - center_;
        return 2.0 * rate_ * amp_ * d * std::exp(-rate_ * d * d);
    }
    std::string kind() const override { return "gaussian"; }

private:
    double depth_, amp_, rate_, center_;
};

class Trapezoid final : public Bathymetry {
public:
    Trapezoid(double L, double d0, double kappa, double c, double h0)
        : L_(L), d0_(d0), kappa_(kappa), c_(c), h0_(h0) {
        if (!(c > 0.5)) throw std::invalid_argument("trapezoid bathymetry: c must exceed 1/2");
        if (!(h0 > d0)) throw std::invalid_argument("trapezoid bathymetry: h0 must exceed sill height");
    }
    double height(double x) const override { return h0_ - sill(x); }
    double slope(double x) const override {
        const double y = x - L_ / 2;
        const double ramp = c_ * kappa_ - kappa_ / 2;
        // right-limit convention at the kinks
        if (y >= -c_ * kappa_ && y < -kappa_ / 2) return -d0_ / ramp;
        if (y >= kappa_ / 2 && y < c_ * kappa_) return d0_ / ramp;
        return 0.0;
    }
    std::string kind() const override { return "trapezoid"; }

private:
    double sill(double x) const {
        const double y = x - L_ / 2;
        const double ramp = c_ * kappa_ - kappa_ / 2;
        if (y >= -c_ * kappa_ && y <= -kappa_ / 2) return d0_ / ramp * (y + c_ * kappa_);
        if (y > -kappa_ / 2 && y < kappa_ / 2) return d0_;
        if (y >= kappa_ / 2 && y <= c_ * kappa_) return -d0_ / ramp * (y - c_ * kappa_);
        return 0.0;
    }
    double L_, d0_, kappa_, c_, h0_;
};

class CosineHump final : public Bathymetry {
public:
    CosineHump(double L, double delta, double kappa, double h0)
        : L_(L), delta_(delta), kappa_(kappa), h0_(h0) {
        if (!(h0 > delta)) throw std::invalid_argument("cosine bathymetry: h0 must exceed sill height");
    }
    double height(double x) const override {
        const double y = x - L_ / 2;
        if (std::abs(y) >= kappa_) return h0_;
        return h0_ - (delta_ / 2) * (1.0 + std::cos(std::numbers::pi * y / kappa_));
    }
    double slope(double x) const override {
        const double y = x - L_ / 2;
        if (std::abs(y) >= kappa_) return 0.0;
        return (delta_ / 2) * (std::numbers::pi / kappa_) * std::sin(std::numbers::pi * y / kappa_);
    }
    std::string kind() const override { return "cosine"; }

private:
    double L_, delta_, kappa_, h0_;
};

class Flat final : public Bathymetry {
public:
    explicit Flat(double depth) : depth_(depth) {
        if (!(depth > 0.0)) throw std::invalid_argument("flat bathymetry: depth must be positive");
    }
    double height(double) const override { return depth_; }
    double slope(double) const override { return 0.0; }
    std::string kind() const override { return "flat"; }

private:
    double depth_;
};

class Custom final : public Bathymetry {
public:
    Custom(std::function<double(double)> h, std::function<double(double)> s)
        : h_(std::move(h)), s_(std::move(s)) {}
    double height(double x) const override { return h_(x); }
    double slope(double x) const override { return s_(x); }
    std::string kind() const override { return "custom"; }

private:
    std::function<double(double)> h_, s_;
};

} // namespace

void validate_bathymetry(const Bathymetry& b, double left, double right) {
    const int n = 10000;
    const double dx = (right - left) / n;
    for (int i = 0; i <= n; ++i) {
        const double x = left + i * dx;
        if (!(b.height(x) > 0.0))
            throw std::invalid_argument("bathymetry: bottom height not positive at x=" +
                                        std::to_string(x));
    }
    // central differences vs slope() on a coarse sample, judged against the
    // global slope scale so flat stretches do not trip on roundoff noise; a
    // few kink-straddling samples are tolerated
    const double fd_h = (right - left) * 1e-6;
    double slope_scale = 0.0;
    std::vector<double> fd(49), an(49);
    for (int i = 1; i < 50; ++i) {
        const double x = left + (right - left) * i / 50.0;
        fd[static_cast<std::size_t>(i - 1)] = (b.height(x + fd_h) - b.height(x - fd_h)) / (2 * fd_h);
        an[static_cast<std::size_t>(i - 1)] = b.slope(x);
        slope_scale = std::max({slope_scale, std::abs(fd[static_cast<std::size_t>(i - 1)]),
                                std::abs(an[static_cast<std::size_t>(i - 1)])});
    }
    int bad = 0;
    for (int i = 0; i < 49; ++i)
        if (std::abs(fd[static_cast<std::size_t>(i)] - an[static_cast<std::size_t>(i)]) >
            1e-5 * std::max(slope_scale, 1e-12))
            ++bad;
    if (bad > 4)
        throw std::invalid_argument("bathymetry: slope() inconsistent with finite differences");
}

std::shared_ptr<const Bathymetry> bathy_gaussian(double depth, double amp, double rate,
                                                 double center) {
    return std::make_shared<const GaussianHump>(depth, amp, rate, center);
}

std::shared_ptr<const Bathymetry> bathy_trapezoid(double L, double d0, double kappa, double c,
                                                  double h0) {
    return std::make_shared<const Trapezoid>(L, d0, kappa, c, h0);
}

std::shared_ptr<const Bathymetry> bathy_cosine(double L, double delta, double kappa, double h0) {
    return std::make_shared<const CosineHump>(L, delta, kappa, h0);
}

std::shared_ptr<const Bathymetry> bathy_flat(double depth) {
    return std::make_shared<const Flat>(depth);
}

std::shared_ptr<const Bathymetry> bathy_custom(std::function<double(double)> height,
                                               std::function<double(double)> slope) {
    return std::make_shared<const Custom>(std::move(height), std::move(slope));
}

} // namespace swfem
