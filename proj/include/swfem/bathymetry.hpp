#pragma once

#include <functional>
#include <memory>
#include <string>

namespace swfem {

/// Bottom topography: the bottom sits at z = -height(x), with height(x) > 0
/// on the domain. slope() is the analytic derivative (one-sided from the
/// right at kinks).
class Bathymetry {
public:
    virtual ~Bathymetry() = default;
    virtual double height(double x) const = 0;
    virtual double slope(double x) const = 0;
    virtual std::string kind() const = 0;
};

// depth - amp * exp(-rate (x-center)^2)
std::shared_ptr<const Bathymetry> bathy_gaussian(double depth, double amp, double rate,
                                                 double center);

// h0 minus a trapezoidal sill of height d0, plateau width kappa, ramps ending
// at |x - L/2| = c*kappa.
std::shared_ptr<const Bathymetry> bathy_trapezoid(double L, double d0, double kappa, double c,
                                                  double h0);

// h0 minus a raised-cosine sill of height delta supported on |x-L/2| < kappa.
std::shared_ptr<const Bathymetry> bathy_cosine(double L, double delta, double kappa, double h0);

std::shared_ptr<const Bathymetry> bathy_flat(double depth);

std::shared_ptr<const Bathymetry> bathy_custom(std::function<double(double)> height,
                                               std::function<double(double)> slope);

// Construction-time sanity check used by the factories: positivity of the
// height on a dense sample and consistency of slope() with finite
// differences of height() away from kinks.
void validate_bathymetry(const Bathymetry& b, double left, double right);

} // namespace swfem
