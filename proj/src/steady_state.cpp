#include "swfem/steady_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "swfem/errors.hpp"

namespace swfem {

SteadyProfile::SteadyProfile(std::shared_ptr<const Bathymetry> bathymetry, double eta0, double u0,
                             double g, FlowBranch branch)
    : bathy_(std::move(bathymetry)), eta0_(eta0), u0_(u0), g_(g), branch_(branch) {
    if (!(g > 0.0)) throw std::invalid_argument("steady profile: g must be positive");
    if (!(u0 > 0.0)) throw std::invalid_argument("steady profile: u0 must be positive");
    // Q and the head are set by the inflow data at x = 0 (left end)
    Q0_ = u0_ * (eta0_ + bathy_->height(0.0));
    E0_ = g_ * eta0_ + 0.5 * u0_ * u0_;
    Dc_ = std::cbrt(Q0_ * Q0_ / g_);
    const double D_in = eta0_ + bathy_->height(0.0);
    const bool super_in = D_in < Dc_;
    if (super_in != (branch_ == FlowBranch::Supercritical))
        throw std::invalid_argument("steady profile: inflow data on the wrong branch");
}

namespace {

// specific energy in depth form, e(D) = D + Q^2 / (2 g D^2); decreasing below
// the critical depth, increasing above it
double specific_energy(double D, double Q, double g) { return D + Q * Q / (2.0 * g * D * D); }

} // namespace

double SteadyProfile::depth(double x) const {
    const double beta = bathy_->height(x);
    const double target = beta + E0_ / g_;
    const double e_crit = 1.5 * Dc_;
    if (target < e_crit * (1.0 - 1e-14)) {
        // transcritical: report the smallest bottom height that keeps the branch
        throw NoSteadyStateError(
            "no steady root of the requested branch at x = " + std::to_string(x) +
                " (transcritical regime)",
            e_crit - E0_ / g_);
    }
    double lo, hi;
    if (branch_ == FlowBranch::Supercritical) {
        // e is decreasing on (0, Dc]; bracket from below
        hi = Dc_;
        lo = Dc_ * 1e-3;
        while (specific_energy(lo, Q0_, g_) < target) lo *= 0.5;
    } else {
        lo = Dc_;
        hi = std::max(2.0 * Dc_, target + Dc_);  // e(D) >= D
    }
    // bisection to a tight bracket, then Newton polish
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = specific_energy(mid, Q0_, g_);
        const bool high_side = (branch_ == FlowBranch::Supercritical) ? (e > target) : (e < target);
        if (high_side)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * Dc_) break;
    }
    double D = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double f = specific_energy(D, Q0_, g_) - target;
        const double df = 1.0 - Q0_ * Q0_ / (g_ * D * D * D);
        if (df == 0.0) break;
        const double Dn = D - f / df;
        if (!(Dn > lo * 0.5) || !(Dn < hi * 2.0)) break;
        D = Dn;
        if (std::abs(f) <= 1e-15 * (std::abs(target) + Dc_)) break;
    }
    return D;
}

double SteadyProfile::eta(double x) const { return depth(x) - bathy_->height(x); }

double SteadyProfile::u(double x) const { return Q0_ / depth(x); }

double SteadyProfile::cubic_residual(double x, double eta) const {
    const double D = eta + bathy_->height(x);
    return D * D * (g_ * eta - E0_) + 0.5 * Q0_ * Q0_;
}

std::shared_ptr<const SteadyProfile> solve_steady(std::shared_ptr<const Bathymetry> bathymetry,
                                                  double eta0, double u0, double g,
                                                  FlowBranch branch) {
    return std::make_shared<const SteadyProfile>(std::move(bathymetry), eta0, u0, g, branch);
}

} // namespace swfem
