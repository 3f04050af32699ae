#pragma once

#include <stdexcept>
#include <string>

namespace swfem {

// Cholesky/LU failure on a matrix that should have been SPD; usually means a
// broken basis or an empty element.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite coefficients produced during time stepping.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, int stage, double time)
        : std::runtime_error(what), stage(stage), time(time) {}
    int stage;
    double time;
};

// Water depth fell below the configured floor at a quadrature point.
class DryStateError : public std::runtime_error {
public:
    DryStateError(const std::string& what, double x, double time)
        : std::runtime_error(what), x(x), time(time) {}
    double x;
    double time;
};

// The steady-state cubic has no admissible root on the requested branch
// (transcritical regime). critical_bottom is the smallest bottom height that
// still admits the branch.
class NoSteadyStateError : public std::runtime_error {
public:
    NoSteadyStateError(const std::string& what, double critical_bottom)
        : std::runtime_error(what), critical_bottom(critical_bottom) {}
    double critical_bottom;
};

} // namespace swfem
