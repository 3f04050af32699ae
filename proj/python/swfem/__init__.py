"""Galerkin finite element methods for the 1D shallow water equations over
variable bottom: spline spaces, characteristic boundary conditions, RK time
stepping, and the study drivers behind the swfem command-line tool."""

from ._core import (
    FemSpace,
    Mesh,
    __version__,
    converge,
    gauss_rule,
    interpolate,
    l2_project,
    run_simulation,
    steady_preservation,
    steady_profile,
    wellbalance,
)

__all__ = [
    "FemSpace",
    "Mesh",
    "__version__",
    "converge",
    "gauss_rule",
    "interpolate",
    "l2_project",
    "run_simulation",
    "steady_preservation",
    "steady_profile",
    "wellbalance",
]
