"""Weak KAM toolkit for Hamilton-Jacobi equations on networks."""

from ._hjnet import (
    NumericalError,
    Scenario,
    ValidationError,
    analyze,
    asymptotics,
    distances,
    evolve,
    reparam_cost,
    semidistance,
    solve_eikonal,
)

__all__ = [
    "NumericalError",
    "Scenario",
    "ValidationError",
    "analyze",
    "asymptotics",
    "distances",
    "evolve",
    "reparam_cost",
    "semidistance",
    "solve_eikonal",
]
