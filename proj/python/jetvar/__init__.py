"""Bindings for the jetvar engine: problem runs, the task catalog and a few direct queries."""

from ._jetvar import (
    SpecError,
    list_tasks,
    mode_solve,
    quadratic_dimension,
    regularity_determinant,
    run,
    upsilon_determinant,
)

__all__ = [
    "SpecError",
    "list_tasks",
    "mode_solve",
    "quadratic_dimension",
    "regularity_determinant",
    "run",
    "upsilon_determinant",
]
