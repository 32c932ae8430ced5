"""Exact linear inequalities: simplex feasibility, Fourier–Motzkin, parametric elimination."""

from .fm import fm_eliminate, projection_feasible, prune
from .parametric import Cell, Interval, ParamRow, ParamSystem, parametric_eliminate
from .poly import AlgebraicNumber, Poly, isolate_roots, parse_poly, real_roots
from .simplex import feasible
from .system import Feasible, Infeasible, LinearSystem, Row

__all__ = [
    "AlgebraicNumber", "Cell", "Feasible", "Infeasible", "Interval", "LinearSystem",
    "ParamRow", "ParamSystem", "Poly", "Row", "feasible", "fm_eliminate", "isolate_roots",
    "parametric_eliminate", "parse_poly", "projection_feasible", "prune", "real_roots",
]
