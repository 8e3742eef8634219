"""Exact rational linear programming over H-polytopes."""
from .dd import DEFAULT_RAY_BUDGET, extreme_rays, hull_facets
from .faces import (affine_dimension, canonical_row, contained_in, coordinate_bounds,
                    enumerate_vertices, implicit_equalities, irredundant_system,
                    optimal_face,
                    remove_redundancies, row_sort_key, same_polytope)
from .hpolytope import HPolytope, dot
from .parametric import EQ, LE, PiecewiseLinearConcave, parametric_max, upper_chain
from .rational import format_rational, parse_rational, primitive_integer_row
from .simplex import INFEASIBLE, OPTIMAL, LpResult, maximize, minimize

__all__ = [
    "DEFAULT_RAY_BUDGET", "EQ", "HPolytope", "INFEASIBLE", "LE", "LpResult", "OPTIMAL",
    "PiecewiseLinearConcave", "affine_dimension", "canonical_row", "contained_in",
    "coordinate_bounds", "dot", "enumerate_vertices", "extreme_rays", "format_rational",
    "hull_facets", "implicit_equalities", "irredundant_system", "maximize", "minimize", "optimal_face",
    "parametric_max", "parse_rational", "primitive_integer_row", "remove_redundancies",
    "row_sort_key", "same_polytope", "upper_chain",
]
