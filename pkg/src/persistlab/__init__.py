"""Exact-rational LP relaxations of the stable set problem, persistency
checks, and the construction of counterexamples to persistency."""
from .graphs import Graph, parse_graph
from .exactlp import HPolytope, PiecewiseLinearConcave, maximize
from .relaxations import Formulation, parse_formulation
from .polytopes import Inequality, check_condition, stable_set_polytope
from .persistency import check_strong_persistency, check_weak_persistency

__version__ = "0.1.0"

__all__ = [
    "Formulation", "Graph", "HPolytope", "Inequality", "PiecewiseLinearConcave",
    "check_condition", "check_strong_persistency", "check_weak_persistency", "maximize",
    "parse_formulation", "parse_graph", "stable_set_polytope",
]
