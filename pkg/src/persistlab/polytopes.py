"""Stable set polytopes, 1-sums of polytopes, validity and facet tests, and
the checkers for the three structural conditions on formulations.

Condition checks need a formulation object with a ``build(graph)`` method
(see ``relaxations.Formulation``).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, InfeasibleError, NameCollision, NotValid, UnknownNode
from .exactlp import (HPolytope, affine_dimension, canonical_row, format_rational,
                      hull_facets, irredundant_system, maximize, parse_rational,
                      row_sort_key)
from .graphs import Graph, enumerate_stable_sets, induced_subgraph, one_sum_graphs

STABLE_SET_BUDGET = 10


@dataclass(frozen=True)
class Inequality:
    """``sum coeffs[v] * x_v <= rhs``, scaled to coprime integers.

    ``coeffs`` is a tuple of ``(label, coefficient)`` pairs with nonzero
    coefficients, in the order the labels were given.
    """

    coeffs: tuple
    rhs: Fraction

    def __post_init__(self):
        pairs = self.coeffs.items() if isinstance(self.coeffs, dict) else self.coeffs
        pairs = [(str(v), Fraction(c)) for v, c in pairs]
        if len({v for v, _ in pairs}) != len(pairs):
            raise ValueError("repeated label in inequality")
        pairs = [(v, c) for v, c in pairs if c]
        a, b = canonical_row([c for _, c in pairs], Fraction(self.rhs))
        object.__setattr__(self, "coeffs", tuple((v, c) for (v, _), c in zip(pairs, a)))
        object.__setattr__(self, "rhs", b)

    @classmethod
    def from_row(cls, vars, coeffs, rhs):
        return cls(tuple(zip(vars, coeffs)), rhs)

    def as_dict(self):
        return dict(self.coeffs)

    def support(self):
        return tuple(v for v, _ in self.coeffs)

    def vector(self, vars):
        d = self.as_dict()
        unknown = set(d) - set(vars)
        if unknown:
            raise UnknownNode(sorted(unknown)[0])
        return tuple(d.get(v, Fraction(0)) for v in vars)

    def value(self, point):
        return sum((c * Fraction(point[v]) for v, c in self.coeffs), Fraction(0))

    def is_bound(self):
        return len(self.coeffs) == 1 and self.coeffs[0][1] < 0 and self.rhs == 0

    def __str__(self):
        out = ""
        for v, c in self.coeffs:
            mag = "" if abs(c) == 1 else format_rational(abs(c))
            if out:
                out += " - " if c < 0 else " + "
            elif c < 0:
                out = "-"
            out += f"{mag}x_{v}"
        return f"{out or '0'} <= {format_rational(self.rhs)}"

    def to_json(self):
        return {"coeffs": {v: format_rational(c) for v, c in self.coeffs},
                "rhs": format_rational(self.rhs)}

    @classmethod
    def from_json(cls, data):
        if set(data) != {"coeffs", "rhs"}:
            raise ValueError(f"unexpected inequality keys: {sorted(data)}")
        return cls(tuple((v, parse_rational(c)) for v, c in data["coeffs"].items()),
                   parse_rational(data["rhs"]))


def facet_inequalities(p: HPolytope):
    """Irredundant inequality rows of ``p`` as ``Inequality`` objects."""
    facets, _ = irredundant_system(p)
    return [Inequality.from_row(p.vars, a, b) for a, b in facets]


def stable_set_polytope(g: Graph, budget=STABLE_SET_BUDGET) -> HPolytope:
    """Facet description of the convex hull of stable set indicators."""
    n = len(g.nodes)
    if n > budget:
        raise BudgetExceeded(f"stable set polytope of {n} nodes exceeds the budget of {budget}")
    if n == 0:
        return HPolytope((), ())
    idx = g._index
    points = []
    for s in enumerate_stable_sets(g):
        pt = [0] * n
        for v in s:
            pt[idx[v]] = 1
        points.append(pt)
    rows = []
    for a, delta in hull_facets(points, n):
        if any(a):
            rows.append(canonical_row(a, delta))
    rows.sort(key=row_sort_key)
    return HPolytope(g.nodes, tuple(rows))


def one_sum_polytopes(p: HPolytope, i, q: HPolytope, j) -> HPolytope:
    """Rows of ``p`` and of ``q`` with ``y_j`` replaced by ``x_i``."""
    p.index(i)
    jq = q.index(j)
    others = [v for v in q.vars if v != j]
    clash = set(others) & set(p.vars)
    if clash:
        raise NameCollision(f"variables {sorted(clash)} occur in both polytopes")
    vars = p.vars + tuple(others)
    pad = (Fraction(0),) * len(others)
    rows = [(a + pad, b) for a, b in p.rows]
    ip = p.index(i)
    for a, b in q.rows:
        head = [Fraction(0)] * len(p.vars)
        head[ip] = a[jq]
        tail = tuple(c for k, c in enumerate(a) if k != jq)
        rows.append((tuple(head) + tail, b))
    return HPolytope(vars, tuple(rows))


def violation_witness(p: HPolytope, ineq: Inequality):
    """A point of ``p`` maximizing the left-hand side if it exceeds ``rhs``, else None."""
    res = maximize(p, ineq.vector(p.vars))
    if res.optimal and res.value > ineq.rhs:
        return res.witness
    return None


def is_valid_inequality(p: HPolytope, ineq: Inequality) -> bool:
    return violation_witness(p, ineq) is None


def is_facet_defining(p: HPolytope, ineq: Inequality) -> bool:
    if not is_valid_inequality(p, ineq):
        raise NotValid(f"{ineq} is not valid for the polytope")
    dim = affine_dimension(p)
    if dim < 0:
        raise InfeasibleError("facet test on an empty polytope")
    face = p.with_equation(ineq.vector(p.vars), ineq.rhs)
    return affine_dimension(face) == dim - 1


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    holds: bool
    witness: Optional[dict] = None

    def to_json(self):
        return {"condition": self.condition, "holds": self.holds, "witness": self.witness}


def _restricted(ineq, sub):
    return Inequality.from_row(sub.nodes, ineq.vector(sub.nodes), ineq.rhs)


def _condition_a(f, g):
    for ineq in facet_inequalities(f.build(g)):
        sub = induced_subgraph(g, ineq.support())
        local = _restricted(ineq, sub)
        pstab = stable_set_polytope(sub)
        ok = is_valid_inequality(pstab, local) and is_facet_defining(pstab, local)
        if not ok:
            return ConditionReport("A", False, {"inequality": ineq.to_json(),
                                                "graph": sub.to_json()})
    return ConditionReport("A", True)


def _condition_b(f, g):
    for ineq in facet_inequalities(f.build(g)):
        sub = induced_subgraph(g, ineq.support())
        point = violation_witness(f.build(sub), _restricted(ineq, sub))
        if point is not None:
            return ConditionReport("B", False, {"inequality": ineq.to_json(),
                                                "graph": sub.to_json(),
                                                "point": _point_json(point)})
    return ConditionReport("B", True)


def one_sum_of_formulation(f, g1, v1, g2, v2):
    """``(f(g1 (+) g2), f(g1) (+) f(g2))`` on the variables of the 1-sum graph."""
    g, mapping = one_sum_graphs(g1, v1, g2, v2)
    left = f.build(g)
    right = one_sum_polytopes(f.build(g1), v1, f.build(g2).renamed(mapping), v1)
    order = [right.index(v) for v in left.vars]
    right = HPolytope(left.vars, tuple((tuple(a[k] for k in order), b) for a, b in right.rows))
    return g, left, right


def _condition_c(f, g1, v1, g2, v2):
    g, left, right = one_sum_of_formulation(f, g1, v1, g2, v2)
    for ineq in facet_inequalities(right):
        point = violation_witness(left, ineq)
        if point is not None:
            return ConditionReport("C", False, {"inequality": ineq.to_json(),
                                                "graph": g.to_json(),
                                                "point": _point_json(point)})
    return ConditionReport("C", True)


def _point_json(point):
    return {v: format_rational(x) for v, x in point.items()}


def check_condition(f, cond, instance) -> ConditionReport:
    """Check Condition ``A``, ``B`` (instance: a graph) or ``C`` (instance:
    ``(g1, v1, g2, v2)``) for the formulation ``f``."""
    if cond == "A":
        return _condition_a(f, instance)
    if cond == "B":
        return _condition_b(f, instance)
    if cond == "C":
        return _condition_c(f, *instance)
    raise ValueError(f"unknown condition {cond!r}")
