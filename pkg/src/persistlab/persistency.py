"""Integer-side oracle and the weak/strong persistency checkers.

Weak persistency quantifies over every optimal LP point.  A coordinate of a
convex combination of points of ``[0,1]^n`` is integral only when it takes
that value in every participating vertex, so it suffices to check the
vertices of the optimal face.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded
from .exactlp import (DEFAULT_RAY_BUDGET, HPolytope, coordinate_bounds, enumerate_vertices,
                      format_rational, maximize, optimal_face)
from .graphs import Graph

STABLE_SEARCH_BUDGET = 24
WEAK = "weak"
STRONG = "strong"


@dataclass(frozen=True)
class StableSetList:
    sets: tuple
    value: Fraction

    def to_json(self):
        return {"sets": [list(s) for s in self.sets], "value": format_rational(self.value)}


def objective_dict(g_or_vars, c):
    """Normalize an objective (mapping or aligned sequence) to a label dict."""
    labels = g_or_vars.nodes if isinstance(g_or_vars, Graph) else tuple(g_or_vars)
    if isinstance(c, dict):
        unknown = set(c) - set(labels)
        if unknown:
            raise KeyError(sorted(unknown)[0])
        return {v: Fraction(c.get(v, 0)) for v in labels}
    c = list(c)
    if len(c) != len(labels):
        raise ValueError(f"objective has {len(c)} entries for {len(labels)} nodes")
    return {v: Fraction(x) for v, x in zip(labels, c)}


def max_weight_stable_sets(g: Graph, c, budget=STABLE_SEARCH_BUDGET) -> StableSetList:
    """Every c-maximal stable set, by branch and bound over the node order."""
    n = len(g.nodes)
    if n > budget:
        raise BudgetExceeded(f"{n} nodes exceed the stable set search budget of {budget}")
    w = objective_dict(g, c)
    nodes = g.nodes
    adj = g._adj
    # suffix sums of positive weights bound what the remaining nodes can add
    tail = [Fraction(0)] * (n + 1)
    for k in range(n - 1, -1, -1):
        tail[k] = tail[k + 1] + max(w[nodes[k]], 0)
    best = [None]
    found = []

    def grow(k, chosen, blocked, value):
        if best[0] is not None and value + tail[k] < best[0]:
            return
        if k == n:
            if best[0] is None or value > best[0]:
                best[0] = value
                found.clear()
            found.append(tuple(chosen))
            return
        v = nodes[k]
        if v not in blocked:
            chosen.append(v)
            grow(k + 1, chosen, blocked | adj[v], value + w[v])
            chosen.pop()
        grow(k + 1, chosen, blocked, value)

    grow(0, [], frozenset(), Fraction(0))
    idx = g._index
    sets = sorted(found, key=lambda s: [idx[v] for v in s])
    return StableSetList(tuple(sets), best[0])


@dataclass(frozen=True)
class PersistencyReport:
    mode: str
    holds: bool
    witness: Optional[dict] = None

    def to_json(self):
        return {"mode": self.mode, "holds": self.holds, "witness": self.witness}


def _pattern_json(pattern):
    return [{"node": v, "value": b} for v, b in pattern.items()]


def _point_json(point):
    return {v: format_rational(x) for v, x in point.items()}


def integer_pattern(point):
    """Coordinates of ``point`` equal to 0 or 1, as ``{label: 0 or 1}``."""
    return {v: int(x) for v, x in point.items() if x == 0 or x == 1}


def _integer_optima(g, c, cover, budget):
    """Optimal integer points as sets of labels with value 1."""
    w = objective_dict(g, c)
    if not cover:
        return [set(s) for s in max_weight_stable_sets(g, w, budget).sets]
    # vertex covers y = 1 - x: maximizing c.y over covers is maximizing -c.x over stable sets
    res = max_weight_stable_sets(g, {v: -x for v, x in w.items()}, budget)
    return [set(g.nodes) - set(s) for s in res.sets]


def _agrees(pattern, ones):
    return all((v in ones) == (b == 1) for v, b in pattern.items())


def check_weak_persistency(g: Graph, c, p: HPolytope, cover=False,
                           budget=STABLE_SEARCH_BUDGET,
                           vertex_budget=DEFAULT_RAY_BUDGET) -> PersistencyReport:
    """Every optimal LP vertex's integer pattern extends to an optimal integer point.

    With ``cover=True``, ``p`` is read as a vertex cover relaxation and the
    integer side ranges over optimal vertex covers.
    """
    if tuple(p.vars) != tuple(g.nodes):
        raise ValueError("polytope variables must match the graph's node order")
    optima = _integer_optima(g, c, cover, budget)
    face = optimal_face(p, objective_dict(g, c))
    for vertex in enumerate_vertices(face, vertex_budget):
        pattern = integer_pattern(vertex)
        if not any(_agrees(pattern, ones) for ones in optima):
            return PersistencyReport(WEAK, False, {
                "lp_vertex": _point_json(vertex),
                "fixed_pattern": _pattern_json(pattern),
                "reason": "no optimal integer point matches the integer coordinates "
                          "of this optimal LP vertex",
            })
    return PersistencyReport(WEAK, True)


def fixed_coordinates(p: HPolytope, c):
    """Coordinates that equal the same 0/1 value on the whole optimal face."""
    face = optimal_face(p, c)
    fixed = {}
    for v in p.vars:
        lo, hi = coordinate_bounds(face, v)
        if lo == hi and lo in (0, 1):
            fixed[v] = int(lo)
    return fixed


def check_strong_persistency(g: Graph, c, p: HPolytope, cover=False,
                             budget=STABLE_SEARCH_BUDGET) -> PersistencyReport:
    """Coordinates fixed on the LP optimal face are fixed the same way on all
    optimal integer points."""
    if tuple(p.vars) != tuple(g.nodes):
        raise ValueError("polytope variables must match the graph's node order")
    w = objective_dict(g, c)
    optima = _integer_optima(g, w, cover, budget)
    fixed = fixed_coordinates(p, w)
    bad = {v: b for v, b in fixed.items()
           if not all((v in ones) == (b == 1) for ones in optima)}
    if bad:
        vertex = maximize(p, w).witness
        return PersistencyReport(STRONG, False, {
            "lp_vertex": _point_json(vertex),
            "fixed_pattern": _pattern_json(bad),
            "reason": "fixed on every optimal LP point but not on every optimal "
                      "integer point",
        })
    return PersistencyReport(STRONG, True)


def vertex_cover_transform(p: HPolytope) -> HPolytope:
    """Image of ``p`` under ``x -> 1 - x``: each row ``a.x <= b`` becomes
    ``-a.y <= b - sum(a)``."""
    rows = tuple((tuple(-x for x in a), b - sum(a)) for a, b in p.rows)
    return HPolytope(p.vars, rows)
