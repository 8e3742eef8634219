"""Registry of stable set formulations.

A formulation is a rule taking a graph to an H-polytope over its node labels.
Every polytope built here contains the nonnegativity rows in node order,
then ``x_v <= 1`` for isolated nodes, then the family's rows.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedGraph
from .exactlp import HPolytope, canonical_row, irredundant_system
from .graphs import (Graph, enumerate_chordless_odd_cycles, enumerate_cliques,
                     is_triangle)
from .polytopes import STABLE_SET_BUDGET, Inequality, stable_set_polytope

KINDS = ("edge", "clique", "oddcycle", "intersect", "stable", "w5", "necA", "necB", "necC")


@dataclass(frozen=True)
class Generator:
    """A row of a built formulation together with where it came from."""

    inequality: Inequality
    family: str
    nodes: tuple

    def to_json(self):
        return {"family": self.family, "nodes": list(self.nodes),
                "inequality": self.inequality.to_json()}


@dataclass(frozen=True)
class Formulation:
    kind: str
    min_len: int = 3
    members: tuple = ()
    budget: int = STABLE_SET_BUDGET

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown formulation {self.kind!r}")
        if self.kind == "oddcycle" and (self.min_len < 3 or self.min_len % 2 == 0):
            raise ValueError("odd cycle length bound must be odd and at least 3")
        if self.kind == "intersect" and not self.members:
            raise ValueError("an intersection needs at least one member")

    @property
    def name(self):
        if self.kind == "oddcycle":
            return f"oddcycle:{self.min_len}"
        if self.kind == "intersect":
            return "intersect:" + "+".join(m.name for m in self.members)
        return self.kind

    def __str__(self):
        return self.name

    def build(self, g: Graph) -> HPolytope:
        if self.kind == "stable":
            return stable_set_polytope(g, self.budget)
        if self.kind in ("necB", "necC"):
            edge_side = (self.kind == "necB") == is_triangle(g)
            return (EDGE if edge_side else Formulation("stable", budget=self.budget)).build(g)
        if self.kind == "intersect":
            return _intersection(self, g)
        rows = _base_rows(g, self._family_rows(g))
        return HPolytope(g.nodes, tuple(rows))

    def list_generators(self, g: Graph):
        """Non-box rows of ``build(g)`` tagged with family and generating nodes."""
        if self.kind == "stable":
            return [Generator(ineq, "facet", ineq.support())
                    for ineq in _rows_to_inequalities(self.build(g)) if not _is_box(ineq)]
        if self.kind in ("necB", "necC"):
            edge_side = (self.kind == "necB") == is_triangle(g)
            inner = EDGE if edge_side else Formulation("stable", budget=self.budget)
            return inner.list_generators(g)
        if self.kind == "intersect":
            pool = {}
            for m in self.members:
                for gen in m.list_generators(g):
                    pool.setdefault(_key(gen.inequality, g.nodes), gen)
            out = []
            for ineq in _rows_to_inequalities(self.build(g)):
                if not _is_box(ineq):
                    out.append(pool[_key(ineq, g.nodes)])
            return out
        return [Generator(Inequality.from_row(g.nodes, a, b), fam, nodes)
                for a, b, fam, nodes in self._family_rows(g)]

    def _family_rows(self, g):
        idx = g._index
        n = len(g.nodes)

        def row(nodes, coeff, rhs, family):
            a = [Fraction(0)] * n
            for v in nodes:
                a[idx[v]] = Fraction(coeff)
            return tuple(a), Fraction(rhs), family, tuple(nodes)

        if self.kind == "edge":
            return [row(e, 1, 1, "edge") for e in g.edge_list()]
        if self.kind == "clique":
            return [row(c, 1, 1, "clique") for c in enumerate_cliques(g, max(n, 1))
                    if len(c) >= 2]
        if self.kind == "oddcycle":
            rows = [row(e, 1, 1, "edge") for e in g.edge_list()]
            for cyc in enumerate_chordless_odd_cycles(g, self.min_len):
                rows.append(row(cyc, 1, Fraction(len(cyc) - 1, 2), "oddcycle"))
            return rows
        if self.kind == "necA":
            rows = [row(e, 1, 1, "edge") for e in g.edge_list()]
            for c in enumerate_cliques(g, 3):
                if len(c) == 3:
                    rows.append(row(c, 5, 7, "triangle"))
            return rows
        if self.kind == "w5":
            _require_w5(g)
            a = [Fraction(1)] * n
            a[idx["6"]] = Fraction(2)
            rows = [(tuple(a), Fraction(2), "w5", tuple(g.nodes))]
            ring = ["1", "2", "3", "4", "5"]
            for k in range(5):
                u, v = ring[k], ring[(k + 1) % 5]
                rows.append(row([u, v], 1, 1, "edge"))
            return rows
        raise AssertionError(self.kind)


EDGE = Formulation("edge")


def _require_w5(g):
    ring = ["1", "2", "3", "4", "5"]
    want = {frozenset((ring[k], ring[(k + 1) % 5])) for k in range(5)}
    want |= {frozenset((v, "6")) for v in ring}
    if set(g.nodes) != set(ring + ["6"]) or set(g.edges) != want:
        raise UnsupportedGraph("the W5 formulation is defined only for the wheel on "
                               "cycle 1-2-3-4-5 with center 6")


def _base_rows(g, family_rows):
    n = len(g.nodes)
    rows = []
    for k in range(n):
        a = [Fraction(0)] * n
        a[k] = Fraction(-1)
        rows.append((tuple(a), Fraction(0)))
    for k, v in enumerate(g.nodes):
        if not g._adj[v]:
            a = [Fraction(0)] * n
            a[k] = Fraction(1)
            rows.append((tuple(a), Fraction(1)))
    rows += [(a, b) for a, b, _, _ in family_rows]
    return rows


def _intersection(f, g):
    rows = []
    for m in f.members:
        rows += list(m.build(g).rows)
    facets, eqs = irredundant_system(HPolytope(g.nodes, tuple(rows)))
    pairs = []
    for a, b in eqs:
        pairs += [(a, b), (tuple(-x for x in a), -b)]
    return HPolytope(g.nodes, tuple(facets) + tuple(pairs))


def _rows_to_inequalities(p):
    return [Inequality.from_row(p.vars, a, b) for a, b in p.rows]


def _is_box(ineq):
    if len(ineq.coeffs) != 1:
        return False
    c = ineq.coeffs[0][1]
    return (c < 0 and ineq.rhs == 0) or (c > 0 and ineq.rhs == c)


def _key(ineq, vars):
    return canonical_row(ineq.vector(vars), ineq.rhs)


def parse_formulation(text: str) -> Formulation:
    """Parse ``edge``, ``clique``, ``oddcycle:K``, ``intersect:F+G``, ``stable``,
    ``w5``, ``necA``, ``necB`` or ``necC``."""
    text = text.strip()
    if text.startswith("intersect:"):
        parts = [p for p in text[len("intersect:"):].split("+")]
        if not all(parts):
            raise ValueError(f"bad intersection spec {text!r}")
        return Formulation("intersect", members=tuple(parse_formulation(p) for p in parts))
    if text.startswith("oddcycle:"):
        arg = text[len("oddcycle:"):]
        if not arg.isdigit():
            raise ValueError(f"bad odd cycle spec {text!r}")
        return Formulation("oddcycle", min_len=int(arg))
    if text in ("edge", "clique", "stable", "w5", "necA", "necB", "necC"):
        return Formulation(text)
    raise ValueError(f"unknown formulation spec {text!r}")


def build(f: Formulation, g: Graph) -> HPolytope:
    return f.build(g)


def list_generators(f: Formulation, g: Graph):
    return f.list_generators(g)
