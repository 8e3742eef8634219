"""Parametric value functions ``beta -> max {c.x : x in P, a.x = beta}``.

The graph of the equality-constrained value function is the upper boundary of
the two-dimensional projection ``{(a.x, c.x) : x in P}``.  It is traced with
exact LPs by recursive refinement: for two known boundary points, the LP in
the upward normal direction of the chord either certifies the chord as an edge
or yields a new boundary point between them.
"""
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InfeasibleError
from .hpolytope import HPolytope, dot
from .rational import format_rational, parse_rational
from .simplex import maximize

EQ = "eq"
LE = "le"


@dataclass(frozen=True)
class PiecewiseLinearConcave:
    """Concave piecewise linear function given by its breakpoints.

    The domain is ``[breakpoints[0].arg, breakpoints[-1].arg]``; with
    ``constant_tail`` the last value extends to ``+inf``.
    """

    breakpoints: tuple
    constant_tail: bool = False

    def __post_init__(self):
        pts = tuple((Fraction(a), Fraction(v)) for a, v in self.breakpoints)
        if not pts:
            raise ValueError("a piecewise linear function needs at least one breakpoint")
        for (a0, _), (a1, _) in zip(pts, pts[1:]):
            if not a0 < a1:
                raise ValueError("breakpoint arguments must be strictly increasing")
        slopes = _slopes(pts)
        for s0, s1 in zip(slopes, slopes[1:]):
            if not s0 > s1:
                raise ValueError("slopes must be strictly decreasing")
        object.__setattr__(self, "breakpoints", pts)

    @property
    def domain_start(self):
        return self.breakpoints[0][0]

    @property
    def domain_end(self):
        return None if self.constant_tail else self.breakpoints[-1][0]

    def slopes(self):
        s = _slopes(self.breakpoints)
        if self.constant_tail:
            s.append(Fraction(0))
        return s

    def __call__(self, y):
        y = Fraction(y)
        pts = self.breakpoints
        if y < pts[0][0]:
            raise ValueError(f"{y} is left of the domain start {pts[0][0]}")
        if y >= pts[-1][0]:
            if y == pts[-1][0] or self.constant_tail:
                return pts[-1][1]
            raise ValueError(f"{y} is right of the domain end {pts[-1][0]}")
        for (a0, v0), (a1, v1) in zip(pts, pts[1:]):
            if a0 <= y <= a1:
                return v0 + (v1 - v0) * (y - a0) / (a1 - a0)
        raise AssertionError("unreachable")

    def argmax(self):
        """Smallest maximizer (the argument where the function stops increasing)."""
        best = max(v for _, v in self.breakpoints)
        return next(a for a, v in self.breakpoints if v == best)

    def has_unique_maximizer(self):
        best = max(v for _, v in self.breakpoints)
        tops = [a for a, v in self.breakpoints if v == best]
        if len(tops) > 1:
            return False
        return not (self.constant_tail and self.breakpoints[-1][1] == best)

    def to_json(self):
        return {
            "breakpoints": [[format_rational(a), format_rational(v)]
                            for a, v in self.breakpoints],
            "constant_tail": self.constant_tail,
        }

    @classmethod
    def from_json(cls, data):
        return cls(tuple((parse_rational(a), parse_rational(v))
                         for a, v in data["breakpoints"]),
                   bool(data.get("constant_tail", False)))


def _slopes(pts):
    return [(v1 - v0) / (a1 - a0) for (a0, v0), (a1, v1) in zip(pts, pts[1:])]


def _project(avec, cvec, x):
    return dot(avec, x), dot(cvec, x)


def _vec(p, values):
    return [values[v] for v in p.vars]


def upper_chain(p: HPolytope, c, a):
    """Vertices of the upper boundary of the projection, left to right."""
    cvec, avec = p.vector(c), p.vector(a)
    lo = maximize(p, [-v for v in avec])
    if not lo.optimal:
        raise InfeasibleError("parametric LP over an empty polytope")
    ell = -lo.value
    left = maximize(p.with_equation(avec, ell), cvec)
    hi = maximize(p, avec)
    right = maximize(p.with_equation(avec, hi.value), cvec)
    L = (ell, left.value)
    R = (hi.value, right.value)
    if L[0] == R[0]:
        return [L]

    def refine(P1, P2):
        w_a = -(P2[1] - P1[1])
        w_c = P2[0] - P1[0]
        direction = [w_a * x + w_c * y for x, y in zip(avec, cvec)]
        res = maximize(p, direction)
        base = w_a * P1[0] + w_c * P1[1]
        if res.value <= base:
            return []
        mid = _project(avec, cvec, _vec(p, res.witness))
        return refine(P1, mid) + [mid] + refine(mid, P2)

    return [L] + refine(L, R) + [R]


def parametric_max(p: HPolytope, c, a, mode=EQ) -> PiecewiseLinearConcave:
    """Exact breakpoint form of ``h^=`` (mode ``eq``) or ``h^<=`` (mode ``le``).

    Both start at ``min a.x``.  ``h^=`` ends at ``max a.x``; ``h^<=`` follows
    ``h^=`` up to its smallest maximizer and is constant afterwards.
    """
    if mode not in (EQ, LE):
        raise ValueError(f"mode must be 'eq' or 'le', got {mode!r}")
    chain = upper_chain(p, c, a)
    if mode == EQ:
        return PiecewiseLinearConcave(tuple(chain), constant_tail=False)
    best = max(v for _, v in chain)
    cut = next(i for i, (_, v) in enumerate(chain) if v == best)
    return PiecewiseLinearConcave(tuple(chain[:cut + 1]), constant_tail=True)
