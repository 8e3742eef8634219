"""Exact rational simplex for ``max c.x  s.t.  A x <= b`` with free ``x``.

The variables are pivoted into the basis first and never leave it, which
leaves an ordinary nonnegative LP over the slack variables.  Phase one uses a
single artificial column; both phases follow Bland's rule on the canonical
column order (variables first, then slacks in row order), so the returned
witness is a deterministic vertex.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import UnboundedError
from .hpolytope import HPolytope

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction = None
    witness: dict = field(default=None)

    @property
    def optimal(self):
        return self.status == OPTIMAL


def _q(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _pivot(T, obj, r, k):
    row = T[r]
    piv = row[k]
    if piv != 1:
        inv = Fraction(1) / piv
        row = [v * inv if v else 0 for v in row]
        T[r] = row
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r:
            f = other[k]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
    f = obj[k]
    if f:
        for j in nz:
            obj[j] -= f * row[j]


def _iterate(T, obj, basis, active, allowed):
    """Run Bland-rule pivots until no improving column is left.

    Returns False when an improving column has no bounding row.
    """
    while True:
        in_basis = set(basis)
        k = next((j for j in allowed if obj[j] < 0 and j not in in_basis), None)
        if k is None:
            return True
        best = None
        for i in active:
            a = T[i][k]
            if a > 0:
                ratio = T[i][-1] / Fraction(a)
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        r = best[1]
        _pivot(T, obj, r, k)
        basis[r] = k


def solve(A, b, c):
    """Solve the LP on raw coefficient lists.

    Returns ``(status, value, x)`` with ``x`` a list of Fractions.
    """
    m, n = len(A), len(c)
    width = n + m + 2
    art = n + m
    T = []
    for i in range(m):
        row = [_q(v) for v in A[i]] + [0] * (m + 1) + [_q(b[i])]
        row[n + i] = 1
        T.append(row)
    basis = [n + i for i in range(m)]
    free = [False] * m
    obj = [0] * width
    for j in range(n):
        r = next((i for i in range(m) if not free[i] and T[i][j] != 0), None)
        if r is None:
            if c[j]:
                raise UnboundedError(f"variable {j} is unconstrained")
            continue
        _pivot(T, obj, r, j)
        basis[r] = j
        free[r] = True
    x_unbound = [j for j in range(n) if j not in basis]

    active = [i for i in range(m) if not free[i]]
    if any(T[i][-1] < 0 for i in active):
        for i in active:
            T[i][art] = -1
        r = min((i for i in active if T[i][-1] < 0), key=lambda i: (T[i][-1], basis[i]))
        obj = [0] * width
        obj[art] = 1
        _pivot(T, obj, r, art)
        basis[r] = art
        allowed = list(range(n, n + m + 1))
        _iterate(T, obj, basis, active, allowed)
        if obj[-1] < 0:
            return INFEASIBLE, None, None
        if art in basis:
            r = basis.index(art)
            k = next((j for j in range(n, n + m) if T[r][j] and j not in basis), None)
            if k is None:
                del T[r], basis[r], free[r]
                active = [i for i in range(len(T)) if not free[i]]
            else:
                _pivot(T, obj, r, k)
                basis[r] = k
        for row in T:
            row[art] = 0

    obj = [0] * width
    for j in range(n):
        obj[j] = -_q(c[j])
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            row = T[i]
            for j, v in enumerate(row):
                if v:
                    obj[j] -= f * v
    if not _iterate(T, obj, basis, active, list(range(n, n + m))):
        raise UnboundedError("LP is unbounded")
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        if bj < n:
            x[bj] = Fraction(T[i][-1])
    for j in x_unbound:
        x[j] = Fraction(0)
    return OPTIMAL, Fraction(obj[-1]), x


def maximize(p: HPolytope, c) -> LpResult:
    """Maximize ``c`` over ``p`` exactly; ``c`` is a mapping or aligned sequence."""
    cvec = p.vector(c)
    A = [row[0] for row in p.rows]
    b = [row[1] for row in p.rows]
    status, value, x = solve(A, b, cvec)
    if status == INFEASIBLE:
        return LpResult(INFEASIBLE)
    return LpResult(OPTIMAL, value, dict(zip(p.vars, x)))


def minimize(p: HPolytope, c) -> LpResult:
    cvec = p.vector(c)
    res = maximize(p, [-v for v in cvec])
    if not res.optimal:
        return res
    return LpResult(OPTIMAL, -res.value, res.witness)
