"""Face computations built on the exact simplex: optimal faces, affine
dimension, coordinate ranges, vertex lists and irredundant systems."""
from fractions import Fraction

from ..errors import InfeasibleError, UnboundedError
from . import dd
from .hpolytope import HPolytope, dot
from .rational import primitive_integer_row
from .simplex import INFEASIBLE, maximize, solve


def optimal_face(p: HPolytope, c) -> HPolytope:
    """``p`` with ``c.x = max`` appended as two opposite rows."""
    cvec = p.vector(c)
    res = maximize(p, cvec)
    if not res.optimal:
        raise InfeasibleError("optimal face of an empty polytope")
    if not any(cvec):
        return p
    return p.with_equation(cvec, res.value)


def implicit_equalities(p: HPolytope):
    """Indices of rows satisfied with equality by every point of ``p``.

    Returns ``None`` when ``p`` is empty.  Each round solves one LP that
    maximizes the total (capped) slack of the candidate rows; rows that get
    positive slack are strict somewhere and leave the candidate set.
    """
    n = len(p.vars)
    A = [list(a) for a, _ in p.rows]
    b = [rhs for _, rhs in p.rows]
    status, _, _ = solve(A, b, [0] * n)
    if status == INFEASIBLE:
        return None
    candidates = list(range(len(p.rows)))
    while candidates:
        k = len(candidates)
        pos = {i: t for t, i in enumerate(candidates)}
        rows, rhs = [], []
        for i, (a, bi) in enumerate(p.rows):
            ext = [0] * k
            if i in pos:
                ext[pos[i]] = 1
            rows.append(list(a) + ext)
            rhs.append(bi)
        for t in range(k):
            lo = [0] * (n + k)
            lo[n + t] = -1
            rows.append(lo)
            rhs.append(0)
            hi = [0] * (n + k)
            hi[n + t] = 1
            rows.append(hi)
            rhs.append(1)
        status, value, y = solve(rows, rhs, [0] * n + [1] * k)
        if value == 0:
            return candidates
        strict = {i for i in candidates if y[n + pos[i]] > 0}
        candidates = [i for i in candidates if i not in strict]
    return []


def _rank(vectors):
    echelon = []
    for v in vectors:
        vec = [Fraction(x) for x in v]
        for col, erow in echelon:
            f = vec[col]
            if f:
                vec = [a - f * b for a, b in zip(vec, erow)]
        col = next((j for j, x in enumerate(vec) if x), None)
        if col is not None:
            piv = vec[col]
            echelon.append((col, [x / piv for x in vec]))
    return len(echelon)


def affine_dimension(p: HPolytope) -> int:
    """Dimension of the affine hull of ``p``; ``-1`` when empty."""
    eq = implicit_equalities(p)
    if eq is None:
        return -1
    return len(p.vars) - _rank([p.rows[i][0] for i in eq])


def coordinate_bounds(p: HPolytope, var):
    """Exact ``(min, max)`` of one coordinate over ``p``."""
    j = p.index(var)
    e = [0] * len(p.vars)
    e[j] = 1
    hi = maximize(p, e)
    if not hi.optimal:
        raise InfeasibleError("coordinate bounds of an empty polytope")
    e[j] = -1
    lo = maximize(p, e)
    return -lo.value, hi.value


def enumerate_vertices(p: HPolytope, budget=dd.DEFAULT_RAY_BUDGET):
    """All vertices of ``p`` as dicts, deduplicated and sorted lexicographically."""
    return [dict(zip(p.vars, v)) for v in dd.polytope_vertices(p, budget)]


def _rref(rows):
    """Reduced row echelon form of equation rows ``(a, b)`` (a, b Fractions)."""
    echelon = []
    for a, b in rows:
        vec = [Fraction(x) for x in a] + [Fraction(b)]
        for col, erow in echelon:
            f = vec[col]
            if f:
                vec = [x - f * y for x, y in zip(vec, erow)]
        col = next((j for j, x in enumerate(vec[:-1]) if x), None)
        if col is None:
            continue
        piv = vec[col]
        vec = [x / piv for x in vec]
        for k, (c2, erow) in enumerate(echelon):
            f = erow[col]
            if f:
                echelon[k] = (c2, [x - f * y for x, y in zip(erow, vec)])
        echelon.append((col, vec))
    echelon.sort()
    return echelon


def canonical_row(coeffs, rhs):
    """Scale to coprime integers by a positive factor."""
    ints = primitive_integer_row(list(coeffs) + [rhs])
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def row_sort_key(row):
    coeffs, rhs = row
    support = tuple(i for i, c in enumerate(coeffs) if c)
    lower_bound = len(support) == 1 and coeffs[support[0]] < 0 and rhs == 0
    return (0 if lower_bound else 1, len(support), support,
            tuple(-c for c in coeffs), rhs)


def irredundant_system(p: HPolytope):
    """``(facets, equations)`` of ``p``: both lists of canonical ``(a, b)`` rows.

    Facet rows are ``a.x <= b``; equation rows are ``a.x = b``.
    """
    eq_idx = implicit_equalities(p)
    if eq_idx is None:
        raise InfeasibleError("cannot remove redundancies of an empty polytope")
    echelon = _rref([p.rows[i] for i in eq_idx])
    eq_rows = []
    for col, vec in echelon:
        a, b = canonical_row(vec[:-1], vec[-1])
        lead = next(x for x in a if x)
        if lead < 0:
            a, b = tuple(-x for x in a), -b
        eq_rows.append((a, b))
    eq_set = set(eq_idx)
    seen = set()
    ineqs = []
    for i, (a, b) in enumerate(p.rows):
        if i in eq_set:
            continue
        vec = [Fraction(x) for x in a] + [Fraction(b)]
        for col, erow in echelon:
            f = vec[col]
            if f:
                vec = [x - f * y for x, y in zip(vec, erow)]
        if not any(vec[:-1]):
            continue
        row = canonical_row(vec[:-1], vec[-1])
        if row not in seen:
            seen.add(row)
            ineqs.append(row)
    ineqs.sort(key=row_sort_key)
    eq_pairs = []
    for a, b in eq_rows:
        eq_pairs.append((a, b))
        eq_pairs.append((tuple(-x for x in a), -b))
    kept = list(ineqs)
    for row in ineqs:
        others = eq_pairs + [r for r in kept if r is not row]
        A = [list(r[0]) for r in others]
        bb = [r[1] for r in others]
        try:
            status, value, _ = solve(A, bb, list(row[0]))
        except UnboundedError:
            continue
        if status == "optimal" and value <= row[1]:
            kept = [r for r in kept if r is not row]
    return kept, eq_rows


def remove_redundancies(p: HPolytope) -> HPolytope:
    """Irredundant description of ``p``.

    Implicit equalities are replaced by a reduced echelon basis (emitted as
    opposite row pairs, first nonzero coefficient positive); every other row is
    reduced modulo those equations, scaled to coprime integers, deduplicated and
    kept only if dropping it would enlarge the polytope.  Remaining rows are
    therefore facet-defining and appear in canonical order.
    """
    kept, eq_rows = irredundant_system(p)
    eq_pairs = []
    for a, b in eq_rows:
        eq_pairs.append((a, b))
        eq_pairs.append((tuple(-x for x in a), -b))
    return HPolytope(p.vars, tuple(kept) + tuple(eq_pairs))


def same_polytope(p: HPolytope, q: HPolytope) -> bool:
    """Set equality by row-wise validity in both directions (same variables)."""
    if p.vars != q.vars:
        q = HPolytope(p.vars, tuple((tuple(dict(zip(q.vars, a))[v] for v in p.vars), b)
                                   for a, b in q.rows))
    return contained_in(p, q) and contained_in(q, p)


def contained_in(p: HPolytope, q: HPolytope) -> bool:
    """Whether ``p`` is a subset of ``q`` (every row of ``q`` valid over ``p``)."""
    for a, b in q.rows:
        res = maximize(p, a)
        if not res.optimal:
            return True
        if res.value > b:
            return False
    return True


def row_value(row, point):
    return dot(row[0], point)
