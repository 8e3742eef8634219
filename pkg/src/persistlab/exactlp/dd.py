"""Double description method on integer data.

``extreme_rays`` computes the extreme rays of a pointed cone
``{y : M y <= 0}``.  Vertex enumeration homogenises ``A x <= b`` into such a
cone; facet enumeration dualises a point set into the cone of valid
inequalities.  Rays are kept as primitive integer tuples and adjacency is
decided combinatorially on bitsets of tight constraints.
"""
from fractions import Fraction
from math import gcd

from ..errors import DimensionTooLarge
from .rational import primitive_integer_row

DEFAULT_RAY_BUDGET = 200_000


def _primitive(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _independent_rows(M, d):
    """Greedily pick ``d`` linearly independent rows of ``M`` (row order)."""
    chosen = []
    echelon = []  # list of (pivot column, reduced row)
    for idx, row in enumerate(M):
        vec = [Fraction(v) for v in row]
        for col, erow in echelon:
            f = vec[col]
            if f:
                vec = [a - f * b for a, b in zip(vec, erow)]
        col = next((j for j, v in enumerate(vec) if v), None)
        if col is None:
            continue
        piv = vec[col]
        vec = [v / piv for v in vec]
        echelon.append((col, vec))
        chosen.append(idx)
        if len(chosen) == d:
            break
    return chosen


def _inverse(B):
    d = len(B)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(B)]
    for col in range(d):
        piv = next(r for r in range(col, d) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def _dot(row, ray):
    return sum(a * b for a, b in zip(row, ray) if a)


def extreme_rays(M, d, budget=DEFAULT_RAY_BUDGET):
    """Extreme rays of the pointed cone ``{y in R^d : M y <= 0}``.

    ``M`` is a list of integer rows.  Returns primitive integer tuples in a
    deterministic (sorted) order.  Raises ``ValueError`` if the cone is not
    pointed and ``DimensionTooLarge`` if the intermediate ray count exceeds
    ``budget``.
    """
    M = [tuple(int(v) for v in row) for row in M]
    if d == 0:
        return []
    init = _independent_rows(M, d)
    if len(init) < d:
        raise ValueError("cone is not pointed (constraint matrix rank deficient)")
    inv = _inverse([M[i] for i in init])
    rays = []
    zsets = []
    for k in range(d):
        col = [-inv[r][k] for r in range(d)]
        ray = _primitive(primitive_integer_row(col))
        rays.append(ray)
        z = 0
        for pos, i in enumerate(init):
            if pos != k:
                z |= 1 << i
        zsets.append(z)
    processed = set(init)
    order = [i for i in range(len(M)) if i not in processed]
    for h in order:
        row = M[h]
        bit = 1 << h
        vals = [_dot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if not pos:
            for i, v in enumerate(vals):
                if v == 0:
                    zsets[i] |= bit
            continue
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = []
        new_z = []
        if neg:
            for p in pos:
                zp = zsets[p]
                for q in neg:
                    common = zp & zsets[q]
                    if common.bit_count() < d - 2:
                        continue
                    adjacent = True
                    for r, zr in enumerate(zsets):
                        if r != p and r != q and common & zr == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vp, vq = vals[p], vals[q]
                    ray = _primitive([vp * a - vq * b for a, b in zip(rays[q], rays[p])])
                    new_rays.append(ray)
                    new_z.append(common | bit)
        keep = neg + zero
        rays = [rays[i] for i in keep] + new_rays
        zsets = [zsets[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_z
        if len(rays) > budget:
            raise DimensionTooLarge(
                f"double description exceeded {budget} rays after {len(processed) + 1} rows")
        processed.add(h)
    return sorted(set(rays))


def _integer_rows(rows):
    """Integer rows ``(a, -b)`` for the homogenised inequalities ``a x - b t <= 0``."""
    out = []
    for coeffs, rhs in rows:
        out.append(primitive_integer_row(list(coeffs) + [-rhs]))
    return out


def polytope_vertices(p, budget=DEFAULT_RAY_BUDGET):
    """Vertices of a bounded H-polytope as tuples of Fractions, sorted."""
    n = len(p.vars)
    M = _integer_rows(p.rows)
    M.append(tuple([0] * n + [-1]))
    if n == 0:
        return [()] if all(b >= 0 for _, b in p.rows) else []
    rays = extreme_rays(M, n + 1, budget)
    verts = []
    for ray in rays:
        t = ray[-1]
        if t == 0:
            raise ValueError("polyhedron is unbounded")
        verts.append(tuple(Fraction(v, t) for v in ray[:-1]))
    return sorted(set(verts))


def hull_facets(points, n, budget=DEFAULT_RAY_BUDGET):
    """Facets ``(a, delta)`` of the full-dimensional hull of ``points`` in R^n.

    Each facet is returned as a primitive integer row ``a`` and integer
    ``delta`` with ``a . x <= delta`` valid for every point.
    """
    M = []
    for pt in points:
        M.append(primitive_integer_row(list(pt) + [-1]))
    rays = extreme_rays(M, n + 1, budget)
    return [(ray[:-1], ray[-1]) for ray in rays]
