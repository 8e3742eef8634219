"""Brute-force reference implementations used to cross-check the library.

Nothing here calls the simplex or the double description code: vertices come
from solving every square subsystem, cliques and cycles from subset and
permutation scans.
"""
from fractions import Fraction
from itertools import combinations, permutations


def solve_square(rows, rhs):
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(row[-1] for row in aug)


def basis_vertices(A, b):
    """All vertices of the bounded polyhedron ``A x <= b`` by basis enumeration."""
    n = len(A[0]) if A else 0
    found = set()
    for idx in combinations(range(len(A)), n):
        x = solve_square([A[i] for i in idx], [b[i] for i in idx])
        if x is None:
            continue
        if all(sum(Fraction(a) * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            found.add(x)
    return sorted(found)


def polytope_basis_vertices(p):
    return basis_vertices([list(a) for a, _ in p.rows], [r for _, r in p.rows])


def brute_max(p, c):
    """``max c.x`` over ``p`` via its vertex list, or None when empty."""
    verts = polytope_basis_vertices(p)
    if not verts:
        return None
    c = p.vector(c)
    return max(sum(ci * xi for ci, xi in zip(c, x)) for x in verts)


def brute_cliques(g, max_size):
    out = []
    for k in range(1, max_size + 1):
        for sub in combinations(g.nodes, k):
            if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                out.append(sub)
    return out


def brute_stable_sets(g):
    out = []
    for k in range(len(g.nodes) + 1):
        for sub in combinations(g.nodes, k):
            if g.is_stable(sub):
                out.append(sub)
    return out


def brute_chordless_odd_cycles(g, min_len=3):
    """Chordless odd cycles as frozensets of their nodes (a chordless cycle is
    determined by its node set)."""
    found = set()
    for k in range(min_len, len(g.nodes) + 1, 2):
        for sub in combinations(g.nodes, k):
            edges = [e for e in g.edges if e <= set(sub)]
            if len(edges) != k:
                continue
            first = sub[0]
            for perm in permutations(sub[1:]):
                cyc = (first,) + perm
                if all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                    found.add(frozenset(sub))
                    break
    return found


def brute_max_stable(g, c):
    """Best value and all optimal stable sets (as frozensets)."""
    best, sets = None, []
    for s in brute_stable_sets(g):
        val = sum((Fraction(c[v]) for v in s), Fraction(0))
        if best is None or val > best:
            best, sets = val, [frozenset(s)]
        elif val == best:
            sets.append(frozenset(s))
    return best, sets


def rank(rows):
    """Rank of a list of rational vectors by fraction-exact elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def is_vertex(A, b, x):
    """``x`` satisfies ``A x <= b`` and its tight rows have full column rank."""
    tight = []
    for row, bi in zip(A, b):
        lhs = sum(Fraction(a) * xi for a, xi in zip(row, x))
        if lhs > bi:
            return False
        if lhs == bi:
            tight.append(row)
    return rank(tight) == len(x)


def is_facet_of_hull(points, a, b):
    """``a.x <= b`` is valid for the 0/1 points and tight on dim+1 affinely
    independent ones, where dim is the affine dimension of the point set."""
    if any(sum(ai * pi for ai, pi in zip(a, p)) > b for p in points):
        return False
    lift = lambda p: [Fraction(1)] + [Fraction(v) for v in p]
    full = rank([lift(p) for p in points])
    tight = [lift(p) for p in points if sum(ai * pi for ai, pi in zip(a, p)) == b]
    return rank(tight) == full - 1
