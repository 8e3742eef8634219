"""Acceptance suite: one test per acceptance criterion.

Each test checks the library result against an independent route (brute
force enumeration, basis enumeration or a floating point LP solver) where
one exists.
"""
import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from persistlab.counterexample import (composite_polytope, construct_counterexample, eval_g,
                                       verify_counterexample)
from persistlab.exactlp import enumerate_vertices, same_polytope
from persistlab.graphs import (Graph, atlas_catalog, complete_graph, cycle_graph,
                               one_sum_graphs)
from persistlab.persistency import (check_strong_persistency, check_weak_persistency,
                                    fixed_coordinates, integer_pattern,
                                    vertex_cover_transform)
from persistlab.polytopes import (Inequality, check_condition, facet_inequalities,
                                  is_valid_inequality, one_sum_of_formulation,
                                  one_sum_polytopes, stable_set_polytope)
from persistlab.relaxations import EDGE, parse_formulation

from oracles import (brute_max_stable, brute_stable_sets, is_facet_of_hull, is_vertex,
                     polytope_basis_vertices)
from test_counterexample import float_lp, lp_side_oracle
from test_parametric import check_against_grid, check_structure, random_instance

F = Fraction
OC3 = parse_formulation("oddcycle:3")
OC5 = parse_formulation("oddcycle:5")
K2 = complete_graph("12")
K3 = complete_graph("ABC")
K4 = complete_graph("ABCD")
C5 = cycle_graph("12345")


@pytest.fixture(scope="module")
def pendant_example():
    return construct_counterexample(OC3, epsilon=F(1, 300), pendant_epsilon=F(1, 3),
                                    outer_graph=K4)


@pytest.fixture(scope="module")
def triangle_example():
    return construct_counterexample(OC5, epsilon=F(1, 20), outer_graph=K3)


def cheap_basis(p, limit=5000):
    return comb(len(p.rows), len(p.vars)) <= limit


def random_graph(rng, n):
    labels = [str(i + 1) for i in range(n)]
    edges = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.5]
    return Graph.from_edges(labels, edges)


def strong_oracle(g, c, p, cover=False):
    """Strong persistency from floating LP coordinate ranges and brute force."""
    best = float_lp(p, c)
    cvec = tuple(-x for x in p.vector(c))
    # slack 1e-9 moves a coordinate by at most 1e-9 / (objective gap), far below 1e-5
    keep = [(cvec, F(-best) + F(1, 10 ** 9))]
    fixed = {}
    for v in g.nodes:
        hi = float_lp(p, {v: 1}, keep)
        lo = -float_lp(p, {v: -1}, keep)
        for b in (0, 1):
            if abs(hi - b) < 1e-5 and abs(lo - b) < 1e-5:
                fixed[v] = b
    w = {v: (-x if cover else x) for v, x in c.items()}
    _, sets = brute_max_stable(g, w)
    ints = [set(g.nodes) - s for s in sets] if cover else sets
    return fixed, all(all((v in s) == (b == 1) for s in ints) for v, b in fixed.items())


def weak_oracle(g, c, p, cover=False):
    """Weak persistency from basis-enumerated vertices and brute force."""
    verts = [dict(zip(p.vars, x)) for x in polytope_basis_vertices(p)]
    val = lambda x: sum(c[v] * x[v] for v in p.vars)
    best = max(map(val, verts))
    w = {v: (-x if cover else x) for v, x in c.items()}
    _, sets = brute_max_stable(g, w)
    ints = [set(g.nodes) - s for s in sets] if cover else sets
    return all(any(all((v in s) == (b == 1) for v, b in integer_pattern(x).items())
                   for s in ints) for x in verts if val(x) == best)


def test_criterion_1_pendant_example_constants(pendant_example):
    b = pendant_example
    assert b.gadget.c_out == {"A'": F(1, 3), "A": F(5, 3), "B": 1, "C": 1, "D": 1}
    assert b.gadget.g_out.nodes[0] == "A'" and b.gadget.g_out.has_edge("A'", "A")
    assert (b.gamma, b.lambda_, b.epsilon_bound) == (F(1, 3), F(1, 9), F(1, 162))
    assert [b.g_function(z) for z in (0, F(2, 3), 1)] == [F(10, 3), F(31, 9), F(7, 2)]
    assert eval_g(OC3, b.inner, b.gadget, F(2, 3)) == F(31, 9)
    # second route: g(z) as a direct LP over the composite polytope
    p = composite_polytope(OC3, b.inner, b.gadget, b.attachments)
    c = {v: b.c_star[v] if v != "1" else 0 for v in p.vars}
    for z in (0, F(2, 3), 1):
        direct = float_lp(p, c, [(p.vector(b.inner.a), z)])
        assert direct == pytest.approx(float(b.g_function(z)), abs=1e-9)


def test_criterion_2_pendant_example_certificate(pendant_example):
    cert = verify_counterexample(pendant_example, OC3)
    assert cert.lp_side["node_bounds"] == ["0", "0"]
    assert cert.ip_side["optimal_sets"] == [["1", "A2", "A3"]]
    x = {v: F(q) for v, q in cert.lp_side["vertex"].items()}
    assert x["2"] == F(2, 3) and x["3"] == F(1, 3)
    assert all(x[v + "2"] == F(1, 3) for v in "ABCD")
    assert all(x[v + "3"] == F(1, 6) for v in "BCD")
    # pendant pairs: (x_2, x_A2) = (2/3, 1/3) and (x_3, x_A3) = (1/3, 2/3)
    assert (x["A2"], x["A3"]) == (F(1, 3), F(2, 3))
    assert cert.verdicts["weak"] == cert.verdicts["strong"] == "violated"
    p = OC3.build(pendant_example.g_star)
    best, top = lp_side_oracle(p, pendant_example.c_star, "1")
    assert best == pytest.approx(3.5) and top == pytest.approx(0, abs=1e-6)
    val, sets = brute_max_stable(pendant_example.g_star, pendant_example.c_star)
    assert sets == [frozenset({"1", "A2", "A3"})] and val == F(1001, 300)


def test_criterion_3_triangle_example_certificate(triangle_example):
    cert = verify_counterexample(triangle_example, OC5)
    x = cert.lp_side["vertex"]
    assert cert.lp_side["face_dimension"] == 0
    assert x["1"] == "0" and all(q == "1/2" for v, q in x.items() if v != "1")
    assert ["1", "B2", "B3", "B4", "B5"] in cert.ip_side["optimal_sets"]
    assert cert.verdicts["weak"] == cert.verdicts["strong"] == "violated"
    _, sets = brute_max_stable(triangle_example.g_star, triangle_example.c_star)
    assert frozenset({"1", "B2", "B3", "B4", "B5"}) in sets
    assert all("1" in s for s in sets)
    _, top = lp_side_oracle(OC5.build(triangle_example.g_star), triangle_example.c_star, "1")
    assert top == pytest.approx(0, abs=1e-6)


def test_criterion_4_edge_relaxation_is_persistent():
    rng = random.Random(20240)
    checked = weak_cross = 0
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 7))
        c = {v: F(rng.randint(-2, 6), rng.randint(1, 4)) for v in g.nodes}
        p = EDGE.build(g)
        q = vertex_cover_transform(p)
        for poly, cover in ((p, False), (q, True)):
            # the cover instance minimizes the same weights
            cc = {v: -x for v, x in c.items()} if cover else c
            assert check_weak_persistency(g, cc, poly, cover).holds
            assert check_strong_persistency(g, cc, poly, cover).holds
            fixed, ok = strong_oracle(g, cc, poly, cover)
            assert ok and fixed == fixed_coordinates(poly, cc)
            if cheap_basis(poly):
                assert weak_oracle(g, cc, poly, cover)
                weak_cross += 1
        checked += 1
    assert checked >= 200 and weak_cross >= 100


CONDITION_BATTERY = [K3, C5, K4, one_sum_graphs(K2, "2", K3, "A")[0],
                     one_sum_graphs(K3, "C", C5, "1")[0]]
JOIN_BATTERY = [(K2, "2", K3, "A"), (K3, "A", complete_graph("XYZ"), "X"),
                (C5, "1", K3, "A")]


def condition_row(f):
    return tuple(all(check_condition(f, cond, g).holds for g in CONDITION_BATTERY)
                 for cond in "AB") + (
        all(check_condition(f, "C", inst).holds for inst in JOIN_BATTERY),)


def test_criterion_5_condition_matrix_and_necessity_examples():
    for name in ("edge", "clique", "oddcycle:3", "oddcycle:5", "intersect:edge+clique"):
        assert condition_row(parse_formulation(name)) == (True, True, True), name
    necA, necB, necC = map(parse_formulation, ("necA", "necB", "necC"))
    assert condition_row(necA) == (False, True, True)
    assert condition_row(necB) == (True, False, True)
    assert condition_row(necC) == (True, True, False)
    wit = check_condition(necA, "A", K3).witness
    assert Inequality.from_json(wit["inequality"]) == Inequality({"A": 5, "B": 5, "C": 5}, 7)
    assert not check_condition(necB, "B", one_sum_graphs(K2, "2", K3, "A")[0]).holds
    assert not check_condition(necC, "C", (K2, "2", K3, "A")).holds
    rng = random.Random(515)
    for f in (necA, necB, necC):
        samples = 0
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 6))
            c = {v: F(rng.randint(-1, 5), rng.randint(1, 3)) for v in g.nodes}
            p = f.build(g)
            assert check_weak_persistency(g, c, p).holds
            assert check_strong_persistency(g, c, p).holds
            if cheap_basis(p, 2000):
                assert weak_oracle(g, c, p)
            samples += 1
        assert samples >= 100


def test_criterion_6_wheel_formulation():
    ring = "12345"
    w5 = Graph.from_edges("123456", [(ring[k], ring[(k + 1) % 5]) for k in range(5)]
                          + [(v, "6") for v in ring])
    p = parse_formulation("w5").build(w5)
    assert p.contains({"1": 1, "2": 0, "3": 0, "4": 0, "5": 0, "6": F(1, 2)})
    assert not is_valid_inequality(p, Inequality({"1": 1, "6": 1}, 1))
    verts = polytope_basis_vertices(p)
    assert max(x[0] + x[5] for x in verts) > 1
    for i in ring:
        assert is_valid_inequality(p, Inequality({i: 2, "6": 2}, 3))
        k = int(i) - 1
        assert max(2 * x[k] + 2 * x[5] for x in verts) <= 3
    want = {tuple(int(v in s) for v in w5.nodes) for s in brute_stable_sets(w5)}
    got = {x for x in product((0, 1), repeat=6) if p.contains(dict(zip(w5.nodes, x)))}
    assert got == want


def test_criterion_7_defect_inequality_on_all_connected_graphs():
    checked = 0
    for g in atlas_catalog(7):
        points = [[int(v in s) for v in g.nodes] for s in brute_stable_sets(g)]
        for ineq in facet_inequalities(stable_set_polytope(g)):
            a = ineq.as_dict()
            if len(a) == 1:
                continue  # bounds, including x_v <= 1 on the one-node graph
            if len(a) == 2 and ineq.rhs == 1 and g.has_edge(*a) and set(a.values()) == {1}:
                continue
            coeffs = list(a.values())
            assert max(coeffs) <= sum(coeffs) - 2 * ineq.rhs, str(ineq)
            if checked % 7 == 0:
                assert is_facet_of_hull(points, ineq.vector(g.nodes), ineq.rhs)
            checked += 1
    assert checked >= 500


def test_criterion_8_parametric_matches_grid_oracle():
    for seed in range(100):
        eq, le = check_against_grid(*random_instance(random.Random(8000 + seed)))
        check_structure(eq, le)


def test_criterion_9_property_suite():
    small = [g for g in atlas_catalog(5, connected=False) if g.nodes]
    # 1-sums of stable set polytopes, at most 6 nodes in the sum
    pairs = 0
    for g1 in small[::2]:
        for g2 in small[1::3]:
            if len(g1.nodes) + len(g2.nodes) - 1 > 6:
                continue
            copy = Graph.from_edges([v + "'" for v in g2.nodes],
                                    [(u + "'", v + "'") for u, v in g2.edge_list()])
            v1, v2 = g1.nodes[-1], copy.nodes[0]
            g, mapping = one_sum_graphs(g1, v1, copy, v2)
            s = one_sum_polytopes(stable_set_polytope(g1), v1,
                                  stable_set_polytope(copy).renamed(mapping), v1)
            assert same_polytope(s, stable_set_polytope(g)), (g1, g2)
            verts = sorted(tuple(x[v] for v in s.vars) for x in enumerate_vertices(s))
            stable = sorted(tuple(F(int(v in st)) for v in s.vars)
                            for st in brute_stable_sets(g))
            assert verts == stable
            pairs += 1
    assert pairs >= 50
    # reverse inclusion f(g1) (+) f(g2) inside f(g1 (+) g2) for the registry
    for name in ("edge", "clique", "oddcycle:3", "oddcycle:5", "intersect:edge+clique",
                 "stable", "necA", "necC"):
        f = parse_formulation(name)
        for inst in JOIN_BATTERY:
            _, left, right = one_sum_of_formulation(f, *inst)
            assert all(is_valid_inequality(right, ineq) for ineq in facet_inequalities(left))
    _, left, right = one_sum_of_formulation(parse_formulation("necB"), K2, "2", K3, "A")
    assert not all(is_valid_inequality(right, ineq) for ineq in facet_inequalities(left))
    # half-integral edge relaxation vertices on every graph with at most 7 nodes
    half = {F(0), F(1, 2), F(1)}
    graphs = atlas_catalog(7, connected=False)
    assert len(graphs) == 1252
    for k, g in enumerate(graphs):
        p = EDGE.build(g)
        A = [list(a) for a, _ in p.rows]
        b = [r for _, r in p.rows]
        for x in enumerate_vertices(p):
            assert set(x.values()) <= half
            if k % 5 == 0:
                assert is_vertex(A, b, [x[v] for v in p.vars])
