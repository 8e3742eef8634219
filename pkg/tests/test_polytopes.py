from fractions import Fraction

import pytest

from persistlab.errors import BudgetExceeded, NameCollision, NotValid
from persistlab.exactlp import HPolytope, enumerate_vertices, same_polytope
from persistlab.graphs import (Graph, atlas_catalog, complete_graph, cycle_graph,
                               one_sum_graphs, path_graph)
from persistlab.polytopes import (Inequality, check_condition, facet_inequalities,
                                  is_facet_defining, is_valid_inequality,
                                  one_sum_of_formulation, one_sum_polytopes,
                                  stable_set_polytope, violation_witness)
from persistlab.relaxations import EDGE, parse_formulation

from oracles import brute_stable_sets, polytope_basis_vertices

F = Fraction
K2 = complete_graph("12")
K3 = complete_graph("ABC")
C5 = cycle_graph("12345")


def rows_as_text(p):
    return sorted(str(Inequality.from_row(p.vars, a, b)) for a, b in p.rows)


def test_inequality_canonical_form():
    ineq = Inequality({"A": F(1, 2), "B": F(1, 2), "C": 0}, F(7, 10))
    assert ineq.coeffs == (("A", 5), ("B", 5))
    assert str(ineq) == "5x_A + 5x_B <= 7"
    assert str(Inequality({"A": -3}, 0)) == "-x_A <= 0"
    assert Inequality.from_json(ineq.to_json()) == ineq
    with pytest.raises(ValueError):
        Inequality((("A", 1), ("A", 2)), 1)


def test_pstab_k2_and_k3():
    assert rows_as_text(stable_set_polytope(K2)) == ["-x_1 <= 0", "-x_2 <= 0",
                                                    "x_1 + x_2 <= 1"]
    assert rows_as_text(stable_set_polytope(K3)) == ["-x_A <= 0", "-x_B <= 0", "-x_C <= 0",
                                                    "x_A + x_B + x_C <= 1"]


def test_pstab_c5():
    texts = rows_as_text(stable_set_polytope(C5))
    assert "x_1 + x_2 + x_3 + x_4 + x_5 <= 2" in texts
    assert len(texts) == 11


def test_pstab_isolated_node_has_upper_bound():
    p = stable_set_polytope(Graph.from_edges("a"))
    assert rows_as_text(p) == ["-x_a <= 0", "x_a <= 1"]


def test_pstab_budget():
    with pytest.raises(BudgetExceeded):
        stable_set_polytope(path_graph("abcdef"), budget=5)


@pytest.mark.parametrize("g", atlas_catalog(6, connected=False)[::4], ids=lambda g: g.to_text())
def test_pstab_vertices_are_stable_sets(g):
    p = stable_set_polytope(g)
    want = sorted(tuple(F(int(v in s)) for v in g.nodes) for s in brute_stable_sets(g))
    got = sorted(tuple(v[x] for x in p.vars) for v in enumerate_vertices(p))
    assert got == want
    if len(p.rows) <= 14:
        assert polytope_basis_vertices(p) == want


def test_validity_and_facets():
    pk3 = stable_set_polytope(K3)
    clique = Inequality({"A": 1, "B": 1, "C": 1}, 1)
    assert is_valid_inequality(pk3, clique) and is_facet_defining(pk3, clique)
    edge = Inequality({"A": 1, "B": 1}, 1)
    assert is_valid_inequality(pk3, edge) and not is_facet_defining(pk3, edge)
    weak = Inequality({"A": 5, "B": 5, "C": 5}, 7)
    assert is_valid_inequality(pk3, weak) and not is_facet_defining(pk3, weak)
    relax = EDGE.build(K3)
    assert violation_witness(relax, clique) == {"A": F(1, 2), "B": F(1, 2), "C": F(1, 2)}
    with pytest.raises(NotValid):
        is_facet_defining(relax, clique)


def test_facet_inequalities_of_relaxation():
    facets = facet_inequalities(EDGE.build(K3))
    assert len(facets) == 6


def test_one_sum_polytopes_example():
    q = stable_set_polytope(complete_graph("AB"))
    s = one_sum_polytopes(stable_set_polytope(K2), "2", q, "A")
    assert s.vars == ("1", "2", "B")
    g, _ = one_sum_graphs(K2, "2", complete_graph("AB"), "A")
    assert same_polytope(s, stable_set_polytope(g))
    with pytest.raises(NameCollision):
        one_sum_polytopes(q, "A", q, "A")


def test_conditions_on_standard_formulations():
    inst = (K2, "2", K3, "A")
    for name in ("edge", "clique", "oddcycle:3", "oddcycle:5", "intersect:edge+clique"):
        f = parse_formulation(name)
        assert check_condition(f, "A", K3).holds
        assert check_condition(f, "B", K3).holds
        assert check_condition(f, "C", inst).holds


def test_necessity_formulations_fail_their_condition():
    inst = (K2, "2", K3, "A")
    g, _ = one_sum_graphs(*inst)
    necA, necB, necC = (parse_formulation(k) for k in ("necA", "necB", "necC"))
    rep = check_condition(necA, "A", K3)
    assert not rep.holds and rep.witness["inequality"]["rhs"] == "7"
    assert check_condition(necA, "B", K3).holds and check_condition(necA, "C", inst).holds
    rep = check_condition(necB, "B", g)
    assert not rep.holds
    assert sorted(rep.witness["graph"]["nodes"]) == ["2", "B", "C"]
    assert check_condition(necB, "A", g).holds and check_condition(necB, "C", inst).holds
    rep = check_condition(necC, "C", inst)
    assert not rep.holds and "point" in rep.witness
    assert check_condition(necC, "A", g).holds and check_condition(necC, "B", g).holds
    with pytest.raises(ValueError):
        check_condition(necC, "D", K3)


def test_one_sum_of_formulation_shares_variables():
    g, left, right = one_sum_of_formulation(EDGE, K2, "2", K3, "A")
    assert left.vars == right.vars == g.nodes
    assert same_polytope(left, right)
