"""Construction and verification of a graph and objective on which a
formulation strictly between the edge relaxation and the stable set polytope
loses persistency.

Pipeline: an outer gadget (a graph whose relaxation optimum is unique and
puts at least 1/2 on a node that some optimal stable set avoids), an inner
core (a node-minimal graph where the formulation cuts the edge relaxation),
the 1-sum ``G*`` of the core with copies of the gadget, the objective ``c*``,
and the bound on ``eps`` below which every LP optimum has ``x_1 = 0`` while
every optimal stable set contains node 1.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (BudgetExceeded, NoCore, NotSeparable, PreconditionViolated,
                     UnsupportedGraph, VerificationFailed)
from .exactlp import (DEFAULT_RAY_BUDGET, EQ, LE, HPolytope, PiecewiseLinearConcave,
                      affine_dimension, coordinate_bounds, enumerate_vertices,
                      format_rational, irredundant_system, maximize, optimal_face,
                      parametric_max, same_polytope)
from .graphs import Graph, atlas_catalog, disjoint_copy, one_sum_graphs
from .persistency import (check_strong_persistency, check_weak_persistency,
                          max_weight_stable_sets, objective_dict)
from .polytopes import (Inequality, facet_inequalities, is_valid_inequality,
                        one_sum_polytopes, stable_set_polytope)
from .relaxations import EDGE, Formulation

MAX_HALVINGS = 64


def _q(x):
    return format_rational(x)


def _point_json(point):
    return {v: _q(x) for v, x in point.items()}


def _face_dim(p, c):
    return affine_dimension(optimal_face(p, c))


def refine_objective(p: HPolytope, q: HPolytope, c):
    """Perturb ``c`` until ``opt(q, c')`` is a vertex while ``opt(p, c')`` is not.

    Requires ``dim opt(q, c) < dim opt(p, c)``.  Each round picks a facet
    normal (or affine-hull normal) of ``opt(p, c')`` that is not constant on
    ``opt(q, c')`` and adds a halved multiple of it to ``c'``.
    """
    if tuple(p.vars) != tuple(q.vars):
        raise PreconditionViolated("both polytopes must share the variable order")
    cur = list(p.vector(c))
    dq, dp = _face_dim(q, cur), _face_dim(p, cur)
    if not dq < dp:
        raise PreconditionViolated(
            f"optimal face dimensions {dq} (q) and {dp} (p) violate dim q < dim p")
    while dq > 0:
        face_p = optimal_face(p, cur)
        face_q = optimal_face(q, cur)
        facets, eqs = irredundant_system(face_p)
        candidates = [list(a) for a, _ in facets]
        for a, _ in eqs:
            candidates += [list(a), [-x for x in a]]
        step = None
        for u in candidates:
            hi = maximize(face_q, u).value
            lo = -maximize(face_q, [-x for x in u]).value
            if hi == lo:
                continue
            t = Fraction(1)
            for _ in range(MAX_HALVINGS):
                trial = [x + t * y for x, y in zip(cur, u)]
                nq = _face_dim(q, trial)
                if nq < dq and nq < _face_dim(p, trial):
                    step = trial, nq
                    break
                t /= 2
            if step:
                break
        if step is None:
            raise PreconditionViolated("no perturbation direction reduced the face dimension")
        cur, dq = step
    return dict(zip(p.vars, cur))


@dataclass(frozen=True)
class OuterGadget:
    g_out: Graph
    c_out: dict
    v_out: str
    xhat: dict
    xbar: dict
    f_peak: tuple
    pendant_epsilon: Fraction = None
    facet: Inequality = None
    alternates: tuple = ()

    def to_json(self):
        return {
            "graph": self.g_out.to_json(),
            "c_out": _point_json(self.c_out),
            "v_out": self.v_out,
            "xhat": _point_json(self.xhat),
            "xbar": _point_json(self.xbar),
            "f_peak": [_q(self.f_peak[0]), _q(self.f_peak[1])],
            "pendant_epsilon": None if self.pendant_epsilon is None
            else _q(self.pendant_epsilon),
            "facet": None if self.facet is None else self.facet.to_json(),
            "alternate_nodes": list(self.alternates),
        }


def _unique_optimum(p, c):
    face = optimal_face(p, c)
    if affine_dimension(face) != 0:
        return None
    return maximize(p, c).witness


def _indicator(g, s):
    s = set(s)
    return {v: Fraction(int(v in s)) for v in g.nodes}


def _pendant_label(g, u):
    new = u + "'"
    while new in g:
        new += "'"
    return new


def build_outer_gadget(f: Formulation, g: Graph, pendant_epsilon=None) -> OuterGadget:
    """Gadget from a graph on which ``f`` is weaker than the stable set polytope."""
    relax = f.build(g)
    pstab = stable_set_polytope(g)
    facet = next((ineq for ineq in facet_inequalities(pstab)
                  if not is_valid_inequality(relax, ineq)), None)
    if facet is None:
        raise NotSeparable(f"{f} equals the stable set polytope on this graph")
    c = refine_objective(pstab, relax, facet.as_dict())
    xhat = _unique_optimum(relax, c)
    optima = max_weight_stable_sets(g, c).sets
    split = [v for v in g.nodes
             if any(v in s for s in optima) and any(v not in s for s in optima)]
    if not split:
        raise VerificationFailed("outer_gadget", "optimal stable sets do not disagree")
    u = split[0]
    if xhat[u] >= Fraction(1, 2):
        without = next(s for s in optima if u not in s)
        return _finish_gadget(f, g, c, u, xhat, _indicator(g, without), None, facet,
                              tuple(split[1:]))
    u2 = _pendant_label(g, u)
    g2 = Graph.from_edges((u2,) + g.nodes, g.edge_list() + [(u, u2)])
    relax2 = f.build(g2)
    candidates = ([Fraction(pendant_epsilon)] if pendant_epsilon is not None
                  else [Fraction(1, 2 ** k) for k in range(1, MAX_HALVINGS + 1)])
    for eps in candidates:
        c2 = dict(c)
        c2[u] = c[u] + 2 * eps
        c2[u2] = eps
        c2 = {v: c2[v] for v in g2.nodes}
        x2 = _unique_optimum(relax2, c2)
        if x2 is None or not x2[u2] > Fraction(1, 2):
            continue
        without = [s for s in max_weight_stable_sets(g2, c2).sets if u2 not in s]
        if not without:
            continue
        return _finish_gadget(f, g2, c2, u2, x2, _indicator(g2, without[0]), eps, facet,
                              tuple(split[1:]))
    raise VerificationFailed("pendant_epsilon", "no candidate pendant weight was certified")


def _finish_gadget(f, g, c, v, xhat, xbar, eps, facet, alternates):
    func = _f_function(f, g, c, v)
    peak = func.argmax()
    if peak != xhat[v] or not func.has_unique_maximizer():
        raise VerificationFailed("f_peak", f"f peaks at {peak}, expected {xhat[v]}")
    return OuterGadget(g, dict(c), v, dict(xhat), xbar, (peak, func(peak)), eps, facet,
                       alternates)


def _f_function(f, g, c, v):
    p = f.build(g)
    return parametric_max(p, c, {v: 1}, EQ)


def default_outer_graph(f: Formulation, catalog=None) -> Graph:
    """First catalog graph on which ``f`` differs from the stable set polytope."""
    if catalog is None:
        catalog = atlas_catalog(7, connected=True, labels="letters")
    for g in catalog:
        try:
            if not same_polytope(f.build(g), stable_set_polytope(g)):
                return g
        except (UnsupportedGraph, BudgetExceeded):
            continue
    raise NotSeparable(f"{f} equals the stable set polytope on every catalog graph")


def eval_f(f: Formulation, gadget: OuterGadget, y) -> Fraction:
    p = f.build(gadget.g_out).with_equation({gadget.v_out: 1}, Fraction(y))
    res = maximize(p, gadget.c_out)
    if not res.optimal:
        raise ValueError(f"y = {y} is outside the feasible range of the gadget node")
    return res.value


def f_function(f: Formulation, gadget: OuterGadget) -> PiecewiseLinearConcave:
    return _f_function(f, gadget.g_out, gadget.c_out, gadget.v_out)


@dataclass(frozen=True)
class InnerCore:
    g_in: Graph
    g_in_edge: Graph
    system: tuple
    node_one: str

    @property
    def a(self):
        return self.system[0].as_dict()

    @property
    def b1(self):
        return self.system[0].rhs

    def to_json(self):
        return {"graph": self.g_in.to_json(), "graph_edge": self.g_in_edge.to_json(),
                "system": [ineq.to_json() for ineq in self.system],
                "node_one": self.node_one}


def find_inner_core(f: Formulation, catalog=None) -> InnerCore:
    """First catalog graph on which ``f`` differs from the edge relaxation."""
    if catalog is None:
        catalog = atlas_catalog(7, connected=True, labels="digits")
    for g in catalog:
        try:
            relax = f.build(g)
        except (UnsupportedGraph, BudgetExceeded):
            continue
        edge = EDGE.build(g)
        if same_polytope(relax, edge):
            continue
        return _core_from(f, g, relax, edge)
    raise NoCore(f"{f} equals the edge relaxation on every catalog graph")


def _core_from(f, g, relax, edge):
    kept = [(u, v) for u, v in g.edge_list()
            if is_valid_inequality(relax, Inequality({u: 1, v: 1}, 1))]
    g_edge = Graph.from_edges(g.nodes, kept)
    system = tuple(ineq for ineq in facet_inequalities(relax)
                   if not is_valid_inequality(edge, ineq))
    if not system:
        raise VerificationFailed("inner_system", "no facet of the core cuts the edge relaxation")
    for ineq in system:
        d = ineq.as_dict()
        if any(d.get(v, 0) < 1 for v in g.nodes):
            raise VerificationFailed("full_support", f"row {ineq} lacks full support")
    if len(g.nodes) < 3:
        raise VerificationFailed("inner_size", "the inner core has fewer than 3 nodes")
    return InnerCore(g, g_edge, system, g.nodes[0])


def assemble_gstar(inner: InnerCore, gadget: OuterGadget):
    """``G*`` and, per attached inner node, the map from gadget labels to ``G*`` labels."""
    if len(inner.g_in.nodes) < 3:
        raise PreconditionViolated("the inner core needs at least 3 nodes")
    g = inner.g_in
    attachments = {}
    for j in inner.g_in.nodes:
        if j == inner.node_one:
            continue
        copy, iso = disjoint_copy(gadget.g_out, j)
        g, merge = one_sum_graphs(g, j, copy, iso[gadget.v_out])
        attachments[j] = {v: merge[iso[v]] for v in gadget.g_out.nodes}
    return g, attachments


def objective_cstar(inner: InnerCore, gadget: OuterGadget, g_star: Graph, attachments, eps):
    a = inner.a
    c = {v: Fraction(0) for v in g_star.nodes}
    c[inner.node_one] = Fraction(eps)
    for j, m in attachments.items():
        for v, w in m.items():
            c[w] = a[j] * gadget.c_out[v]
    return c


def composite_polytope(f: Formulation, inner: InnerCore, gadget: OuterGadget, attachments):
    """Edge relaxation of the filtered core with the gadget relaxations 1-summed on."""
    p = EDGE.build(inner.g_in_edge)
    q = f.build(gadget.g_out)
    for j, m in attachments.items():
        p = one_sum_polytopes(p, j, q.renamed(m), j)
    return p


def g_function(f: Formulation, inner: InnerCore, gadget: OuterGadget) -> PiecewiseLinearConcave:
    g_star, attachments = assemble_gstar(inner, gadget)
    p = composite_polytope(f, inner, gadget, attachments)
    c = objective_cstar(inner, gadget, g_star, attachments, 0)
    c = {v: c[v] for v in p.vars}
    return parametric_max(p, c, inner.a, LE)


def eval_g(f: Formulation, inner: InnerCore, gadget: OuterGadget, z) -> Fraction:
    return g_function(f, inner, gadget)(Fraction(z))


def compute_epsilon(inner: InnerCore, gadget: OuterGadget, g_star_polytope: HPolytope,
                    g_func: PiecewiseLinearConcave, epsilon=None,
                    budget=DEFAULT_RAY_BUDGET):
    """``(gamma, lambda, epsilon_bound, epsilon)`` for the assembled instance.

    The default ``epsilon`` is half the bound.  An explicit positive override
    is accepted even at or above the bound, which is only sufficient; such
    bundles are flagged and rest on the independent certificate alone.
    """
    one = inner.node_one
    positive = [v[one] for v in enumerate_vertices(g_star_polytope, budget) if v[one] > 0]
    if not positive:
        raise VerificationFailed("gamma", "no vertex has a positive coordinate at node 1")
    gamma = min(positive)
    lam = min(gamma / sum(c for _, c in ineq.coeffs) for ineq in inner.system)
    a1, b1 = inner.a[one], inner.b1
    bound = lam * (g_func(b1) - g_func(b1 - a1 * gamma))
    if not bound > 0:
        raise VerificationFailed("epsilon_bound", f"non-positive bound {bound}")
    if epsilon is None:
        epsilon = bound / 2
    epsilon = Fraction(epsilon)
    if not epsilon > 0:
        raise PreconditionViolated(f"epsilon must be positive, got {epsilon}")
    return gamma, lam, bound, epsilon


@dataclass(frozen=True)
class CounterexampleBundle:
    formulation: Formulation
    inner: InnerCore
    gadget: OuterGadget
    attachments: dict
    g_star: Graph
    c_star: dict
    gamma: Fraction
    lambda_: Fraction
    epsilon_bound: Fraction
    epsilon: Fraction
    g_function: PiecewiseLinearConcave

    @property
    def within_bound(self):
        return 0 < self.epsilon < self.epsilon_bound

    def to_json(self):
        return {
            "formulation": self.formulation.name,
            "inner": self.inner.to_json(),
            "gadget": self.gadget.to_json(),
            "attachments": {j: m for j, m in self.attachments.items()},
            "g_star": self.g_star.to_json(),
            "c_star": _point_json(self.c_star),
            "gamma": _q(self.gamma),
            "lambda": _q(self.lambda_),
            "epsilon_bound": _q(self.epsilon_bound),
            "epsilon": _q(self.epsilon),
            "within_bound": self.within_bound,
            "g_function": self.g_function.to_json(),
        }


def construct_counterexample(f: Formulation, epsilon=None, pendant_epsilon=None,
                             outer_graph=None, inner_catalog=None,
                             budget=DEFAULT_RAY_BUDGET) -> CounterexampleBundle:
    """Run the whole construction for ``f``."""
    if outer_graph is None:
        outer_graph = default_outer_graph(f)
    gadget = build_outer_gadget(f, outer_graph, pendant_epsilon)
    inner = find_inner_core(f, inner_catalog)
    g_star, attachments = assemble_gstar(inner, gadget)
    g_func = g_function(f, inner, gadget)
    polytope = f.build(g_star)
    gamma, lam, bound, eps = compute_epsilon(inner, gadget, polytope, g_func, epsilon, budget)
    c_star = objective_cstar(inner, gadget, g_star, attachments, eps)
    return CounterexampleBundle(f, inner, gadget, attachments, g_star, c_star, gamma, lam,
                                bound, eps, g_func)


@dataclass(frozen=True)
class Certificate:
    formulation: str
    g_star: Graph
    c_star: dict
    node_one: str
    lp_side: dict
    ip_side: dict
    verdicts: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "formulation": self.formulation,
            "g_star": self.g_star.to_json(),
            "c_star": _point_json(self.c_star),
            "node_one": self.node_one,
            "lp_side": self.lp_side,
            "ip_side": self.ip_side,
            "verdicts": self.verdicts,
        }


def certify(f: Formulation, g_star: Graph, c_star, node_one,
            budget=DEFAULT_RAY_BUDGET) -> Certificate:
    """Re-derive the persistency failure from ``(G*, c*, f)`` alone."""
    c_star = objective_dict(g_star, c_star)
    p = f.build(g_star)
    face = optimal_face(p, c_star)
    lo, hi = coordinate_bounds(face, node_one)
    if (lo, hi) != (0, 0):
        raise VerificationFailed("lp_side", f"node {node_one} ranges over [{lo}, {hi}] "
                                            "on the optimal face")
    best = maximize(p, c_star)
    optima = max_weight_stable_sets(g_star, c_star)
    missing = [s for s in optima.sets if node_one not in s]
    if missing:
        raise VerificationFailed("ip_side", f"optimal stable set {missing[0]} avoids "
                                            f"node {node_one}")
    weak = check_weak_persistency(g_star, c_star, p, vertex_budget=budget)
    if weak.holds:
        raise VerificationFailed("weak_persistency", "weak persistency unexpectedly holds")
    strong = check_strong_persistency(g_star, c_star, p)
    if strong.holds:
        raise VerificationFailed("strong_persistency", "strong persistency unexpectedly holds")
    lp_side = {
        "optimal_value": _q(best.value),
        "face_dimension": affine_dimension(face),
        "node_bounds": [_q(lo), _q(hi)],
        "vertex": _point_json(best.witness),
    }
    ip_side = {
        "optimal_value": _q(optima.value),
        "optimal_sets": [list(s) for s in optima.sets],
    }
    verdicts = {"weak": "violated", "strong": "violated",
                "weak_witness": weak.witness, "strong_witness": strong.witness}
    return Certificate(f.name, g_star, c_star, node_one, lp_side, ip_side, verdicts)


def verify_counterexample(bundle: CounterexampleBundle, f: Formulation,
                          budget=DEFAULT_RAY_BUDGET) -> Certificate:
    if f.name != bundle.formulation.name:
        raise VerificationFailed("formulation", f"bundle was built for {bundle.formulation}")
    if not bundle.epsilon > 0:
        raise VerificationFailed("epsilon", f"epsilon {bundle.epsilon} is not positive")
    if bundle.c_star[bundle.inner.node_one] != bundle.epsilon:
        raise VerificationFailed("c_star", "c* at node 1 differs from epsilon")
    return certify(f, bundle.g_star, bundle.c_star, bundle.inner.node_one, budget)
