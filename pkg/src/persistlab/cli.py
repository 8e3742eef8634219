"""Command-line front end.

Exit codes: 0 success, 1 parse or configuration error, 2 budget exceeded,
3 property violated, 4 internal verification failure.
"""
import argparse
import json
import os
import random
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import counterexample as cx
from .errors import (BudgetExceeded, NoCore, NotSeparable, PersistlabError,
                     PreconditionViolated, UnknownNode, UnsupportedGraph, VerificationFailed)
from .exactlp import DEFAULT_RAY_BUDGET, format_rational, parse_rational
from .graphs import Graph, complete_graph, parse_graph
from .persistency import (check_strong_persistency, check_weak_persistency,
                          objective_dict)
from .polytopes import check_condition
from .relaxations import parse_formulation

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_VIOLATED, EXIT_VERIFY = 0, 1, 2, 3, 4

GOLDEN_DIR = Path(__file__).parent / "golden"

# the two worked examples: formulation, outer graph, pendant weight, epsilon
WORKED_EXAMPLES = {
    "example1": ("oddcycle:5", "ABC", None, Fraction(1, 20)),
    "example2": ("oddcycle:3", "ABCD", Fraction(1, 3), Fraction(1, 300)),
}


class ConfigError(Exception):
    pass


def _read_graph(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read graph file {path}: {exc}") from None
    return parse_graph(text)


def parse_objective(spec, g: Graph):
    """``ones``, an inline comma list of rationals, or a JSON file (list or mapping)."""
    if spec == "ones":
        return {v: Fraction(1) for v in g.nodes}
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read objective file {spec}: {exc}") from None
        if isinstance(data, dict):
            return objective_dict(g, {k: parse_rational(v) for k, v in data.items()})
        if isinstance(data, list):
            return objective_dict(g, [parse_rational(v) for v in data])
        raise ConfigError("objective file must hold a JSON list or object")
    return objective_dict(g, [parse_rational(t) for t in spec.split(",")])


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    _write(args.out, text)


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def cmd_relax(args):
    f = parse_formulation(args.formulation)
    g = _read_graph(args.graph[0])
    p = f.build(g)
    _emit(args, {"formulation": f.name, "polytope": p.to_json(),
                 "generators": [gen.to_json() for gen in f.list_generators(g)]})
    return EXIT_OK


def cmd_persistency(args):
    f = parse_formulation(args.formulation)
    g = _read_graph(args.graph[0])
    c = parse_objective(args.objective, g)
    p = f.build(g)
    reports = []
    if args.mode in ("weak", "both"):
        reports.append(check_weak_persistency(g, c, p, vertex_budget=args.budget_vertices))
    if args.mode in ("strong", "both"):
        reports.append(check_strong_persistency(g, c, p))
    _emit(args, {"formulation": f.name, "reports": [r.to_json() for r in reports]})
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATED


def cmd_conditions(args):
    f = parse_formulation(args.formulation)
    g = _read_graph(args.graph[0])
    reports = [check_condition(f, "A", g), check_condition(f, "B", g)]
    if args.join:
        if len(args.graph) != 2:
            raise ConfigError("--join needs exactly two --graph files")
        g2 = _read_graph(args.graph[1])
        reports.append(check_condition(f, "C", (g, args.join[0], g2, args.join[1])))
    elif len(args.graph) > 1:
        raise ConfigError("a second graph is only used together with --join")
    _emit(args, {"formulation": f.name, "reports": [r.to_json() for r in reports]})
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATED


def _bundle(args):
    f = parse_formulation(args.formulation)
    outer = _read_graph(args.outer_graph) if args.outer_graph else None
    eps = parse_rational(args.epsilon) if args.epsilon else None
    pend = parse_rational(args.pendant_epsilon) if args.pendant_epsilon else None
    return f, cx.construct_counterexample(f, epsilon=eps, pendant_epsilon=pend,
                                          outer_graph=outer, budget=args.budget_vertices)


def _plot_csv(func):
    lines = ["z,g"]
    for z, v in func.breakpoints:
        lines.append(f"{format_rational(z)},{format_rational(v)}")
    return "\n".join(lines) + "\n"


def cmd_counterexample(args):
    f, bundle = _bundle(args)
    cert = cx.verify_counterexample(bundle, f, budget=args.budget_vertices)
    if args.emit_plot_data:
        _write(args.emit_plot_data, _plot_csv(bundle.g_function))
    _emit(args, {"bundle": bundle.to_json(), "certificate": cert.to_json()})
    return EXIT_OK


def cmd_gfunction(args):
    f = parse_formulation(args.formulation)
    pend = parse_rational(args.pendant_epsilon) if args.pendant_epsilon else None
    outer = _read_graph(args.outer_graph) if args.outer_graph else cx.default_outer_graph(f)
    gadget = cx.build_outer_gadget(f, outer, pend)
    inner = cx.find_inner_core(f)
    func = cx.g_function(f, inner, gadget)
    if args.emit_plot_data:
        _write(args.emit_plot_data, _plot_csv(func))
    _emit(args, {"formulation": f.name, "g_function": func.to_json()})
    return EXIT_OK


def worked_example_document(name, budget=DEFAULT_RAY_BUDGET):
    spec, outer_labels, pend, eps = WORKED_EXAMPLES[name]
    f = parse_formulation(spec)
    bundle = cx.construct_counterexample(f, epsilon=eps, pendant_epsilon=pend,
                                         outer_graph=complete_graph(outer_labels),
                                         budget=budget)
    cert = cx.verify_counterexample(bundle, f, budget=budget)
    return {"bundle": bundle.to_json(), "certificate": cert.to_json()}


def cmd_worked_examples(args):
    golden = Path(args.golden_dir) if args.golden_dir else GOLDEN_DIR
    summary = {}
    for name in WORKED_EXAMPLES:
        doc = worked_example_document(name, args.budget_vertices)
        path = golden / f"{name}.json"
        if args.write_golden:
            golden.mkdir(parents=True, exist_ok=True)
            _write(path, json.dumps(doc, indent=2) + "\n")
            summary[name] = "written"
            continue
        try:
            expected = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read golden file {path}: {exc}") from None
        summary[name] = "match" if expected == doc else "mismatch"
    _emit(args, summary)
    return EXIT_VERIFY if "mismatch" in summary.values() else EXIT_OK


def _random_graph(rng, n):
    labels = [str(i + 1) for i in range(n)]
    edges = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.5]
    return Graph.from_edges(labels, edges)


def cmd_sample_persistency(args):
    """Random (graph, objective) instances; seeded by PERSISTLAB_SEED."""
    seed = int(os.environ.get("PERSISTLAB_SEED", "0"))
    rng = random.Random(seed)
    f = parse_formulation(args.formulation)
    failures = []
    for k in range(args.count):
        g = _random_graph(rng, rng.randint(1, args.max_nodes))
        c = {v: Fraction(rng.randint(-2, 6), rng.randint(1, 4)) for v in g.nodes}
        p = f.build(g)
        for rep in (check_weak_persistency(g, c, p), check_strong_persistency(g, c, p)):
            if not rep.holds:
                failures.append({"instance": k, "graph": g.to_json(), "mode": rep.mode,
                                 "objective": {v: format_rational(x) for v, x in c.items()}})
    _emit(args, {"formulation": f.name, "seed": seed, "instances": args.count,
                 "failures": failures})
    return EXIT_VIOLATED if failures else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="persistlab",
                                     description="Exact persistency experiments for "
                                                 "stable set relaxations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=False, objective=False):
        p.add_argument("--formulation", required=True,
                       help="edge, clique, oddcycle:K, intersect:F+G, stable, w5, necA, "
                            "necB, necC")
        if graph:
            p.add_argument("--graph", action="append", required=True,
                           help="graph file (text or JSON format)")
        if objective:
            p.add_argument("--objective", default="ones",
                           help="'ones', a comma list of rationals, or a JSON file")
        p.add_argument("--budget-vertices", type=int, default=DEFAULT_RAY_BUDGET,
                       help="ray budget of the vertex enumeration")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("relax", help="emit the polytope of a formulation")
    common(p, graph=True)
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("persistency", help="check weak and strong persistency")
    common(p, graph=True, objective=True)
    p.add_argument("--mode", choices=("weak", "strong", "both"), default="both")
    p.set_defaults(func=cmd_persistency)

    p = sub.add_parser("conditions", help="check Conditions A and B (and C with --join)")
    common(p, graph=True)
    p.add_argument("--join", nargs=2, metavar=("V1", "V2"),
                   help="1-sum the two graphs at these nodes and check Condition C")
    p.set_defaults(func=cmd_conditions)

    for name, func, help_ in (("counterexample", cmd_counterexample,
                               "build and verify a persistency counterexample"),
                              ("gfunction", cmd_gfunction,
                               "emit the breakpoints of the value function g")):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--outer-graph", help="graph file for the outer gadget")
        p.add_argument("--pendant-epsilon", help="fixed pendant weight for the gadget")
        p.add_argument("--emit-plot-data", metavar="CSV", help="write (z, g(z)) breakpoints")
        if name == "counterexample":
            p.add_argument("--epsilon", help="override for the weight of node 1")
        p.set_defaults(func=func)

    p = sub.add_parser("paper-examples", help="rerun both worked examples against golden files")
    p.add_argument("--golden-dir")
    p.add_argument("--write-golden", action="store_true")
    p.add_argument("--budget-vertices", type=int, default=DEFAULT_RAY_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_worked_examples)

    p = sub.add_parser("sample-persistency",
                       help="random persistency checks (seed from PERSISTLAB_SEED)")
    common(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-nodes", type=int, default=7)
    p.set_defaults(func=cmd_sample_persistency)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ConfigError, ValueError, KeyError, UnknownNode, UnsupportedGraph, NotSeparable,
            NoCore, PreconditionViolated, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PersistlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
