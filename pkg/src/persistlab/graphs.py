"""Labeled simple undirected graphs and the combinatorial operations used by
the relaxations: induced subgraphs, 1-sums, relabeled copies, clique and
chordless odd cycle enumeration.

Node order is meaningful: it fixes variable order in every polytope built
from a graph and the canonical order of enumerated structures.
"""
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import NameCollision, UnknownNode

NodeMap = dict


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    edges: frozenset

    def __post_init__(self):
        nodes = tuple(str(v) for v in self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError(f"duplicate node labels in {nodes}")
        known = set(nodes)
        edges = set()
        for e in self.edges:
            pair = tuple(str(w) for w in e)
            if len(pair) != 2 or pair[0] == pair[1]:
                raise ValueError(f"loops and malformed edges are not allowed: {pair}")
            u, v = pair
            for w in (u, v):
                if w not in known:
                    raise UnknownNode(w)
            edges.add(frozenset((u, v)))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, nodes, edges=()):
        return cls(tuple(nodes), frozenset(frozenset(e) for e in edges))

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, v):
        return v in self._index

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def _adj(self):
        adj = {v: set() for v in self.nodes}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise UnknownNode(v) from None

    def neighbors(self, v):
        self.index(v)
        return self._adj[v]

    def has_edge(self, u, v):
        return frozenset((u, v)) in self.edges

    def degree(self, v):
        return len(self.neighbors(v))

    def edge_list(self):
        """Edges as ``(u, v)`` pairs with ``u`` first in node order, sorted."""
        pairs = []
        for e in self.edges:
            u, v = sorted(e, key=self._index.__getitem__)
            pairs.append((u, v))
        pairs.sort(key=lambda uv: (self._index[uv[0]], self._index[uv[1]]))
        return pairs

    def is_stable(self, nodes):
        nodes = list(nodes)
        return not any(self.has_edge(u, v) for u, v in combinations(nodes, 2))

    def relabeled(self, mapping):
        new_nodes = tuple(mapping.get(v, v) for v in self.nodes)
        return Graph.from_edges(new_nodes, [(mapping.get(u, u), mapping.get(v, v))
                                            for u, v in self.edge_list()])

    def is_connected(self):
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def to_text(self):
        lines = ["nodes: " + ",".join(self.nodes)]
        lines += [f"edge: {u} {v}" for u, v in self.edge_list()]
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edge_list()]}

    @classmethod
    def from_json(cls, data):
        if set(data) != {"nodes", "edges"}:
            raise ValueError(f"unexpected graph keys: {sorted(data)}")
        return cls.from_edges(data["nodes"], [tuple(e) for e in data["edges"]])

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("nodes:"):
            raise ValueError("graph text must start with a 'nodes:' line")
        rest = lines[0][len("nodes:"):].strip()
        nodes = [v.strip() for v in rest.split(",")] if rest else []
        edges = []
        for ln in lines[1:]:
            if not ln.startswith("edge:"):
                raise ValueError(f"unexpected graph line: {ln!r}")
            parts = ln[len("edge:"):].split()
            if len(parts) != 2:
                raise ValueError(f"edge line needs two labels: {ln!r}")
            edges.append(tuple(parts))
        return cls.from_edges(nodes, edges)


def parse_graph(text):
    """Parse either the text format or the JSON object format."""
    if text.lstrip().startswith("{"):
        return Graph.from_json(json.loads(text))
    return Graph.from_text(text)


def complete_graph(labels):
    labels = tuple(labels)
    return Graph.from_edges(labels, combinations(labels, 2))


def cycle_graph(labels):
    labels = tuple(labels)
    return Graph.from_edges(labels, [(labels[i], labels[(i + 1) % len(labels)])
                                     for i in range(len(labels))])


def path_graph(labels):
    labels = tuple(labels)
    return Graph.from_edges(labels, zip(labels, labels[1:]))


def induced_subgraph(g: Graph, u) -> Graph:
    u = set(u)
    for v in u:
        g.index(v)
    nodes = [v for v in g.nodes if v in u]
    return Graph.from_edges(nodes, [e for e in g.edge_list() if e[0] in u and e[1] in u])


def one_sum_graphs(g1: Graph, v1, g2: Graph, v2):
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    The merged node keeps ``v1``'s label.  Other labels of ``g2`` that clash
    with ``g1`` get primes appended.  Returns the graph and the map from
    ``g2`` labels to result labels.
    """
    g1.index(v1)
    g2.index(v2)
    taken = set(g1.nodes)
    mapping = {v2: v1}
    for v in g2.nodes:
        if v == v2:
            continue
        new = v
        while new in taken:
            new += "'"
        taken.add(new)
        mapping[v] = new
    nodes = list(g1.nodes) + [mapping[v] for v in g2.nodes if v != v2]
    edges = g1.edge_list() + [(mapping[a], mapping[b]) for a, b in g2.edge_list()]
    return Graph.from_edges(nodes, edges), mapping


def disjoint_copy(g: Graph, tag: str):
    if not tag:
        raise ValueError("copy tag must be non-empty")
    mapping = {v: f"{v}{tag}" for v in g.nodes}
    if len(set(mapping.values())) != len(mapping):
        raise NameCollision(f"tag {tag!r} makes labels collide")
    return g.relabeled(mapping), mapping


def enumerate_cliques(g: Graph, max_size: int):
    """All cliques with 1..max_size nodes, ordered by size, then node order."""
    if max_size < 1:
        raise ValueError("max_size must be positive")
    idx = g._index
    out = []

    def extend(clique, candidates):
        out.append(tuple(clique))
        if len(clique) == max_size:
            return
        for k, v in enumerate(candidates):
            extend(clique + [v], [w for w in candidates[k + 1:] if g.has_edge(v, w)])

    for k, v in enumerate(g.nodes):
        extend([v], [w for w in g.nodes[k + 1:] if g.has_edge(v, w)])
    out.sort(key=lambda c: (len(c), [idx[v] for v in c]))
    return out


def enumerate_chordless_odd_cycles(g: Graph, min_len: int = 3, max_len=None):
    """Chordless cycles of odd length in ``[min_len, max_len]``.

    Each cycle is reported once, as the tuple starting at its first node (in
    node order) and continuing towards the smaller of its two neighbours.
    """
    if min_len < 3 or min_len % 2 == 0:
        raise ValueError("min_len must be an odd integer >= 3")
    n = len(g.nodes)
    if max_len is None:
        max_len = n
    idx = g._index
    adj = g._adj
    found = []

    def grow(path, on_path):
        start, last = path[0], path[-1]
        for w in sorted(adj[last], key=idx.__getitem__):
            if idx[w] <= idx[start] or w in on_path:
                continue
            # w may touch only ``last`` and, to close the cycle, ``start``
            touches = adj[w] & on_path
            if touches - {last, start}:
                continue
            if len(path) >= 2 and start in touches:
                length = len(path) + 1
                cycle = path + [w]
                if length % 2 == 1 and min_len <= length <= max_len and idx[cycle[1]] < idx[w]:
                    found.append(tuple(cycle))
                continue
            if len(path) + 1 >= max_len:
                continue
            on_path.add(w)
            path.append(w)
            grow(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in g.nodes:
        grow([s], {s})
    found.sort(key=lambda c: (len(c), [idx[v] for v in c]))
    return found


def is_triangle(g: Graph) -> bool:
    """Whether ``g`` is isomorphic to K3."""
    return len(g.nodes) == 3 and len(g.edges) == 3


def atlas_catalog(max_nodes=7, connected=True, labels="digits"):
    """All graphs with 1..max_nodes nodes up to isomorphism, from the graph atlas.

    Ordered by node count, then edge count (the atlas order).  ``labels`` is
    ``"digits"`` (``"1"``, ``"2"``, ...) or ``"letters"`` (``"A"``, ``"B"``, ...).
    """
    import networkx as nx

    if max_nodes > 7:
        raise ValueError("the graph atlas covers at most 7 nodes")
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_nodes:
            continue
        if connected and not nx.is_connected(h):
            continue
        names = _labels(n, labels)
        out.append(Graph.from_edges(names, [(names[u], names[v]) for u, v in h.edges()]))
    return out


def _labels(n, style):
    if style == "digits":
        return [str(i + 1) for i in range(n)]
    if style == "letters":
        return [chr(ord("A") + i) for i in range(n)]
    raise ValueError(f"unknown label style {style!r}")


def enumerate_stable_sets(g: Graph):
    """All stable sets (including the empty set) as node-ordered tuples."""
    out = []
    nodes = g.nodes
    adj = g._adj

    def grow(k, chosen, blocked):
        if k == len(nodes):
            out.append(tuple(chosen))
            return
        v = nodes[k]
        grow(k + 1, chosen, blocked)
        if v not in blocked:
            chosen.append(v)
            grow(k + 1, chosen, blocked | adj[v])
            chosen.pop()

    grow(0, [], frozenset())
    idx = g._index
    out.sort(key=lambda s: (len(s), [idx[v] for v in s]))
    return out
