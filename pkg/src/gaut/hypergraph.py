"""Concrete hypergraphs with ordered boundaries, their algebra and evaluation.

A graph of rank (m, n) carries a begin sequence of m nodes and an end
sequence of n nodes; product glues end-to-begin, sum juxtaposes.  Node
identity is local to each graph value, so equality of record is
isomorphism, not id equality.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ParseError, RankMismatch
from .terms import (
    Atom,
    AtomSymbol,
    Iconst,
    Pi,
    Prod,
    Rank,
    SumBox,
    Term,
    UnitE,
    rank_of,
)


@dataclass(frozen=True)
class Edge:
    label: AtomSymbol
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        if (len(self.sources), len(self.targets)) != tuple(self.label.rank):
            raise RankMismatch(
                f"edge endpoints do not fit label {self.label.name}"
                f":{tuple(self.label.rank)}"
            )


@dataclass(frozen=True)
class Hypergraph:
    nodes: frozenset[int]
    edges: tuple[Edge, ...]
    begin: tuple[int, ...]
    end: tuple[int, ...]

    def __post_init__(self):
        mentioned = set(self.begin) | set(self.end)
        for e in self.edges:
            mentioned.update(e.sources)
            mentioned.update(e.targets)
        if not mentioned <= self.nodes:
            raise ValueError(f"unknown node ids {sorted(mentioned - self.nodes)}")

    @property
    def rank(self) -> Rank:
        return Rank(len(self.begin), len(self.end))


def graph(
    nodes: Iterable[int],
    edges: Iterable[Edge] = (),
    begin: Iterable[int] = (),
    end: Iterable[int] = (),
) -> Hypergraph:
    return Hypergraph(frozenset(nodes), tuple(edges), tuple(begin), tuple(end))


def unit_graph(n: int) -> Hypergraph:
    """n isolated nodes threaded straight through: begin = end = x1..xn."""
    ids = tuple(range(n))
    return graph(ids, (), ids, ids)


def pi_graph() -> Hypergraph:
    """Two nodes with begin xy and end yx."""
    return graph((0, 1), (), (0, 1), (1, 0))


def iconst_graph(p: int, q: int) -> Hypergraph:
    """A single node repeated p times in begin and q times in end."""
    return graph((0,), (), (0,) * p, (0,) * q)


def atom_graph(symbol: AtomSymbol) -> Hypergraph:
    """One edge with fresh endpoint nodes; begin its sources, end its targets."""
    m, n = symbol.rank
    sources = tuple(range(m))
    targets = tuple(range(m, m + n))
    return graph(
        range(m + n), (Edge(symbol, sources, targets),), sources, targets
    )


def _relabeled(g: Hypergraph, mapping: dict[int, int]) -> tuple:
    edges = tuple(
        Edge(e.label, tuple(mapping[v] for v in e.sources), tuple(mapping[v] for v in e.targets))
        for e in g.edges
    )
    begin = tuple(mapping[v] for v in g.begin)
    end = tuple(mapping[v] for v in g.end)
    return edges, begin, end


def graph_sum(g: Hypergraph, h: Hypergraph) -> Hypergraph:
    """Disjoint union; begin and end sequences concatenate, g's parts first."""
    gmap = {v: i for i, v in enumerate(sorted(g.nodes))}
    hmap = {v: i + len(g.nodes) for i, v in enumerate(sorted(h.nodes))}
    ge, gb, gn = _relabeled(g, gmap)
    he, hb, hn = _relabeled(h, hmap)
    return graph(range(len(g.nodes) + len(h.nodes)), ge + he, gb + hb, gn + hn)


def graph_product(g: Hypergraph, h: Hypergraph) -> Hypergraph:
    """Glue h after g, identifying g's i-th end node with h's i-th begin node.

    Repeated ids in the glued sequences can chain identifications, so the
    merge is the union-find closure of the pointwise identifications.
    """
    if len(g.end) != len(h.begin):
        raise RankMismatch(
            f"cannot compose rank {tuple(g.rank)} with rank {tuple(h.rank)}"
        )
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(g.end, h.begin):
        ra, rb = find((0, a)), find((1, b))
        if ra != rb:
            parent[ra] = rb
    ids: dict[tuple[int, int], int] = {}
    mapping: dict[tuple[int, int], int] = {}
    for key in [(0, v) for v in sorted(g.nodes)] + [(1, v) for v in sorted(h.nodes)]:
        root = find(key)
        if root not in ids:
            ids[root] = len(ids)
        mapping[key] = ids[root]
    gmap = {v: mapping[(0, v)] for v in g.nodes}
    hmap = {v: mapping[(1, v)] for v in h.nodes}
    ge, gb, _ = _relabeled(g, gmap)
    he, _, hn = _relabeled(h, hmap)
    return graph(range(len(ids)), ge + he, gb, hn)


def eval_graph(t: Term) -> Hypergraph:
    """Evaluate a term to its hypergraph, atom by atom and wire by wire."""
    rank_of(t)
    return _eval(t)


def _eval(t: Term) -> Hypergraph:
    if isinstance(t, Atom):
        return atom_graph(t.symbol)
    if isinstance(t, UnitE):
        return unit_graph(t.n)
    if isinstance(t, Pi):
        return pi_graph()
    if isinstance(t, Iconst):
        return iconst_graph(t.p, t.q)
    if isinstance(t, Prod):
        return graph_product(_eval(t.left), _eval(t.right))
    return graph_sum(_eval(t.top), _eval(t.bottom))


# ---------------------------------------------------------------------------
# isomorphism

def _signatures(g: Hypergraph) -> dict[int, tuple]:
    occ: dict[int, list] = {v: [] for v in g.nodes}
    for e in g.edges:
        key = (e.label.name, len(e.sources), len(e.targets))
        for i, v in enumerate(e.sources):
            occ[v].append(("s",) + key + (i,))
        for i, v in enumerate(e.targets):
            occ[v].append(("t",) + key + (i,))
    for i, v in enumerate(g.begin):
        occ[v].append(("b", i))
    for i, v in enumerate(g.end):
        occ[v].append(("e", i))
    return {v: tuple(sorted(o)) for v, o in occ.items()}


def _edge_key(e: Edge, mapping: dict[int, int]) -> tuple:
    return (
        e.label,
        tuple(mapping[v] for v in e.sources),
        tuple(mapping[v] for v in e.targets),
    )


def isomorphic(g: Hypergraph, h: Hypergraph) -> dict[int, int] | None:
    """Find a node bijection preserving edges, begin and end, if one exists.

    Backtracking over signature-compatible candidates; intended for graphs
    up to a few dozen nodes.  Absence of an isomorphism returns None.
    """
    if (
        len(g.nodes) != len(h.nodes)
        or len(g.edges) != len(h.edges)
        or g.rank != h.rank
    ):
        return None
    gsig, hsig = _signatures(g), _signatures(h)
    if sorted(gsig.values()) != sorted(hsig.values()):
        return None
    mapping: dict[int, int] = {}
    for a, b in zip(g.begin + g.end, h.begin + h.end):
        if mapping.setdefault(a, b) != b:
            return None
    if len(set(mapping.values())) != len(mapping):
        return None
    if any(gsig[a] != hsig[b] for a, b in mapping.items()):
        return None

    budget = Counter((e.label, e.sources, e.targets) for e in h.edges)
    incident: dict[int, list[int]] = {v: [] for v in g.nodes}
    for i, e in enumerate(g.edges):
        for v in dict.fromkeys(e.sources + e.targets):
            incident[v].append(i)
    pending = [len(dict.fromkeys(e.sources + e.targets)) for e in g.edges]

    def consume(v: int) -> list[int] | None:
        # completes incident edges as their last node gets mapped; on a
        # budget miss every decrement made in this call is rolled back
        taken: list[int] = []
        done: list[int] = []
        for i in incident[v]:
            pending[i] -= 1
            done.append(i)
            if pending[i] == 0:
                key = _edge_key(g.edges[i], mapping)
                if budget[key] == 0:
                    for j in taken:
                        budget[_edge_key(g.edges[j], mapping)] += 1
                    for j in done:
                        pending[j] += 1
                    return None
                budget[key] -= 1
                taken.append(i)
        return taken

    def restore(v: int, taken: list[int]) -> None:
        for j in taken:
            budget[_edge_key(g.edges[j], mapping)] += 1
        for i in incident[v]:
            pending[i] += 1

    used = set(mapping.values())
    for v in list(mapping):
        taken = consume(v)
        if taken is None:
            return None

    by_sig: dict[tuple, list[int]] = {}
    for b in h.nodes:
        by_sig.setdefault(hsig[b], []).append(b)
    free = sorted(
        (v for v in g.nodes if v not in mapping),
        key=lambda v: (len(by_sig[gsig[v]]), -len(incident[v]), v),
    )

    def dfs(k: int) -> bool:
        if k == len(free):
            return True
        v = free[k]
        for b in sorted(by_sig[gsig[v]]):
            if b in used:
                continue
            mapping[v] = b
            used.add(b)
            taken = consume(v)
            if taken is not None and dfs(k + 1):
                return True
            if taken is not None:
                restore(v, taken)
            used.discard(b)
            del mapping[v]
        return False

    if not dfs(0):
        return None
    return dict(mapping)


# ---------------------------------------------------------------------------
# wire format

def to_json(g: Hypergraph) -> dict:
    return {
        "nodes": sorted(g.nodes),
        "edges": [
            {"label": e.label.name, "src": list(e.sources), "tgt": list(e.targets)}
            for e in g.edges
        ],
        "begin": list(g.begin),
        "end": list(g.end),
    }


def from_json(doc: dict) -> Hypergraph:
    """Read the wire format; edge label ranks are inferred from endpoints."""
    try:
        nodes = [int(v) for v in doc["nodes"]]
        raw_edges = doc["edges"]
        begin = [int(v) for v in doc["begin"]]
        end = [int(v) for v in doc["end"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed hypergraph document: {exc}") from None
    ranks: dict[str, Rank] = {}
    edges = []
    for i, e in enumerate(raw_edges):
        try:
            name = str(e["label"])
            src = tuple(int(v) for v in e["src"])
            tgt = tuple(int(v) for v in e["tgt"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed edge {i}: {exc}") from None
        rank = Rank(len(src), len(tgt))
        if ranks.setdefault(name, rank) != rank:
            raise ParseError(
                f"label {name!r} used at ranks {tuple(ranks[name])} and {tuple(rank)}"
            )
        edges.append(Edge(AtomSymbol(name, rank), src, tgt))
    try:
        return graph(nodes, edges, begin, end)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
