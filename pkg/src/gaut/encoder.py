"""Turning graphs back into expressions, plus textual graph input formats.

The encoder emits a staged pipeline: create one wire per node, fan each
node out to its source occurrences (keeping a carry wire for nodes that
are edge targets or boundary outputs), route copies to the edge layer,
fire all edges in parallel, route targets back next to their carries,
merge, and finally arrange the end sequence.  Evaluating the result
reproduces the input graph up to isomorphism.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass

from .errors import ParseError, RankMismatch
from .hypergraph import Edge, Hypergraph, from_json, graph
from .terms import (
    Atom,
    AtomSymbol,
    Iconst,
    Rank,
    Term,
    UnitE,
    box_all,
    perm_term,
    prod_all,
)

LABEL_A = AtomSymbol("a", Rank(1, 1))


@dataclass(frozen=True)
class SimpleDigraph:
    """An ordinary directed graph on nodes 1..n; loops and parallels allowed."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(a), int(b)) for a, b in self.arcs))
        for a, b in self.arcs:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"arc ({a}, {b}) out of range 1..{self.n}")


def as_hypergraph(d: SimpleDigraph, label: AtomSymbol = LABEL_A) -> Hypergraph:
    """View a digraph as a boundary-less hypergraph with one label."""
    if tuple(label.rank) != (1, 1):
        raise RankMismatch(f"digraph edges need a (1,1) label, got {tuple(label.rank)}")
    edges = [Edge(label, (a,), (b,)) for a, b in d.arcs]
    return graph(range(1, d.n + 1), edges)


def to_digraph(g: Hypergraph) -> tuple[SimpleDigraph, list[int]]:
    """Flatten a (0,0)-graph with binary edges into a digraph.

    Returns the digraph and the node-id list such that digraph index i+1
    corresponds to ids[i] in the input graph.
    """
    if g.rank != (0, 0):
        raise RankMismatch(f"expected a (0,0)-graph, got rank {tuple(g.rank)}")
    ids = sorted(g.nodes)
    index = {v: i + 1 for i, v in enumerate(ids)}
    arcs = []
    for e in g.edges:
        if tuple(e.label.rank) != (1, 1):
            raise RankMismatch(
                f"edge label {e.label.name} has rank {tuple(e.label.rank)}, not (1,1)"
            )
        arcs.append((index[e.sources[0]], index[e.targets[0]]))
    return SimpleDigraph(len(ids), tuple(arcs)), ids


def encode_digraph(d: SimpleDigraph, label: AtomSymbol = LABEL_A) -> Term:
    """Encode a digraph; the result has exactly one atom leaf per arc."""
    return encode_graph(as_hypergraph(d, label))


def encode_graph(g: Hypergraph, node_order: list[int] | None = None) -> Term:
    """Produce an expression whose evaluation is isomorphic to g.

    ``node_order`` fixes the wire order of the node-creation stage; any
    permutation of the nodes yields an equivalent expression.
    """
    nodes = sorted(g.nodes) if node_order is None else list(node_order)
    if sorted(nodes) != sorted(g.nodes):
        raise ValueError("node_order must be a permutation of the graph's nodes")
    idx = {v: i for i, v in enumerate(nodes)}

    src_by_node: dict[int, list] = {v: [] for v in nodes}
    tgt_by_node: dict[int, list] = {v: [] for v in nodes}
    for i, e in enumerate(g.edges):
        for pos, v in enumerate(e.sources):
            src_by_node[v].append((i, pos))
        for pos, v in enumerate(e.targets):
            tgt_by_node[v].append((i, pos))
    end_by_node: dict[int, list[int]] = {v: [] for v in nodes}
    for pos, v in enumerate(g.end):
        end_by_node[v].append(pos)
    carry = {v: bool(tgt_by_node[v]) or bool(end_by_node[v]) for v in nodes}
    carry_nodes = [v for v in nodes if carry[v]]

    factors: list[Term] = []

    def emit(t: Term) -> None:
        if not isinstance(t, UnitE):
            factors.append(t)

    def emit_stack(parts: list[Term]) -> None:
        if parts and any(not isinstance(p, UnitE) for p in parts):
            factors.append(box_all(parts))

    # boundary wires grouped per node, then merged/created into node wires
    begin_sorted = sorted(range(len(g.begin)), key=lambda i: (idx[g.begin[i]], i))
    perm_a = [0] * len(g.begin)
    for new_pos, i in enumerate(begin_sorted):
        perm_a[i] = new_pos + 1
    emit(perm_term(perm_a))
    begin_mult = Counter(g.begin)
    emit_stack(
        [
            UnitE(1) if begin_mult.get(v, 0) == 1 else Iconst(begin_mult.get(v, 0), 1)
            for v in nodes
        ]
    )

    # fan-out: one copy per source occurrence plus a carry where needed
    fanout = {v: len(src_by_node[v]) + (1 if carry[v] else 0) for v in nodes}
    emit_stack(
        [UnitE(1) if fanout[v] == 1 else Iconst(1, fanout[v]) for v in nodes]
    )

    # route copies to the edge layer's source slots, carries to the bottom
    slot_pos = {}
    p = 0
    for i, e in enumerate(g.edges):
        for pos in range(len(e.sources)):
            slot_pos[(i, pos)] = p
            p += 1
    carry_pos = {v: p + j for j, v in enumerate(carry_nodes)}
    perm_c = []
    for v in nodes:
        perm_c.extend(slot_pos[slot] + 1 for slot in src_by_node[v])
        if carry[v]:
            perm_c.append(carry_pos[v] + 1)
    emit(perm_term(perm_c))

    # the edge layer: every edge fires in parallel above the carry wires
    stack_d: list[Term] = [Atom(e.label) for e in g.edges]
    if carry_nodes:
        stack_d.append(UnitE(len(carry_nodes)))
    emit_stack(stack_d)

    # route each target copy next to its node's carry wire
    f_pos = {}
    p = 0
    for v in carry_nodes:
        for slot in tgt_by_node[v]:
            f_pos[("t", slot)] = p
            p += 1
        f_pos[("c", v)] = p
        p += 1
    perm_e = []
    for i, e in enumerate(g.edges):
        perm_e.extend(f_pos[("t", (i, pos))] + 1 for pos in range(len(e.targets)))
    perm_e.extend(f_pos[("c", v)] + 1 for v in carry_nodes)
    emit(perm_term(perm_e))

    # merge target copies into their node
    emit_stack(
        [
            UnitE(1) if not tgt_by_node[v] else Iconst(len(tgt_by_node[v]) + 1, 1)
            for v in carry_nodes
        ]
    )

    # boundary output: duplicate or drop per end multiplicity, then arrange
    emit_stack(
        [
            UnitE(1) if len(end_by_node[v]) == 1 else Iconst(1, len(end_by_node[v]))
            for v in carry_nodes
        ]
    )
    perm_g = []
    for v in carry_nodes:
        perm_g.extend(pos + 1 for pos in end_by_node[v])
    emit(perm_term(perm_g))

    if not factors:
        return UnitE(len(g.begin))
    return prod_all(factors)


# ---------------------------------------------------------------------------
# graph input formats

def parse_graph_input(text: str, format: str) -> Hypergraph:
    """Parse edge-list, hypergraph-JSON, or a DOT digraph subset."""
    if format == "edgelist":
        return _parse_edgelist(text)
    if format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
            ) from None
        return from_json(doc)
    if format == "dot":
        return _parse_dot(text)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_edgelist(text: str) -> Hypergraph:
    lines = text.splitlines()
    n = None
    arcs = []
    for lineno, line in enumerate(lines, start=1):
        body = line.strip()
        if not body:
            continue
        parts = body.split()
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError("expected the node count", f"line {lineno}")
            n = int(parts[0])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'i j', got {body!r}", f"line {lineno}")
        arcs.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ParseError("empty edge-list input", "line 1")
    try:
        return as_hypergraph(SimpleDigraph(n, tuple(arcs)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


_DOT_SHELL = re.compile(r"\s*(?:strict\s+)?digraph(?:\s+(?:\"[^\"]*\"|[\w.]+))?\s*\{(.*)\}\s*\Z", re.S)
_DOT_ID = re.compile(r"\"([^\"]*)\"|([\w.]+)")


def _parse_dot(text: str) -> Hypergraph:
    shell = _DOT_SHELL.match(text)
    if shell is None:
        raise ParseError("expected 'digraph { ... }'", "line 1")
    body = re.sub(r"\[[^\]]*\]", " ", shell.group(1))  # attributes ignored
    order: dict[str, int] = {}

    def node_id(name: str) -> int:
        if name not in order:
            order[name] = len(order) + 1
        return order[name]

    arcs = []
    for statement in re.split(r"[;\n]", body):
        statement = statement.strip()
        if not statement:
            continue
        chain = []
        rest = statement
        while True:
            m = _DOT_ID.match(rest)
            if m is None:
                raise ParseError(f"expected a node id in {statement!r}")
            chain.append(m.group(1) if m.group(1) is not None else m.group(2))
            rest = rest[m.end():].lstrip()
            if not rest:
                break
            if not rest.startswith("->"):
                raise ParseError(f"expected '->' in {statement!r}")
            rest = rest[2:].lstrip()
        ids = [node_id(name) for name in chain]
        arcs.extend(zip(ids, ids[1:]))
    return as_hypergraph(SimpleDigraph(len(order), tuple(arcs)))
