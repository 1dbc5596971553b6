"""Deterministic graph corpora and independent oracles shared by the tests."""
from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from gaut import (
    Atom,
    AtomSymbol,
    Edge,
    Iconst,
    Pi,
    Prod,
    Rank,
    SimpleDigraph,
    SumBox,
    UnitE,
    compose,
    diagonal,
    graph,
    rank_of,
    relation,
    sum_rel,
    unit_e,
)


def naive_eval(t, states, dset, delta):
    """Componentwise relational evaluation; the oracle the evaluator is held to."""
    if isinstance(t, Atom):
        return delta[t.symbol.name]
    if isinstance(t, UnitE):
        return unit_e(t.n, states)
    if isinstance(t, Pi):
        return dset.s
    if isinstance(t, Iconst):
        named = dset.constant(t.p, t.q)
        return named if named is not None else diagonal(t.p, t.q, states)
    if isinstance(t, Prod):
        return compose(
            naive_eval(t.left, states, dset, delta),
            naive_eval(t.right, states, dset, delta),
        )
    return sum_rel(
        naive_eval(t.top, states, dset, delta),
        naive_eval(t.bottom, states, dset, delta),
    )


def canonical_arcs(d: SimpleDigraph) -> tuple:
    """Relabeling-minimal arc tuple; equal iff the digraphs are isomorphic."""
    best = None
    for perm in itertools.permutations(range(1, d.n + 1)):
        arcs = tuple(sorted((perm[a - 1], perm[b - 1]) for a, b in d.arcs))
        if best is None or arcs < best:
            best = arcs
    return (d.n, best)


def digraph_corpus(count: int = 520, max_n: int = 6, seed: int = 20240901) -> list[SimpleDigraph]:
    """At least ``count`` pairwise non-isomorphic digraphs on up to ``max_n`` nodes.

    Seeded with the chromatic landmarks (cliques, odd cycles, bipartite
    shells, a loop) and filled with random arc sets, deduplicated by
    canonical form.
    """
    rng = random.Random(seed)
    out: list[SimpleDigraph] = []
    seen: set[tuple] = set()

    def add(d: SimpleDigraph) -> None:
        key = canonical_arcs(d)
        if key not in seen:
            seen.add(key)
            out.append(d)

    add(SimpleDigraph(0, ()))
    for n in range(1, max_n + 1):
        add(SimpleDigraph(n, ()))
        add(SimpleDigraph(n, tuple((i, i + 1) for i in range(1, n))))  # path
        if n >= 3:
            add(SimpleDigraph(n, tuple((i, i % n + 1) for i in range(1, n + 1))))  # cycle
        add(SimpleDigraph(n, tuple((1, i) for i in range(2, n + 1))))  # star
        clique = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        add(SimpleDigraph(n, clique))
    add(SimpleDigraph(1, ((1, 1),)))
    add(SimpleDigraph(3, ((1, 1), (1, 2), (2, 3))))
    add(SimpleDigraph(6, tuple((i, 3 + j) for i in (1, 2, 3) for j in (1, 2, 3))))

    while len(out) < count:
        n = rng.randint(1, max_n)
        pool = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        e = rng.randint(0, min(len(pool), 10))
        add(SimpleDigraph(n, tuple(rng.sample(pool, e))))
    return out


def node_shuffled_corpus(count: int = 110, max_n: int = 7, seed: int = 77) -> list[tuple[SimpleDigraph, list[int]]]:
    """Random digraphs paired with a shuffled node order for re-encoding."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        pool = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        e = rng.randint(0, min(len(pool), 12))
        d = SimpleDigraph(n, tuple(rng.sample(pool, e)))
        order = list(range(1, n + 1))
        rng.shuffle(order)
        out.append((d, order))
    return out


def hypergraph_corpus(count: int = 200, seed: int = 4242):
    """Random hypergraphs with boundaries, duplicates, and edge ranks up to (2,2)."""
    rng = random.Random(seed)
    symbols = {
        (m, n): AtomSymbol(f"h{m}{n}", Rank(m, n)) for m in range(3) for n in range(3)
    }
    out = []
    for _ in range(count):
        n = rng.randint(0, 8)
        nodes = list(range(n))
        edges = []
        begin = end = ()
        if n:
            for _ in range(rng.randint(0, 12)):
                m, q = rng.randint(0, 2), rng.randint(0, 2)
                edges.append(
                    Edge(
                        symbols[(m, q)],
                        tuple(rng.choice(nodes) for _ in range(m)),
                        tuple(rng.choice(nodes) for _ in range(q)),
                    )
                )
            begin = tuple(rng.choice(nodes) for _ in range(rng.randint(0, 3)))
            end = tuple(rng.choice(nodes) for _ in range(rng.randint(0, 3)))
        out.append(graph(nodes, edges, begin, end))
    return out


def random_relation(rng: random.Random, m: int, n: int, states) -> "StateRelation":
    space = list(
        itertools.product(
            itertools.product(states, repeat=m), itertools.product(states, repeat=n)
        )
    )
    return relation(m, n, rng.sample(space, rng.randint(0, len(space))))


@st.composite
def rank_valid_terms(draw, m: int | None = None, depth: int = 2):
    """Random well-typed terms with arities at most 2 per constructor."""
    if m is None:
        m = draw(st.integers(0, 2))
    if depth == 0:
        kinds = ["unit", "iconst", "atom"] + (["pi"] if m == 2 else [])
        kind = draw(st.sampled_from(kinds))
        if kind == "unit":
            return UnitE(m)
        if kind == "pi":
            return Pi()
        n = draw(st.integers(0, 2))
        if kind == "iconst":
            return Iconst(m, n)
        base = draw(st.sampled_from("ab"))
        return Atom(AtomSymbol(f"{base}{m}{n}", Rank(m, n)))
    kind = draw(st.sampled_from(["prod", "box", "leaf"]))
    if kind == "prod":
        left = draw(rank_valid_terms(m=m, depth=depth - 1))
        right = draw(rank_valid_terms(m=rank_of(left).n, depth=depth - 1))
        return Prod(left, right)
    if kind == "box" and m >= 1:
        split = draw(st.integers(0, m))
        return SumBox(
            draw(rank_valid_terms(m=split, depth=depth - 1)),
            draw(rank_valid_terms(m=m - split, depth=depth - 1)),
        )
    return draw(rank_valid_terms(m=m, depth=0))
