"""Recognition of k-colorable graphs, with witnesses and a brute-force check."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automaton import GraphAutomaton, explicit_words, run_search
from .encoder import LABEL_A, SimpleDigraph, as_hypergraph
from .errors import BudgetExceeded, GautError, IncompleteColoring, InvalidK
from .relations import relation

ORACLE_BUDGET = 10**8


@dataclass(frozen=True)
class Coloring:
    """A total map from node ids to colors 1..k."""

    colors: dict[int, int]


def make_color_automaton(k: int) -> GraphAutomaton:
    """The recognizer of k-colorable digraphs: states are colors, an edge
    may relate any two distinct ones, and runs start and end on the empty word."""
    if k < 1:
        raise InvalidK("k-colorability needs at least one color")
    states = tuple(range(1, k + 1))
    delta_a = relation(
        1, 1, (((i,), (j,)) for i in states for j in states if i != j)
    )
    eps = explicit_words([()])
    return GraphAutomaton(
        alphabet=(LABEL_A,),
        states=states,
        delta={LABEL_A.name: delta_a},
        initial=eps,
        final=eps,
    )


def is_k_colorable(d: SimpleDigraph, k: int) -> tuple[bool, Coloring | None]:
    """Decide k-colorability by run search; a returned witness is verified."""
    witness = run_search(make_color_automaton(k), as_hypergraph(d, LABEL_A))
    if witness is None:
        return False, None
    coloring = Coloring(dict(witness.assignment))
    if not verify_coloring(d, coloring):
        raise GautError("search produced an improper coloring")
    return True, coloring


def oracle_k_colorable(d: SimpleDigraph, k: int) -> bool:
    """Exhaustively try all k**n assignments; independent of the automaton path."""
    if k < 1:
        raise InvalidK("k-colorability needs at least one color")
    if k**d.n > ORACLE_BUDGET:
        raise BudgetExceeded(f"{k}**{d.n} assignments exceed the oracle budget")
    for assignment in itertools.product(range(1, k + 1), repeat=d.n):
        if all(assignment[a - 1] != assignment[b - 1] for a, b in d.arcs):
            return True
    return False


def verify_coloring(d: SimpleDigraph, c: Coloring) -> bool:
    """True iff the coloring is total and every arc joins distinct colors."""
    missing = [v for v in range(1, d.n + 1) if v not in c.colors]
    if missing:
        raise IncompleteColoring(f"no color for nodes {missing}")
    return all(c.colors[a] != c.colors[b] for a, b in d.arcs)
