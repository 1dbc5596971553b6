"""Nondeterministic graph automata over state relations.

An automaton assigns a transition relation to every edge label; evaluating
an expression under that assignment (with pi and the I-constants going to
the designated swap/diagonal relations) yields the machine's view of the
graph, and acceptance intersects it with the initial and final word sets.
A direct search over node/state assignments extracts concrete witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ParseError, UnknownSymbol
from .hypergraph import Hypergraph
from .relations import StateRelation, State, Word, eval_term, relation, tsrel_dset
from .terms import AtomSymbol, Rank, Term


@dataclass(frozen=True)
class ExplicitWords:
    words: frozenset[Word]

    def contains(self, w: Word) -> bool:
        return w in self.words

    def has_length(self, k: int) -> bool:
        return any(len(w) == k for w in self.words)


@dataclass(frozen=True)
class UniversalWords:
    def contains(self, w: Word) -> bool:
        return True

    def has_length(self, k: int) -> bool:
        return True


WordSet = Union[ExplicitWords, UniversalWords]


def explicit_words(words) -> ExplicitWords:
    return ExplicitWords(frozenset(tuple(w) for w in words))


@dataclass(frozen=True)
class RunWitness:
    """A total assignment of states to the nodes of one graph."""

    assignment: dict[int, State]


@dataclass(frozen=True)
class GraphAutomaton:
    alphabet: tuple[AtomSymbol, ...]
    states: tuple
    delta: Mapping[str, StateRelation]
    initial: WordSet
    final: WordSet

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(set(self.states), key=repr)))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if not self.states:
            raise ValueError("automaton needs a nonempty state set")
        names = [s.name for s in self.alphabet]
        if len(set(names)) != len(names):
            raise ValueError("alphabet names must be unique")
        for sym in self.alphabet:
            rel = self.delta.get(sym.name)
            if rel is None:
                raise ValueError(f"no transition relation for {sym.name}")
            if rel.rank != sym.rank:
                raise ValueError(
                    f"delta({sym.name}) has rank {tuple(rel.rank)}, "
                    f"symbol has {tuple(sym.rank)}"
                )

    def symbol(self, name: str) -> AtomSymbol | None:
        for sym in self.alphabet:
            if sym.name == name:
                return sym
        return None


def extend_delta(a: GraphAutomaton, t: Term) -> StateRelation:
    """The relation a term denotes under the automaton's transition map."""
    return eval_term(t, a.states, tsrel_dset(a.states), a.delta)


def accepts(a: GraphAutomaton, t: Term) -> bool:
    """Whether some pair of the term's relation joins initial to final words."""
    rel = extend_delta(a, t)
    return any(
        a.initial.contains(u) and a.final.contains(v) for u, v in rel.pairs
    )


def behavior_member(a: GraphAutomaton, g: Hypergraph) -> bool:
    """Encode the graph as an expression and test acceptance."""
    from .encoder import encode_graph

    return accepts(a, encode_graph(g))


def run_search(a: GraphAutomaton, g: Hypergraph) -> RunWitness | None:
    """Search for a state assignment compatible with every edge and boundary.

    Nodes are visited by descending count of target-sequence occurrences
    (ties by ascending id), states in their sorted order, with forward
    checking on the edges touching each newly assigned node; the first
    compatible total assignment is returned.
    """
    pair_lists: dict[str, tuple] = {}
    for e in g.edges:
        sym = a.symbol(e.label.name)
        if sym is None or sym.rank != e.label.rank:
            raise UnknownSymbol(
                f"edge label {e.label.name}:{tuple(e.label.rank)} "
                "is not in the automaton's alphabet"
            )
        pair_lists.setdefault(e.label.name, tuple(sorted(a.delta[e.label.name].pairs)))
    if not (a.initial.has_length(len(g.begin)) and a.final.has_length(len(g.end))):
        return None

    in_count = {v: 0 for v in g.nodes}
    incident: dict[int, list[int]] = {v: [] for v in g.nodes}
    for i, e in enumerate(g.edges):
        for v in e.targets:
            in_count[v] += 1
        for v in dict.fromkeys(e.sources + e.targets):
            incident[v].append(i)
    order = sorted(g.nodes, key=lambda v: (-in_count[v], v))
    assign: dict[int, State] = {}

    def edge_feasible(i: int) -> bool:
        e = g.edges[i]
        for u, w in pair_lists[e.label.name]:
            if all(
                assign.get(v) in (None, u[j]) for j, v in enumerate(e.sources)
            ) and all(
                assign.get(v) in (None, w[j]) for j, v in enumerate(e.targets)
            ):
                return True
        return False

    def dfs(k: int) -> bool:
        if k == len(order):
            begin_word = tuple(assign[v] for v in g.begin)
            end_word = tuple(assign[v] for v in g.end)
            return a.initial.contains(begin_word) and a.final.contains(end_word)
        v = order[k]
        for state in a.states:
            assign[v] = state
            if all(edge_feasible(i) for i in incident[v]) and dfs(k + 1):
                return True
            del assign[v]
        return False

    if not dfs(0):
        return None
    return RunWitness(dict(assign))


# ---------------------------------------------------------------------------
# wire format

def word_to_str(w: Word) -> str:
    parts = [str(s) for s in w]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ",".join(parts)


def word_from_str(text: str, states: set) -> Word:
    if text == "":
        return ()
    tokens = text.split(",") if "," in text else list(text)
    word = tuple(int(t) if t.isdigit() else t for t in tokens)
    unknown = [s for s in word if s not in states]
    if unknown:
        raise ParseError(f"unknown states {unknown} in word {text!r}")
    return word


def _wordset_to_json(ws: WordSet) -> dict:
    if isinstance(ws, UniversalWords):
        return {"kind": "universal"}
    return {"kind": "explicit", "words": sorted(word_to_str(w) for w in ws.words)}


def _wordset_from_json(doc: dict, states: set) -> WordSet:
    kind = doc.get("kind")
    if kind == "universal":
        return UniversalWords()
    if kind == "explicit":
        return explicit_words(word_from_str(w, states) for w in doc["words"])
    raise ParseError(f"unknown word-set kind {kind!r}")


def to_json(a: GraphAutomaton) -> dict:
    return {
        "states": [str(s) for s in a.states],
        "delta": {
            sym.name: sorted(
                [word_to_str(u), word_to_str(v)] for u, v in a.delta[sym.name].pairs
            )
            for sym in a.alphabet
        },
        "initial": _wordset_to_json(a.initial),
        "final": _wordset_to_json(a.final),
    }


def from_json(doc: dict) -> GraphAutomaton:
    """Read the wire format; each label's rank is inferred from its pairs."""
    try:
        state_tokens = [str(s) for s in doc["states"]]
        delta_doc = doc["delta"]
        initial_doc = doc["initial"]
        final_doc = doc["final"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed automaton document: {exc}") from None
    states = {int(t) if t.isdigit() else t for t in state_tokens}
    alphabet = []
    delta = {}
    for name, raw_pairs in delta_doc.items():
        pairs = [
            (word_from_str(str(u), states), word_from_str(str(v), states))
            for u, v in raw_pairs
        ]
        if not pairs:
            raise ParseError(
                f"cannot infer the rank of {name!r} from an empty pair list"
            )
        m, n = len(pairs[0][0]), len(pairs[0][1])
        alphabet.append(AtomSymbol(name, Rank(m, n)))
        delta[name] = relation(m, n, pairs)
    return GraphAutomaton(
        alphabet=tuple(alphabet),
        states=tuple(states),
        delta=delta,
        initial=_wordset_from_json(initial_doc, states),
        final=_wordset_from_json(final_doc, states),
    )
