"""State-word relations, their magmoid operations, and term evaluation.

A relation of rank (m, n) over a state set Q is a finite set of pairs of
Q-words of lengths m and n.  Together with relation composition and the
parallel pairing these form the algebra that terms are evaluated into;
the designated swap/copy/merge/create/delete relations of the trivial
instance are produced by :func:`tsrel_dset`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import BudgetExceeded, EmptyStateSet, RankMismatch, UnknownSymbol
from .terms import (
    Atom,
    Iconst,
    Pi,
    Prod,
    Rank,
    SumBox,
    Term,
    UnitE,
    rank_of,
    wire_permutation,
)

State = Hashable
Word = tuple
PairSet = frozenset

# refuse exact-set computations past these sizes; desk-scale guardrails
RANK_BUDGET = 10**7
PAIR_BUDGET = 10**7
FRONTIER_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class StateRelation:
    """A finite set of (input word, output word) pairs with a declared rank."""

    rank: Rank
    pairs: PairSet

    def __post_init__(self):
        for u, v in self.pairs:
            if len(u) != self.rank.m or len(v) != self.rank.n:
                raise RankMismatch(
                    f"pair ({u}, {v}) does not fit rank {tuple(self.rank)}"
                )


def relation(m: int, n: int, pairs: Iterable[tuple[Sequence, Sequence]]) -> StateRelation:
    """Build a relation from any iterable of word-like pairs."""
    return StateRelation(Rank(m, n), frozenset((tuple(u), tuple(v)) for u, v in pairs))


def compose(r: StateRelation, s: StateRelation) -> StateRelation:
    """Relation composition: pairs (u, w) with some v related to both."""
    if r.rank.n != s.rank.m:
        raise RankMismatch(
            f"cannot compose rank {tuple(r.rank)} with rank {tuple(s.rank)}"
        )
    by_left: dict[Word, list[Word]] = {}
    for v, w in s.pairs:
        by_left.setdefault(v, []).append(w)
    out = set()
    for u, v in r.pairs:
        for w in by_left.get(v, ()):
            out.add((u, w))
    return StateRelation(Rank(r.rank.m, s.rank.n), frozenset(out))


def sum_rel(r: StateRelation, s: StateRelation) -> StateRelation:
    """Parallel pairing: concatenates words componentwise."""
    if len(r.pairs) * len(s.pairs) > PAIR_BUDGET:
        raise BudgetExceeded(
            f"parallel sum would hold {len(r.pairs) * len(s.pairs)} pairs"
        )
    out = frozenset(
        (u1 + u2, v1 + v2) for u1, v1 in r.pairs for u2, v2 in s.pairs
    )
    return StateRelation(Rank(r.rank.m + s.rank.m, r.rank.n + s.rank.n), out)


def unit_e(n: int, states: Iterable[State]) -> StateRelation:
    """The identity relation on words of length n."""
    q = _state_tuple(states)
    if len(q) ** n > PAIR_BUDGET:
        raise BudgetExceeded(f"identity on {len(q)}^{n} words")
    return StateRelation(
        Rank(n, n), frozenset((w, w) for w in itertools.product(q, repeat=n))
    )


def diagonal(p: int, q_arity: int, states: Iterable[State]) -> StateRelation:
    """The copy/merge relation {(g^p, g^q) | g in Q}; rank (p, q)."""
    q = _state_tuple(states)
    if p == 0 and q_arity == 0:
        return StateRelation(Rank(0, 0), frozenset({((), ())}))
    return StateRelation(
        Rank(p, q_arity), frozenset(((g,) * p, (g,) * q_arity) for g in q)
    )


def swap_rel(states: Iterable[State]) -> StateRelation:
    """The relation exchanging the two positions of a length-2 word."""
    q = _state_tuple(states)
    return StateRelation(
        Rank(2, 2),
        frozenset(((g1, g2), (g2, g1)) for g1 in q for g2 in q),
    )


@dataclass(frozen=True)
class DSet:
    """The designated relations interpreting pi and the four I-constants."""

    s: StateRelation
    d01: StateRelation
    d21: StateRelation
    d10: StateRelation
    d12: StateRelation

    def constant(self, p: int, q: int) -> StateRelation | None:
        named = {(0, 1): self.d01, (2, 1): self.d21, (1, 0): self.d10, (1, 2): self.d12}
        return named.get((p, q))


def tsrel_dset(states: Iterable[State]) -> DSet:
    """The trivial-groups instance: swap plus diagonal copy/merge/create/delete."""
    q = _state_tuple(states)
    return DSet(
        s=swap_rel(q),
        d01=diagonal(0, 1, q),
        d21=diagonal(2, 1, q),
        d10=diagonal(1, 0, q),
        d12=diagonal(1, 2, q),
    )


def _state_tuple(states: Iterable[State]) -> tuple:
    q = tuple(sorted(set(states), key=repr))
    if not q:
        raise EmptyStateSet("state set must be nonempty")
    return q


# ---------------------------------------------------------------------------
# term evaluation
#
# Evaluating a term bottom-up with explicit pair sets is exact but
# materializes unit and wire-shuffle layers whose size is |Q|**width; wide
# expressions produced by the graph encoder would be unaffordable.  Instead
# the evaluator flattens the outer product chain, collapses runs of pure
# wire shuffles into one position map, and pushes a deduplicated frontier of
# words through the remaining layers.  When a layer is about to fan out
# explosively the evaluator instead walks the remaining layers backwards
# (they are relation layers, hence invertible) and joins the two frontiers
# across the hot layer, matching pass-through wires by hash.  The result is
# exactly the relation the componentwise semantics defines (the tests
# compare against a naive evaluator), only the traversal order differs.

_FORWARD_FANOUT_LIMIT = 200_000
_BACKWARD_SEED_LIMIT = 4_096


@dataclass(frozen=True)
class _Comp:
    """One parallel component of a layer, with forward/backward application."""

    m: int
    n: int
    fn: Callable[[Word], list[Word]]
    back: Callable[[Word], list[Word]] | None
    member: Callable[[Word, Word], bool]
    branch: int
    unit: bool


class _EvalContext:
    def __init__(self, states, dset, delta):
        self.states = states
        self.dset = dset
        self.delta = delta or {}
        self.standard = dset == tsrel_dset(states)
        self._fwd: dict[int, dict] = {}
        self._bwd: dict[int, dict] = {}

    def rel_dicts(self, rel: StateRelation) -> tuple[dict, dict]:
        key = id(rel)
        if key not in self._fwd:
            fwd: dict[Word, list[Word]] = {}
            bwd: dict[Word, list[Word]] = {}
            for u, v in rel.pairs:
                fwd.setdefault(u, []).append(v)
                bwd.setdefault(v, []).append(u)
            self._fwd[key] = {u: tuple(vs) for u, vs in fwd.items()}
            self._bwd[key] = {v: tuple(us) for v, us in bwd.items()}
        return self._fwd[key], self._bwd[key]

    def atom_rel(self, symbol) -> StateRelation:
        rel = self.delta.get(symbol.name)
        if rel is None or rel.rank != symbol.rank:
            raise UnknownSymbol(
                f"symbol {symbol.name}:{tuple(symbol.rank)} is not in the alphabet"
            )
        return rel


def _flatten(t: Term, cls) -> list[Term]:
    out: list[Term] = []
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, cls):
            stack.append(x.right if cls is Prod else x.bottom)
            stack.append(x.left if cls is Prod else x.top)
        else:
            out.append(x)
    return out


def _apply_seq(t: Term, word: Word, ctx: _EvalContext) -> list[Word]:
    # general single-word application, used for products nested under sums
    if isinstance(t, Prod):
        seen: set[Word] = set()
        for mid in _apply_seq(t.left, word, ctx):
            seen.update(_apply_seq(t.right, mid, ctx))
        return list(seen)
    if isinstance(t, SumBox):
        return _make_layer(t, ctx).apply(word)
    return _compile_comp(t, ctx).fn(word)


def _dict_comp(m: int, n: int, fwd: dict, bwd: dict) -> _Comp:
    branch = max((len(vs) for vs in fwd.values()), default=0)
    return _Comp(
        m,
        n,
        lambda w: list(fwd.get(w, ())),
        lambda w: list(bwd.get(w, ())),
        lambda u, v: v in fwd.get(u, ()),
        branch,
        False,
    )


def _compile_comp(t: Term, ctx: _EvalContext) -> _Comp:
    m, n = rank_of(t)
    if isinstance(t, UnitE):
        return _Comp(m, n, lambda w: [w], lambda w: [w], lambda u, v: u == v, 1, True)
    if isinstance(t, Pi):
        if ctx.standard:
            swap = lambda w: [(w[1], w[0])]
            return _Comp(2, 2, swap, swap, lambda u, v: v == (u[1], u[0]), 1, False)
        return _dict_comp(2, 2, *ctx.rel_dicts(ctx.dset.s))
    if isinstance(t, Iconst):
        named = ctx.dset.constant(t.p, t.q)
        if named is not None and not ctx.standard:
            return _dict_comp(m, n, *ctx.rel_dicts(named))
        p, q, states = t.p, t.q, ctx.states

        def fwd(w: Word) -> list[Word]:
            if p == 0:
                return [()] if q == 0 else [(g,) * q for g in states]
            return [(w[0],) * q] if len(set(w)) == 1 else []

        def bwd(w: Word) -> list[Word]:
            if q == 0:
                return [()] if p == 0 else [(g,) * p for g in states]
            return [(w[0],) * p] if len(set(w)) == 1 else []

        def member(u: Word, v: Word) -> bool:
            mixed = (len(set(u)) > 1) or (len(set(v)) > 1)
            if mixed:
                return False
            if u and v:
                return u[0] == v[0]
            return True

        return _Comp(m, n, fwd, bwd, member, len(states) if p == 0 else 1, False)
    if isinstance(t, Atom):
        return _dict_comp(m, n, *ctx.rel_dicts(ctx.atom_rel(t.symbol)))
    if isinstance(t, SumBox):
        raise AssertionError("sum layers are flattened before compilation")
    # nested product inside a sum: forward-only
    return _Comp(
        m,
        n,
        lambda w: _apply_seq(t, w, ctx),
        None,
        lambda u, v: v in _apply_seq(t, u, ctx),
        max(len(ctx.states), 2),
        False,
    )


@dataclass(frozen=True)
class _Layer:
    comps: tuple[_Comp, ...]
    spans: tuple[tuple[int, int, int, int], ...]  # in_lo, in_hi, out_lo, out_hi

    @property
    def invertible(self) -> bool:
        return all(c.back is not None for c in self.comps)

    def fanout(self) -> int:
        est = 1
        for c in self.comps:
            est *= c.branch
            if est > PAIR_BUDGET:
                break
        return est

    def apply(self, w: Word) -> list[Word]:
        slices = []
        for (lo, hi, _, _), c in zip(self.spans, self.comps):
            outs = c.fn(w[lo:hi])
            if not outs:
                return []
            slices.append(outs)
        return [sum(combo, ()) for combo in itertools.product(*slices)]

    def unapply(self, w: Word) -> list[Word]:
        slices = []
        for (_, _, lo, hi), c in zip(self.spans, self.comps):
            ins = c.back(w[lo:hi])
            if not ins:
                return []
            slices.append(ins)
        return [sum(combo, ()) for combo in itertools.product(*slices)]


def _make_layer(t: Term, ctx: _EvalContext) -> _Layer:
    comps = tuple(_compile_comp(c, ctx) for c in _flatten(t, SumBox))
    spans = []
    mpos = npos = 0
    for c in comps:
        spans.append((mpos, mpos + c.m, npos, npos + c.n))
        mpos += c.m
        npos += c.n
    return _Layer(comps, tuple(spans))


def _compile_steps(t: Term, ctx: _EvalContext) -> list:
    steps: list = []
    pending: list[int] | None = None
    for factor in _flatten(t, Prod):
        if ctx.standard or isinstance(factor, UnitE):
            perm = wire_permutation(factor)
        else:
            perm = None
        if perm is not None:
            pending = perm if pending is None else [perm[i - 1] for i in pending]
            continue
        if pending is not None:
            steps.append(("perm", _perm_inverse(pending)))
            pending = None
        steps.append(("layer", _make_layer(factor, ctx)))
    if pending is not None:
        steps.append(("perm", _perm_inverse(pending)))
    return steps


def _perm_inverse(p: list[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, target in enumerate(p):
        inv[target - 1] = i
    return tuple(inv)


def _check_frontier(size: int) -> None:
    if size > FRONTIER_BUDGET:
        raise BudgetExceeded(f"intermediate frontier of {size} words")


def _backward_map(suffix: list, ctx: _EvalContext, n_final: int) -> dict[Word, set]:
    """Acceptable input words of the suffix, each with its reachable outputs."""
    if n_final == 0:
        b: dict[Word, set] = {(): {()}}
    else:
        b = {w: {w} for w in itertools.product(ctx.states, repeat=n_final)}
    for kind, op in reversed(suffix):
        nxt: dict[Word, set] = {}
        if kind == "perm":
            for w, outs in b.items():
                u = [None] * len(w)
                for j, src in enumerate(op):
                    u[src] = w[j]
                nxt.setdefault(tuple(u), set()).update(outs)
        else:
            for w, outs in b.items():
                for u in op.unapply(w):
                    nxt.setdefault(u, set()).update(outs)
                _check_frontier(len(nxt))
        b = nxt
        _check_frontier(len(b))
        if not b:
            break
    return b


def _join_across(frontier: set, layer: _Layer, b: dict[Word, set]) -> set:
    """Meet the forward frontier and the backward map across one layer."""
    units = [s for s, c in zip(layer.spans, layer.comps) if c.unit]
    others = [(s, c) for s, c in zip(layer.spans, layer.comps) if not c.unit]
    index: dict[tuple, list] = {}
    for w, outs in b.items():
        key = tuple(w[lo:hi] for _, _, lo, hi in units)
        index.setdefault(key, []).append((w, outs))
    results: set = set()
    for u in frontier:
        key = tuple(u[lo:hi] for lo, hi, _, _ in units)
        for w, outs in index.get(key, ()):
            if all(
                c.member(u[in_lo:in_hi], w[out_lo:out_hi])
                for (in_lo, in_hi, out_lo, out_hi), c in others
            ):
                results.update(outs)
    return results


def eval_term(
    t: Term,
    states: Iterable[State],
    dset: DSet | None = None,
    delta: Mapping[str, StateRelation] | None = None,
) -> StateRelation:
    """Evaluate a term to the state relation it denotes over the given states.

    Atoms are looked up by name in ``delta``; pi and the I-constants are
    interpreted through ``dset`` (the trivial instance by default, where
    every I(p, q) is the diagonal {(g^p, g^q)}).
    """
    rank = rank_of(t)
    q = _state_tuple(states)
    if len(q) ** rank.m > PAIR_BUDGET:
        raise BudgetExceeded(f"enumerating {len(q)}^{rank.m} source words")
    ctx = _EvalContext(q, dset if dset is not None else tsrel_dset(q), delta)
    steps = _compile_steps(t, ctx)
    pairs = []
    for source in itertools.product(q, repeat=rank.m):
        for w in _run_source(source, steps, ctx, rank.n):
            pairs.append((source, w))
    return StateRelation(rank, frozenset(pairs))


def _run_source(source: Word, steps: list, ctx: _EvalContext, n_final: int) -> set:
    frontier: set[Word] = {source}
    for i, (kind, op) in enumerate(steps):
        if not frontier:
            return frontier
        if kind == "perm":
            frontier = {tuple(w[j] for j in op) for w in frontier}
            continue
        suffix = steps[i + 1 :]
        if (
            len(frontier) * op.fanout() > _FORWARD_FANOUT_LIMIT
            and len(ctx.states) ** n_final <= _BACKWARD_SEED_LIMIT
            and all(k == "perm" or s.invertible for k, s in suffix)
        ):
            return _join_across(frontier, op, _backward_map(suffix, ctx, n_final))
        nxt: set[Word] = set()
        for w in frontier:
            nxt.update(op.apply(w))
        frontier = nxt
        _check_frontier(len(frontier))
    return frontier
