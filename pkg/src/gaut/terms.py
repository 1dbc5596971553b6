"""Doubly ranked symbols and the expression language for building graphs.

Expressions are trees over atoms, the unit wires e_n, the wire swap pi,
the single-node constants I(p,q), sequential product and parallel sum.
Every rank-valid expression denotes both a hypergraph and a state relation;
the evaluators live in :mod:`gaut.hypergraph` and :mod:`gaut.relations`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import InvalidPermutation, ParseError, RankMismatch


class Rank(NamedTuple):
    m: int
    n: int


@dataclass(frozen=True)
class AtomSymbol:
    """A named edge label with a fixed (input arity, output arity) rank."""

    name: str
    rank: Rank


@dataclass(frozen=True)
class Atom:
    symbol: AtomSymbol


@dataclass(frozen=True)
class UnitE:
    """n parallel wires; UnitE(0) is the empty expression, UnitE(1) is e."""

    n: int


@dataclass(frozen=True)
class Pi:
    """The swap of two adjacent wires."""


@dataclass(frozen=True)
class Iconst:
    """A single node appearing p times on the input and q times on the output.

    Any p, q >= 0 is accepted; the five constants I(0,1), I(2,1), I(1,0),
    I(1,2) and the swap pi are the designated generators, the rest are
    derived diagonals.
    """

    p: int
    q: int


@dataclass(frozen=True)
class Prod:
    """Sequential composition: left's outputs feed right's inputs."""

    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class SumBox:
    """Parallel juxtaposition: top's wires come first, then bottom's."""

    top: "Term"
    bottom: "Term"


Term = Union[Atom, UnitE, Pi, Iconst, Prod, SumBox]


def rank_of(t: Term) -> Rank:
    """Compute the (m, n) rank of a term, rejecting ill-typed products."""
    if isinstance(t, Atom):
        return t.symbol.rank
    if isinstance(t, UnitE):
        return Rank(t.n, t.n)
    if isinstance(t, Pi):
        return Rank(2, 2)
    if isinstance(t, Iconst):
        return Rank(t.p, t.q)
    if isinstance(t, Prod):
        lr, rr = rank_of(t.left), rank_of(t.right)
        if lr.n != rr.m:
            raise RankMismatch(
                f"cannot compose rank ({lr.m},{lr.n}) with rank ({rr.m},{rr.n})"
            )
        return Rank(lr.m, rr.n)
    lr, rr = rank_of(t.top), rank_of(t.bottom)
    return Rank(lr.m + rr.m, lr.n + rr.n)


def prod_all(factors: Sequence[Term]) -> Term:
    """Right-fold a nonempty factor sequence into nested products."""
    if not factors:
        raise ValueError("prod_all needs at least one factor")
    out = factors[-1]
    for f in reversed(factors[:-1]):
        out = Prod(f, out)
    return out


def box_all(parts: Sequence[Term]) -> Term:
    """Right-fold a nonempty part sequence into nested sums."""
    if not parts:
        raise ValueError("box_all needs at least one part")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = SumBox(p, out)
    return out


def _balanced_prod(factors: Sequence[Term]) -> Term:
    # keeps recursion over long wire-shuffle chains logarithmic
    if len(factors) == 1:
        return factors[0]
    mid = len(factors) // 2
    return Prod(_balanced_prod(factors[:mid]), _balanced_prod(factors[mid:]))


def _swap_layer(i: int, n: int) -> Term:
    # swap of wires i and i+1 (1-based) among n wires
    parts: list[Term] = []
    if i > 1:
        parts.append(UnitE(i - 1))
    parts.append(Pi())
    if i + 1 < n:
        parts.append(UnitE(n - i - 1))
    return box_all(parts)


def perm_term(p: Sequence[int]) -> Term:
    """Expression for the permutation that routes input wire i to output p[i-1].

    Relationally it denotes {(u, v) | v[p[i]-1] = u[i-1] for all i}; the
    graph denotation is the discrete n-node graph whose end sequence is the
    begin sequence reordered accordingly.  The permutation is decomposed
    into adjacent swaps in insertion-sort order.
    """
    n = len(p)
    if sorted(p) != list(range(1, n + 1)):
        raise InvalidPermutation(f"not a bijection on 1..{n}: {list(p)}")
    # arrangement[i] = item that must occupy position i+1 at the end
    inverse = [0] * n
    for i, target in enumerate(p):
        inverse[target - 1] = i + 1
    arr = list(range(1, n + 1))
    swaps: list[int] = []
    for i in range(n):
        j = arr.index(inverse[i], i)
        while j > i:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            swaps.append(j)  # 1-based left wire of the swap
            j -= 1
    if not swaps:
        return UnitE(n)
    return _balanced_prod([_swap_layer(i, n) for i in swaps])


def s_m1_term(m: int) -> Term:
    """The rotation on m+1 wires sending the first wire past the next m.

    Defined by s(1) = pi and s(m+1) = (s(m) [] e) . (e_m [] pi); its state
    semantics maps a word g1 g2 ... g_{m+1} to g2 ... g_{m+1} g1, which is
    the form that makes the permutation-conjugation equation hold for every
    doubly ranked element.
    """
    if m < 1:
        raise ValueError("s_m1_term requires m >= 1")
    if m == 1:
        return Pi()
    return Prod(SumBox(s_m1_term(m - 1), UnitE(1)), SumBox(UnitE(m - 1), Pi()))


def wire_permutation(t: Term) -> list[int] | None:
    """If t is built purely from units and swaps, return its permutation.

    The result lists, for each input wire i (1-based), the output position
    it is routed to.  Terms containing atoms or I(p,q) constants return None.
    """
    if isinstance(t, UnitE):
        return list(range(1, t.n + 1))
    if isinstance(t, Pi):
        return [2, 1]
    if isinstance(t, Prod):
        pl = wire_permutation(t.left)
        pr = wire_permutation(t.right)
        if pl is None or pr is None or len(pl) != len(pr):
            return None
        return [pr[pl[i] - 1] for i in range(len(pl))]
    if isinstance(t, SumBox):
        pt = wire_permutation(t.top)
        pb = wire_permutation(t.bottom)
        if pt is None or pb is None:
            return None
        return pt + [len(pt) + x for x in pb]
    return None


def atoms_of(t: Term) -> Iterator[AtomSymbol]:
    """Yield every atom leaf of t, left to right, with repetitions."""
    if isinstance(t, Atom):
        yield t.symbol
    elif isinstance(t, Prod):
        yield from atoms_of(t.left)
        yield from atoms_of(t.right)
    elif isinstance(t, SumBox):
        yield from atoms_of(t.top)
        yield from atoms_of(t.bottom)


# ---------------------------------------------------------------------------
# textual form

_TOKEN_RE = re.compile(r"[()]|[^()\s]+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def print_term(t: Term) -> str:
    """Render a term in the textual S-expression form."""
    if isinstance(t, Atom):
        s = t.symbol
        return f"(sym {s.name} {s.rank.m} {s.rank.n})"
    if isinstance(t, UnitE):
        return "e" if t.n == 1 else f"(en {t.n})"
    if isinstance(t, Pi):
        return "pi"
    if isinstance(t, Iconst):
        return f"(i {t.p} {t.q})"
    if isinstance(t, Prod):
        return f"(prod {print_term(t.left)} {print_term(t.right)})"
    return f"(box {print_term(t.top)} {print_term(t.bottom)})"


class _Tokens:
    def __init__(self, text: str):
        self.items = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
        self.pos = 0

    def peek(self) -> tuple[str, int] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, expect: str | None = None) -> tuple[str, int]:
        item = self.peek()
        if item is None:
            raise ParseError("unexpected end of input", "at end")
        self.pos += 1
        if expect is not None and item[0] != expect:
            raise ParseError(f"expected {expect!r}, got {item[0]!r}", f"offset {item[1]}")
        return item


def _nat(tokens: _Tokens) -> int:
    tok, off = tokens.next()
    if not tok.isdigit():
        raise ParseError(f"expected a natural number, got {tok!r}", f"offset {off}")
    return int(tok)


def _parse_one(tokens: _Tokens) -> Term:
    tok, off = tokens.next()
    if tok == "e":
        return UnitE(1)
    if tok == "pi":
        return Pi()
    if tok != "(":
        raise ParseError(f"unexpected token {tok!r}", f"offset {off}")
    head, hoff = tokens.next()
    if head == "en":
        t: Term = UnitE(_nat(tokens))
    elif head == "i":
        t = Iconst(_nat(tokens), _nat(tokens))
    elif head == "sym":
        name, noff = tokens.next()
        if not _IDENT_RE.match(name):
            raise ParseError(f"invalid symbol name {name!r}", f"offset {noff}")
        t = Atom(AtomSymbol(name, Rank(_nat(tokens), _nat(tokens))))
    elif head in ("prod", "box"):
        items = [_parse_one(tokens)]
        while True:
            nxt = tokens.peek()
            if nxt is None:
                raise ParseError("unclosed parenthesis", f"offset {off}")
            if nxt[0] == ")":
                break
            items.append(_parse_one(tokens))
        if len(items) < 2:
            raise ParseError(f"{head} needs at least two arguments", f"offset {off}")
        t = prod_all(items) if head == "prod" else box_all(items)
    else:
        raise ParseError(f"unknown form {head!r}", f"offset {hoff}")
    tokens.next(expect=")")
    return t


def parse_term(text: str) -> Term:
    """Parse the textual term grammar; validates ranks before returning."""
    tokens = _Tokens(text)
    t = _parse_one(tokens)
    trailing = tokens.peek()
    if trailing is not None:
        raise ParseError(
            f"trailing input {trailing[0]!r}", f"offset {trailing[1]}"
        )
    rank_of(t)
    return t
