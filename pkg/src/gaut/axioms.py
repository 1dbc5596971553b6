"""The graph equations and an executable checker for candidate D-sets.

The fourteen fixed-arity equations are stored as pairs of closed terms over
pi and the I-constants, so the same table can be checked in any semantics
that evaluates terms (state relations here, hypergraphs in the tests).
The fifteenth is a schema quantified over all doubly ranked elements; it is
checked for a supplied list of generator relations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .relations import (
    RANK_BUDGET,
    DSet,
    State,
    StateRelation,
    compose,
    eval_term,
    sum_rel,
    unit_e,
    _state_tuple,
)
from .terms import Iconst, Pi, Prod, SumBox, Term, UnitE, prod_all, rank_of, s_m1_term

_S = Pi()
_E = UnitE(1)
_D01 = Iconst(0, 1)
_D21 = Iconst(2, 1)
_D10 = Iconst(1, 0)
_D12 = Iconst(1, 2)


def _p(*fs: Term) -> Term:
    return prod_all(fs)


EQUATIONS: list[tuple[str, Term, Term]] = [
    ("E3", _p(_S, _S), UnitE(2)),
    (
        "E4",
        _p(SumBox(_S, _E), SumBox(_E, _S), SumBox(_S, _E)),
        _p(SumBox(_E, _S), SumBox(_S, _E), SumBox(_E, _S)),
    ),
    ("E5", _p(SumBox(_E, _D21), _D21), _p(SumBox(_D21, _E), _D21)),
    ("E6", _p(SumBox(_E, _D01), _D21), _E),
    ("E7", _p(_S, _D21), _D21),
    ("E8", _p(SumBox(_E, _D01), _S), SumBox(_D01, _E)),
    ("E9", _p(SumBox(_S, _E), SumBox(_E, _S), SumBox(_D21, _E)), _p(SumBox(_E, _D21), _S)),
    ("E10", _p(_D12, SumBox(_E, _D12)), _p(_D12, SumBox(_D12, _E))),
    ("E11", _p(_D12, SumBox(_E, _D10)), _E),
    ("E12", _p(_D12, _S), _D12),
    ("E13", _p(_S, SumBox(_E, _D10)), SumBox(_D10, _E)),
    ("E14", _p(SumBox(_D12, _E), SumBox(_E, _S), SumBox(_S, _E)), _p(_S, SumBox(_E, _D12))),
    ("E15", _p(_D12, _D21), _E),
    ("E16", _p(SumBox(_D12, _E), SumBox(_E, _D21)), _p(_D21, _D12)),
]


@dataclass(frozen=True)
class AxiomCheck:
    equation: str
    holds: bool
    counterexample: tuple[tuple, tuple] | None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_json(self) -> list[dict]:
        return [
            {
                "equation": c.equation,
                "holds": c.holds,
                "counterexample": None
                if c.counterexample is None
                else [list(c.counterexample[0]), list(c.counterexample[1])],
            }
            for c in self.checks
        ]


def _verdict(label: str, lhs: StateRelation, rhs: StateRelation) -> AxiomCheck:
    if lhs == rhs:
        return AxiomCheck(label, True, None)
    diff = sorted(lhs.pairs.symmetric_difference(rhs.pairs), key=repr)
    return AxiomCheck(label, False, diff[0])


def check_axioms(
    states: Iterable[State],
    dset: DSet,
    generators: Sequence[StateRelation] = (),
) -> AxiomReport:
    """Check the fourteen equations and the conjugation schema for a D-set.

    Failures are reported, not raised; the schema is checked once per
    generator relation, at the generator's own rank.
    """
    q = _state_tuple(states)
    checks = []
    for label, lhs, rhs in EQUATIONS:
        _check_budget(q, max(sum(rank_of(t)) for t in (lhs, rhs)))
        checks.append(_verdict(label, eval_term(lhs, q, dset), eval_term(rhs, q, dset)))
    e = unit_e(1, q)
    for p in generators:
        m, n = p.rank
        _check_budget(q, m + n + 2)
        s_m = eval_term(s_m1_term(m), q, dset) if m >= 1 else unit_e(1, q)
        s_n = eval_term(s_m1_term(n), q, dset) if n >= 1 else unit_e(1, q)
        lhs = compose(s_m, sum_rel(p, e))
        rhs = compose(sum_rel(e, p), s_n)
        checks.append(_verdict("E17", lhs, rhs))
    return AxiomReport(tuple(checks))


def _check_budget(q: tuple, total_arity: int) -> None:
    if len(q) ** total_arity > RANK_BUDGET:
        raise BudgetExceeded(
            f"relation space {len(q)}^{total_arity} exceeds the checker budget"
        )
