import itertools
import random

import pytest
from hypothesis import given, strategies as st

import gaut.relations as relations_module
from corpus import naive_eval, random_relation, rank_valid_terms
from gaut import (
    BudgetExceeded,
    EmptyStateSet,
    Rank,
    RankMismatch,
    compose,
    diagonal,
    eval_term,
    rank_of,
    relation,
    sum_rel,
    swap_rel,
    tsrel_dset,
    unit_e,
)

Q2 = (1, 2)
Q3 = (1, 2, 3)


class TestCompose:
    def test_swap_squares_to_identity(self):
        s = swap_rel(Q2)
        assert compose(s, s) == unit_e(2, Q2)

    def test_left_unit(self):
        r = relation(1, 2, [((1,), (1, 2)), ((2,), (2, 2))])
        assert compose(unit_e(1, Q2), r) == r

    @pytest.mark.parametrize("q", [(1,), Q2, Q3])
    def test_split_then_merge_is_identity(self, q):
        d = tsrel_dset(q)
        assert compose(d.d12, d.d21) == unit_e(1, q)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            compose(unit_e(1, Q2), unit_e(2, Q2))


class TestSumRel:
    def test_empty_word_unit(self):
        r = relation(2, 1, [((1, 2), (1,))])
        assert sum_rel(unit_e(0, Q2), r) == r
        assert sum_rel(r, unit_e(0, Q2)) == r

    def test_two_single_wires_make_a_double(self):
        e = unit_e(1, Q2)
        assert sum_rel(e, e) == unit_e(2, Q2)

    def test_two_creations_enumerated(self):
        d01 = tsrel_dset(Q2).d01
        expected = relation(
            0, 2, [((), (g1, g2)) for g1 in Q2 for g2 in Q2]
        )
        paired = sum_rel(d01, d01)
        assert len(paired.pairs) == 4
        assert paired == expected

    def test_budget(self):
        big = relation(1, 1, (((i,), (i,)) for i in range(4000)))
        with pytest.raises(BudgetExceeded):
            sum_rel(big, big)


class TestUnits:
    def test_rank_zero(self):
        assert unit_e(0, Q2).pairs == frozenset({((), ())})

    def test_rank_one(self):
        assert unit_e(1, Q2) == relation(1, 1, [((1,), (1,)), ((2,), (2,))])

    def test_units_compound(self):
        assert unit_e(2, Q3) == sum_rel(unit_e(1, Q3), unit_e(1, Q3))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            unit_e(30, Q2)


class TestTrivialDset:
    def test_singleton_states_collapse(self):
        d = tsrel_dset((1,))
        assert d.s.pairs == {((1, 1), (1, 1))}
        assert d.d01.pairs == {((), (1,))}

    def test_swap_pairs(self):
        assert tsrel_dset(Q2).s == relation(
            2, 2, [((1, 1), (1, 1)), ((1, 2), (2, 1)), ((2, 1), (1, 2)), ((2, 2), (2, 2))]
        )

    def test_merge_pairs(self):
        assert tsrel_dset(Q2).d21 == relation(2, 1, [((1, 1), (1,)), ((2, 2), (2,))])

    def test_empty_states_rejected(self):
        with pytest.raises(EmptyStateSet):
            tsrel_dset(())

    def test_relation_rank_validation(self):
        with pytest.raises(RankMismatch):
            relation(1, 1, [((1, 2), (1,))])


@st.composite
def composable_quadruple(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    q = tuple(range(1, draw(st.integers(1, 3)) + 1))
    m, k, n = (draw(st.integers(0, 2)) for _ in range(3))
    m2, k2, n2 = (draw(st.integers(0, 2)) for _ in range(3))
    return (
        q,
        random_relation(rng, m, k, q),
        random_relation(rng, k, n, q),
        random_relation(rng, m2, k2, q),
        random_relation(rng, k2, n2, q),
    )


@given(composable_quadruple())
def test_distributivity(quad):
    q, f, g, f2, g2 = quad
    lhs = sum_rel(compose(f, g), compose(f2, g2))
    rhs = compose(sum_rel(f, f2), sum_rel(g, g2))
    assert lhs == rhs


@st.composite
def composable_triple(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    q = tuple(range(1, draw(st.integers(1, 3)) + 1))
    a, b, c, d = (draw(st.integers(0, 3)) for _ in range(4))
    return (
        random_relation(rng, a, b, q),
        random_relation(rng, b, c, q),
        random_relation(rng, c, d, q),
    )


@given(composable_triple())
def test_compose_associative(triple):
    r, s, t = triple
    assert compose(compose(r, s), t) == compose(r, compose(s, t))


@given(composable_triple())
def test_sum_associative(triple):
    r, s, t = triple
    assert sum_rel(sum_rel(r, s), t) == sum_rel(r, sum_rel(s, t))


@st.composite
def term_with_context(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    q = tuple(range(1, draw(st.integers(1, 3)) + 1))
    t = draw(rank_valid_terms(depth=3))
    delta = {
        f"{base}{m}{n}": random_relation(rng, m, n, q)
        for base in "ab"
        for m in range(3)
        for n in range(3)
    }
    return q, t, delta


class TestEvalTerm:
    @given(term_with_context())
    def test_matches_componentwise_evaluation(self, ctx):
        q, t, delta = ctx
        dset = tsrel_dset(q)
        assert eval_term(t, q, dset, delta) == naive_eval(t, q, dset, delta)

    @given(term_with_context())
    def test_join_path_matches_componentwise_evaluation(self, ctx, monkeypatch):
        q, t, delta = ctx
        dset = tsrel_dset(q)
        monkeypatch.setattr(relations_module, "_FORWARD_FANOUT_LIMIT", 0)
        assert eval_term(t, q, dset, delta) == naive_eval(t, q, dset, delta)

    @given(term_with_context())
    def test_result_rank_matches_term_rank(self, ctx):
        q, t, delta = ctx
        assert eval_term(t, q, tsrel_dset(q), delta).rank == rank_of(t)

    def test_source_budget(self):
        from gaut import UnitE

        with pytest.raises(BudgetExceeded):
            eval_term(UnitE(30), Q2)


def test_diagonal_examples():
    assert diagonal(1, 3, Q2) == relation(
        1, 3, [((1,), (1, 1, 1)), ((2,), (2, 2, 2))]
    )
    assert diagonal(0, 0, Q3).pairs == {((), ())}
