from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgsas.sut import SutConfig, TestCase
from pgsas.tuples import (
    InteractionTuple,
    generate_parameter_pairs,
    generate_tuples,
    remove_covered,
    weight_coverage,
)


def enumerate_tuples(cards):
    """Independent oracle: nested loops over pairs and values."""
    out = set()
    for i in range(len(cards)):
        for j in range(len(cards)):
            if i < j:
                for a in range(cards[i]):
                    for b in range(cards[j]):
                        out.add((i, a, j, b))
    return out


def count_pairs(p):
    return sum(1 for i in range(p) for j in range(p) if i < j)


configs = st.lists(st.integers(2, 5), min_size=2, max_size=8).map(lambda c: SutConfig(tuple(c)))


class TestParameterPairs:
    def test_five_parameters_give_ten_pairs(self, binary5):
        pairs = generate_parameter_pairs(binary5)
        assert len(pairs) == 10
        assert pairs[:4] == [(0, 1), (0, 2), (0, 3), (0, 4)]
        assert pairs[-1] == (3, 4)

    def test_two_parameters(self):
        assert generate_parameter_pairs(SutConfig((2, 2))) == [(0, 1)]

    def test_thirteen_parameters(self):
        pairs = generate_parameter_pairs(SutConfig((3,) * 13))
        assert len(pairs) == count_pairs(13) == 78
        assert pairs == sorted(pairs)


class TestGenerateTuples:
    def test_binary5_has_40(self, binary5):
        itl = generate_tuples(binary5)
        assert len(itl) == itl.initial_count == 40

    def test_single_pair(self):
        assert len(generate_tuples(SutConfig((3, 4)))) == 12

    def test_three_to_the_thirteen(self):
        cfg = SutConfig((3,) * 13)
        oracle = enumerate_tuples(cfg.cardinalities)
        assert len(oracle) == 702
        itl = generate_tuples(cfg)
        assert {tuple(t) for t in itl} == oracle
        assert itl.initial_count == 702

    @given(configs)
    @settings(max_examples=60, deadline=None)
    def test_matches_enumeration(self, cfg):
        itl = generate_tuples(cfg)
        oracle = enumerate_tuples(cfg.cardinalities)
        assert itl.initial_count == len(oracle)
        assert {(t.i, t.a, t.j, t.b) for t in itl} == oracle

    def test_contains(self, binary5):
        itl = generate_tuples(binary5)
        assert (0, 1, 3, 0) in itl
        assert (3, 0, 0, 1) not in itl  # not canonical order
        assert (0, 2, 3, 0) not in itl  # value out of range

    def test_dump_lines(self):
        itl = generate_tuples(SutConfig((2, 2)))
        remove_covered(TestCase((0, 0)), itl)
        assert itl.dump() == "0,1,0,1\n0,1,1,0\n0,1,1,1\n"


class TestInteractionTuple:
    def test_orders_lower_parameter_first(self):
        assert InteractionTuple.of((3, 0), (0, 1)) == InteractionTuple(0, 1, 3, 0)

    def test_same_parameter_rejected(self):
        with pytest.raises(ValueError):
            InteractionTuple.of((2, 0), (2, 1))


class TestWeightCoverage:
    def test_empty_list_gives_zero(self, binary5):
        itl2 = generate_tuples(binary5)
        for t in list(itl2):
            remove_covered([t.a if d == t.i else t.b if d == t.j else 0 for d in range(5)], itl2)
        assert len(itl2) == 0
        assert weight_coverage(TestCase((1, 0, 1, 0, 1)), itl2) == 0

    def test_full_list_gives_pair_count(self, binary5):
        itl = generate_tuples(binary5)
        rng = np.random.default_rng(0)
        for _ in range(20):
            case = rng.integers(0, 2, 5)
            assert weight_coverage(case, itl) == comb(5, 2) == 10

    def test_accepted_case_scores_zero_again(self, binary5):
        itl = generate_tuples(binary5)
        remove_covered((0, 1, 0, 1, 0), itl)
        assert weight_coverage((0, 1, 0, 1, 0), itl) == 0

    def test_matches_brute_force_count(self):
        cfg = SutConfig((3, 2, 4, 2))
        itl = generate_tuples(cfg)
        remove_covered((0, 0, 0, 0), itl)
        remove_covered((1, 1, 1, 1), itl)
        remaining = {tuple(t) for t in itl}
        rng = np.random.default_rng(5)
        for _ in range(50):
            case = [int(rng.integers(v)) for v in cfg.cardinalities]
            brute = sum(1 for (i, a, j, b) in remaining if case[i] == a and case[j] == b)
            assert weight_coverage(case, itl) == brute

    @given(configs, st.data())
    @settings(max_examples=40, deadline=None)
    def test_pure_and_bounded(self, cfg, data):
        itl = generate_tuples(cfg)
        for _ in range(data.draw(st.integers(0, 4))):
            remove_covered([data.draw(st.integers(0, v - 1)) for v in cfg.cardinalities], itl)
        case = [data.draw(st.integers(0, v - 1)) for v in cfg.cardinalities]
        before = len(itl)
        w1 = weight_coverage(case, itl)
        w2 = weight_coverage(case, itl)
        assert w1 == w2
        assert len(itl) == before
        assert w1 <= comb(cfg.p, 2)
        assert w1 <= itl.max_weight()

    def test_vectorized_agrees_with_scalar(self):
        cfg = SutConfig((4, 3, 2, 5, 3))
        itl = generate_tuples(cfg)
        remove_covered((1, 1, 1, 1, 1), itl)
        rng = np.random.default_rng(2)
        cases = np.column_stack([rng.integers(0, v, 64) for v in cfg.cardinalities])
        assert itl.weights(cases).tolist() == [itl.weight(c) for c in cases]


class TestRemoveCovered:
    def test_first_case_removes_ten(self, binary5):
        itl = generate_tuples(binary5)
        assert remove_covered((0, 0, 0, 0, 0), itl) == 10
        assert len(itl) == 30

    def test_idempotent(self, binary5):
        itl = generate_tuples(binary5)
        remove_covered((1, 0, 1, 0, 1), itl)
        assert remove_covered((1, 0, 1, 0, 1), itl) == 0

    def test_surveillance_suite_empties_list(self, binary5, surveillance_suite):
        itl = generate_tuples(binary5)
        for case in surveillance_suite:
            remove_covered(case, itl)
        assert len(itl) == 0
        assert not itl

    @given(configs, st.data())
    @settings(max_examples=40, deadline=None)
    def test_exact_accounting(self, cfg, data):
        itl = generate_tuples(cfg)
        for _ in range(data.draw(st.integers(1, 6))):
            case = [data.draw(st.integers(0, v - 1)) for v in cfg.cardinalities]
            before = len(itl)
            expected = weight_coverage(case, itl)
            removed = remove_covered(case, itl)
            assert removed == expected
            assert len(itl) == before - removed
            assert all(not t.covered_by(case) for t in itl)

    def test_copy_is_independent(self, binary5):
        itl = generate_tuples(binary5)
        clone = itl.copy()
        remove_covered((0, 0, 0, 0, 0), clone)
        assert len(itl) == 40 and len(clone) == 30

    def test_max_weight_counts_open_pairs(self):
        itl = generate_tuples(SutConfig((2, 2, 2)))
        assert itl.max_weight() == 3
        for case in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]:
            remove_covered(case, itl)
        assert len(itl) == 0 and itl.max_weight() == 0
