import itertools

import numpy as np
import pytest

from pgsas.sut import SutConfig, TestSuite, exhaustive_size
from pgsas.verify import all_pairs, coverage_percentage, lower_bound, verify_coverage


def test_surveillance_suite_is_complete(binary5, surveillance_suite):
    report = verify_coverage(surveillance_suite, binary5)
    assert report.complete
    assert report.total == report.covered == 40
    assert report.percentage == 100.0


def test_empty_suite_misses_everything():
    cfg = SutConfig((2, 3, 2))
    report = verify_coverage([], cfg)
    assert not report.complete
    assert set(report.missing) == set(all_pairs(cfg))
    assert coverage_percentage([], cfg) == 0.0


def test_exhaustive_suite_is_complete():
    cfg = SutConfig((3, 2, 4))
    rows = [list(r) for r in itertools.product(*(range(v) for v in cfg.cardinalities))]
    assert len(rows) == exhaustive_size(cfg)
    assert verify_coverage(rows, cfg).complete


def test_one_case_covers_a_quarter(binary5):
    assert coverage_percentage([[0, 1, 0, 1, 1]], binary5) == 25.0


def test_accepts_test_suite_objects(binary5, surveillance_suite):
    assert verify_coverage(TestSuite.from_rows(surveillance_suite, binary5), binary5).complete


def test_missing_last_line_is_reported(binary5, surveillance_suite):
    report = verify_coverage(surveillance_suite[:-1], binary5)
    assert not report.complete
    assert len(report.missing) >= 1
    assert report.to_dict()["missing_count"] == len(report.missing)


def test_wrong_arity():
    with pytest.raises(ValueError):
        verify_coverage([[0, 0, 0]], SutConfig((2, 2)))


@pytest.mark.parametrize(
    "cards, bound",
    [((3, 3, 3, 3), 9), ((2,) * 7, 4), ((5,) * 10, 25), ((2, 5, 3, 4), 20)],
)
def test_lower_bound(cards, bound):
    assert lower_bound(SutConfig(cards)) == bound


@pytest.mark.parametrize("cards", [(2, 2), (3, 2, 2), (2, 2, 2, 2), (3, 3, 2), (4, 3), (2,) * 6, (3, 3, 3, 2)])
def test_exhaustive_suite_mutations(cards):
    """Dropping every case that carries some value of some parameter breaks coverage."""
    cfg = SutConfig(cards)
    assert exhaustive_size(cfg) <= 4096
    rows = [list(r) for r in itertools.product(*(range(v) for v in cards))]
    assert verify_coverage(rows, cfg).complete
    for d, v in enumerate(cards):
        for x in range(v):
            kept = [r for r in rows if r[d] != x]
            assert not verify_coverage(kept, cfg).complete


def test_random_suites_agree_with_direct_set_count():
    cfg = SutConfig((3, 2, 4, 2, 3))
    rng = np.random.default_rng(0)
    for n in (0, 1, 3, 8, 20):
        rows = [[int(rng.integers(v)) for v in cfg.cardinalities] for _ in range(n)]
        seen = {
            (i, j, r[i], r[j]) for r in rows for i in range(cfg.p) for j in range(i + 1, cfg.p)
        }
        assert verify_coverage(rows, cfg).covered == len(seen)
