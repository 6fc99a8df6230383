import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pgsas import PairwiseGSA, SutConfig


def test_params_round_trip():
    est = PairwiseGSA(population_size=30, max_iterations=40, n_runs=2, random_state=3)
    params = est.get_params()
    assert params["population_size"] == 30 and params["random_state"] == 3
    other = clone(est)
    assert other.get_params() == params
    est.set_params(alpha=5.0)
    assert est.alpha == 5.0


def test_fit_accepts_config_forms():
    kw = dict(population_size=20, max_iterations=20, random_state=0)
    a = PairwiseGSA(**kw).fit("3^2 2^1")
    b = PairwiseGSA(**kw).fit(SutConfig((3, 3, 2)))
    c = PairwiseGSA(**kw).fit([3, 3, 2])
    assert np.array_equal(a.suite_, b.suite_) and np.array_equal(a.suite_, c.suite_)
    assert a.suite_.shape == (a.n_cases_, 3)


def test_best_of_runs():
    est = PairwiseGSA(population_size=20, max_iterations=20, n_runs=4, random_state=10).fit("3^4")
    assert len(est.run_sizes_) == 4
    assert est.n_cases_ == min(est.run_sizes_)
    assert est.score() == 100.0


def test_score_before_fit():
    with pytest.raises(NotFittedError):
        PairwiseGSA().score()


@pytest.mark.parametrize("bad", ["1^4", [3], [[2, 2]], "x"])
def test_invalid_config(bad):
    with pytest.raises(ValueError):
        PairwiseGSA(population_size=5, max_iterations=2).fit(bad)


def test_invalid_params_raise_at_fit():
    with pytest.raises(ValueError):
        PairwiseGSA(population_size=1).fit("2^3")
    with pytest.raises(ValueError):
        PairwiseGSA(n_runs=0).fit("2^3")
