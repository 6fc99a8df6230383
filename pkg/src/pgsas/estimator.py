"""scikit-learn style front end for suite generation."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .gsa import GsaParams
from .strategy import generate_suite
from .validation import check_config
from .verify import verify_coverage


class PairwiseGSA(BaseEstimator):
    """Pairwise covering-array generator backed by gravitational search.

    ``fit`` takes the system under test (``"3^4"``, a :class:`SutConfig`, or a
    list of cardinalities) and keeps the smallest suite found over ``n_runs``
    seeded runs.

    Parameters
    ----------
    population_size, g0, alpha, epsilon, max_iterations, distance
        Search settings, see :class:`pgsas.gsa.GsaParams`.
    n_runs : int
        Independent runs with seeds ``random_state, random_state + 1, ...``.
    random_state : int or None
        Seed of the first run.

    Attributes
    ----------
    config_ : SutConfig
    suite_ : ndarray of shape (n_cases, p)
    report_ : StrategyReport of the best run
    run_sizes_ : list of int
    n_cases_ : int

    Examples
    --------
    >>> gen = PairwiseGSA(n_runs=1, random_state=0).fit("2^3")
    >>> gen.n_cases_
    4
    """

    def __init__(
        self,
        population_size=200,
        g0=10.0,
        alpha=20.0,
        epsilon=1e-9,
        max_iterations=500,
        distance="position",
        n_runs=1,
        random_state=None,
    ):
        self.population_size = population_size
        self.g0 = g0
        self.alpha = alpha
        self.epsilon = epsilon
        self.max_iterations = max_iterations
        self.distance = distance
        self.n_runs = n_runs
        self.random_state = random_state

    def _gsa_params(self) -> GsaParams:
        return GsaParams(
            population_size=self.population_size,
            g0=self.g0,
            alpha=self.alpha,
            epsilon=self.epsilon,
            max_iterations=self.max_iterations,
            distance=self.distance,
        )

    def fit(self, X, y=None):
        config = check_config(X)
        params = self._gsa_params()
        if int(self.n_runs) < 1:
            raise ValueError(f"n_runs must be >= 1, got {self.n_runs}")
        if self.random_state is None:
            base = int(np.random.SeedSequence().entropy % 2**32)
        else:
            base = int(self.random_state)
        best = None
        sizes = []
        for r in range(int(self.n_runs)):
            report = generate_suite(config, params, seed=base + r)
            sizes.append(report.size)
            if best is None or report.size < best.size:
                best = report
        self.config_ = config
        self.report_ = best
        self.suite_ = np.asarray(best.suite.as_rows(), dtype=np.int64)
        self.run_sizes_ = sizes
        self.n_cases_ = best.size
        return self

    def score(self, X=None, y=None) -> float:
        """Pairwise coverage of the fitted suite in percent (100.0 when complete)."""
        check_is_fitted(self, "suite_")
        config = self.config_ if X is None else check_config(X)
        return verify_coverage(self.suite_.tolist(), config).percentage
