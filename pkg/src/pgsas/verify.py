"""Brute-force pairwise coverage oracle.

Deliberately naive and self-contained: it enumerates its own tuples and scans
every case for every tuple, sharing no code with :mod:`pgsas.tuples`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .sut import SutConfig

__all__ = ["CoverageReport", "all_pairs", "verify_coverage", "coverage_percentage", "lower_bound"]


@dataclass(frozen=True)
class CoverageReport:
    total: int
    covered: int
    missing: tuple[tuple[int, int, int, int], ...]  # (i, j, a, b)

    @property
    def complete(self) -> bool:
        return not self.missing

    @property
    def percentage(self) -> float:
        return 100.0 * self.covered / self.total

    def to_dict(self) -> dict:
        return {
            "total_tuples": self.total,
            "covered": self.covered,
            "missing_count": len(self.missing),
            "missing": [list(m) for m in self.missing],
            "complete": self.complete,
            "coverage_percentage": self.percentage,
        }


def all_pairs(config: SutConfig) -> list[tuple[int, int, int, int]]:
    cards = config.cardinalities
    out = []
    for i in range(len(cards)):
        for j in range(i + 1, len(cards)):
            for a in range(cards[i]):
                for b in range(cards[j]):
                    out.append((i, j, a, b))
    return out


def _rows(suite) -> list[Sequence[int]]:
    if hasattr(suite, "as_rows"):
        return suite.as_rows()
    return [list(r) for r in suite]


def verify_coverage(suite: Iterable[Sequence[int]], config: SutConfig) -> CoverageReport:
    """Check every pairwise tuple of ``config`` against every case of ``suite``.

    ``suite`` may be a :class:`~pgsas.sut.TestSuite` or any iterable of rows.
    """
    rows = _rows(suite)
    for n, row in enumerate(rows):
        if len(row) != config.p:
            raise ValueError(f"case {n} has {len(row)} values, expected {config.p}")
    missing = []
    universe = all_pairs(config)
    for i, j, a, b in universe:
        if not any(row[i] == a and row[j] == b for row in rows):
            missing.append((i, j, a, b))
    return CoverageReport(len(universe), len(universe) - len(missing), tuple(missing))


def coverage_percentage(suite, config: SutConfig) -> float:
    return verify_coverage(suite, config).percentage


def lower_bound(config: SutConfig) -> int:
    """Product of the two largest cardinalities; no pairwise suite can be smaller."""
    a, b = sorted(config.cardinalities, reverse=True)[:2]
    return a * b
