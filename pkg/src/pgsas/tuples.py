"""Pairwise interaction tuples and the list of tuples still to be covered.

The uncovered set is kept as one flat boolean array with a block of
``v_i * v_j`` slots per parameter pair ``(i, j)``.  Scoring a test case then
touches exactly one slot per pair, so a whole population can be scored with a
single gather.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .sut import SutConfig, TestCase

__all__ = [
    "InteractionTuple",
    "TupleList",
    "generate_parameter_pairs",
    "generate_tuples",
    "weight_coverage",
    "remove_covered",
]


class InteractionTuple(NamedTuple):
    """Parameter ``i`` takes value ``a`` and parameter ``j`` takes value ``b``; ``i < j``."""

    i: int
    a: int
    j: int
    b: int

    @classmethod
    def of(cls, first: tuple[int, int], second: tuple[int, int]) -> "InteractionTuple":
        (i, a), (j, b) = sorted((tuple(first), tuple(second)))
        if i == j:
            raise ValueError(f"an interaction tuple needs two distinct parameters, got {i} twice")
        return cls(int(i), int(a), int(j), int(b))

    def covered_by(self, values: Sequence[int]) -> bool:
        return values[self.i] == self.a and values[self.j] == self.b


def generate_parameter_pairs(config: SutConfig) -> list[tuple[int, int]]:
    """All ``C(p, 2)`` parameter pairs ``(i, j)``, ``i < j``, in lexicographic order."""
    return list(combinations(range(config.p), 2))


def _as_array(candidate) -> np.ndarray:
    if isinstance(candidate, TestCase):
        candidate = candidate.values
    return np.asarray(candidate, dtype=np.int64)


class TupleList:
    """Mutable set of not-yet-covered pairwise interaction tuples for a config."""

    def __init__(self, config: SutConfig):
        self.config = config
        self.pairs = generate_parameter_pairs(config)
        cards = np.asarray(config.cardinalities, dtype=np.int64)
        self._cards = cards
        self._left = np.array([i for i, _ in self.pairs], dtype=np.int64)
        self._right = np.array([j for _, j in self.pairs], dtype=np.int64)
        self._stride = cards[self._right]
        sizes = cards[self._left] * cards[self._right]
        self._offsets = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64)
        self._sizes = sizes
        self.initial_count = int(sizes.sum())
        self._uncovered = np.ones(self.initial_count, dtype=bool)
        self._pair_remaining = sizes.copy()
        self._count = self.initial_count

    # -- set-like protocol -------------------------------------------------

    def __len__(self) -> int:
        return self._count

    def __bool__(self) -> bool:
        return self._count > 0

    def _slot(self, t: InteractionTuple) -> int:
        k = self._pair_index(t.i, t.j)
        return int(self._offsets[k] + t.a * self._stride[k] + t.b)

    def _pair_index(self, i: int, j: int) -> int:
        # lexicographic rank of (i, j) among combinations(range(p), 2)
        p = self.config.p
        return i * (2 * p - i - 1) // 2 + (j - i - 1)

    def __contains__(self, t) -> bool:
        t = InteractionTuple(*t)
        if not (0 <= t.i < t.j < self.config.p):
            return False
        if not (0 <= t.a < self._cards[t.i] and 0 <= t.b < self._cards[t.j]):
            return False
        return bool(self._uncovered[self._slot(t)])

    def __iter__(self) -> Iterator[InteractionTuple]:
        for slot in np.flatnonzero(self._uncovered):
            yield self.tuple_at(int(slot))

    def tuple_at(self, slot: int) -> InteractionTuple:
        k = int(np.searchsorted(self._offsets, slot, side="right") - 1)
        a, b = divmod(slot - int(self._offsets[k]), int(self._stride[k]))
        i, j = self.pairs[k]
        return InteractionTuple(i, int(a), j, int(b))

    @property
    def uncovered(self) -> frozenset[InteractionTuple]:
        return frozenset(self)

    @property
    def coverage_fraction(self) -> float:
        return 1.0 - self._count / self.initial_count

    def copy(self) -> "TupleList":
        new = TupleList.__new__(TupleList)
        new.__dict__.update(self.__dict__)
        new._uncovered = self._uncovered.copy()
        new._pair_remaining = self._pair_remaining.copy()
        return new

    # -- scoring -----------------------------------------------------------

    def _slots(self, cases: np.ndarray) -> np.ndarray:
        return self._offsets + cases[..., self._left] * self._stride + cases[..., self._right]

    def weight(self, candidate) -> int:
        """Number of uncovered tuples the candidate covers.  Does not mutate."""
        return int(self._uncovered[self._slots(_as_array(candidate))].sum())

    def weights(self, cases: np.ndarray) -> np.ndarray:
        """Row-wise :meth:`weight` for an ``(n, p)`` integer array."""
        return self._uncovered[self._slots(cases)].sum(axis=-1)

    def max_weight(self) -> int:
        """Upper bound on any candidate's weight: one tuple per still-open pair."""
        return int(np.count_nonzero(self._pair_remaining))

    def remove(self, candidate) -> int:
        slots = self._slots(_as_array(candidate))
        hit = self._uncovered[slots]
        n = int(hit.sum())
        if n:
            self._uncovered[slots] = False
            self._pair_remaining -= hit
            self._count -= n
        return n

    def random_uncovered(self, rng: np.random.Generator) -> InteractionTuple:
        if not self._count:
            raise ValueError("no uncovered tuples left")
        slots = np.flatnonzero(self._uncovered)
        return self.tuple_at(int(slots[rng.integers(len(slots))]))

    def dump(self) -> str:
        """One ``i,j,a,b`` line per uncovered tuple, sorted."""
        return "".join(f"{t.i},{t.j},{t.a},{t.b}\n" for t in self)

    def __repr__(self) -> str:
        return f"TupleList({self.config}, uncovered={self._count}/{self.initial_count})"


def generate_tuples(config: SutConfig) -> TupleList:
    return TupleList(config)


def weight_coverage(candidate, itl: TupleList) -> int:
    return itl.weight(candidate)


def remove_covered(candidate, itl: TupleList) -> int:
    """Drop every tuple the candidate covers; returns how many were dropped."""
    return itl.remove(candidate)
