"""System-under-test configuration, test cases and test suites.

A configuration is written in the usual covering-array shorthand, e.g.
``"3^4 2^2"`` for four 3-valued parameters followed by two 2-valued ones.
Value indices are 0-based throughout.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "ConfigError",
    "SutConfig",
    "TestCase",
    "TestSuite",
    "parse_config",
    "format_config",
    "exhaustive_size",
]

_SEGMENT = re.compile(r"^(\d+)\^(\d+)$")

# exhaustive_size refuses to return anything past this; callers that want an
# exact big integer should use math.prod directly.
MAX_EXHAUSTIVE = 2**63 - 1


class ConfigError(ValueError):
    """Raised for malformed or invalid configuration strings."""


@dataclass(frozen=True)
class SutConfig:
    cardinalities: tuple[int, ...]

    def __post_init__(self) -> None:
        cards = tuple(int(v) for v in self.cardinalities)
        object.__setattr__(self, "cardinalities", cards)
        if len(cards) < 2:
            raise ConfigError(
                f"pairwise testing needs at least 2 parameters, got {len(cards)}"
            )
        for d, v in enumerate(cards):
            if v < 2:
                raise ConfigError(f"parameter {d} has {v} values; at least 2 required")

    @property
    def p(self) -> int:
        return len(self.cardinalities)

    def __len__(self) -> int:
        return len(self.cardinalities)

    def __str__(self) -> str:
        return format_config(self)

    @classmethod
    def from_string(cls, text: str) -> "SutConfig":
        return parse_config(text)


def parse_config(text: str) -> SutConfig:
    """Parse ``"v^p v^p ..."`` (whitespace or comma separated) into a config.

    >>> parse_config("3^2 2^2").cardinalities
    (3, 3, 2, 2)
    """
    if not isinstance(text, str):
        raise ConfigError(f"configuration must be a string, got {type(text).__name__}")
    segments = [s for s in re.split(r"[\s,]+", text.strip()) if s]
    if not segments:
        raise ConfigError("empty configuration string")
    cards: list[int] = []
    for seg in segments:
        m = _SEGMENT.match(seg)
        if m is None:
            raise ConfigError(f"malformed segment {seg!r}; expected 'v^p'")
        v, p = int(m.group(1)), int(m.group(2))
        if v < 2:
            raise ConfigError(f"segment {seg!r}: value count must be >= 2")
        if p < 1:
            raise ConfigError(f"segment {seg!r}: parameter count must be >= 1")
        cards.extend([v] * p)
    if len(cards) < 2:
        raise ConfigError(
            f"segment {segments[-1]!r}: configuration has {len(cards)} parameter; "
            "at least 2 required"
        )
    return SutConfig(tuple(cards))


def format_config(config: SutConfig) -> str:
    """Canonical run-length form: consecutive equal cardinalities are grouped."""
    out = []
    cards = config.cardinalities
    i = 0
    while i < len(cards):
        j = i
        while j < len(cards) and cards[j] == cards[i]:
            j += 1
        out.append(f"{cards[i]}^{j - i}")
        i = j
    return " ".join(out)


def exhaustive_size(config: SutConfig) -> int:
    """Number of test cases in the full cartesian product."""
    total = math.prod(config.cardinalities)
    if total > MAX_EXHAUSTIVE:
        raise OverflowError(
            f"exhaustive size of {format_config(config)} exceeds {MAX_EXHAUSTIVE}"
        )
    return total


@dataclass(frozen=True)
class TestCase:
    values: tuple[int, ...]

    __test__ = False  # keep pytest from collecting this class

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))

    def validate(self, config: SutConfig) -> None:
        if len(self.values) != config.p:
            raise ValueError(
                f"test case has {len(self.values)} values, config has {config.p} parameters"
            )
        for d, (x, v) in enumerate(zip(self.values, config.cardinalities)):
            if not 0 <= x < v:
                raise ValueError(f"value {x} out of range [0, {v}) for parameter {d}")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, d: int) -> int:
        return self.values[d]


@dataclass(frozen=True)
class TestSuite:
    cases: tuple[TestCase, ...]
    config: SutConfig
    metadata: dict = field(default_factory=dict, compare=False)

    __test__ = False

    def __post_init__(self) -> None:
        cases = tuple(c if isinstance(c, TestCase) else TestCase(c) for c in self.cases)
        object.__setattr__(self, "cases", cases)
        seen = set()
        for c in cases:
            c.validate(self.config)
            if c.values in seen:
                raise ValueError(f"duplicate test case {list(c.values)}")
            seen.add(c.values)

    @classmethod
    def from_rows(
        cls, rows: Iterable[Sequence[int]], config: SutConfig, **metadata
    ) -> "TestSuite":
        return cls(tuple(TestCase(tuple(r)) for r in rows), config, dict(metadata))

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)

    def as_rows(self) -> list[list[int]]:
        return [list(c.values) for c in self.cases]
