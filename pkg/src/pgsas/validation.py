"""Input checking for configs and suites coming from users or files."""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from .sut import SutConfig, parse_config

__all__ = ["SuiteFormatError", "check_config", "check_suite_array", "parse_suite_text", "format_suite"]

ConfigLike = Union[str, SutConfig, Sequence[int]]


class SuiteFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def check_config(config: ConfigLike) -> SutConfig:
    """Accept a config string, a :class:`SutConfig`, or a list of cardinalities."""
    if isinstance(config, SutConfig):
        return config
    if isinstance(config, str):
        return parse_config(config)
    arr = np.asarray(config)
    if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"expected a 1-d sequence of integer cardinalities, got {config!r}")
    return SutConfig(tuple(int(v) for v in arr))


def check_suite_array(rows: Iterable[Sequence[int]], config: SutConfig) -> np.ndarray:
    """Return ``rows`` as an ``(n, p)`` int array after range checks."""
    arr = np.asarray(list(rows), dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, config.p), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != config.p:
        raise ValueError(f"suite must have shape (n, {config.p}), got {arr.shape}")
    upper = np.asarray(config.cardinalities)
    bad = (arr < 0) | (arr >= upper)
    if bad.any():
        r, d = map(int, np.argwhere(bad)[0])
        raise ValueError(f"case {r}: value {arr[r, d]} out of range [0, {upper[d]}) for parameter {d}")
    return arr


def parse_suite_text(text: str, config: SutConfig) -> list[list[int]]:
    """Whitespace-separated value indices, one case per line; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise SuiteFormatError(lineno, f"non-integer token in {line!r}") from None
        if len(row) != config.p:
            raise SuiteFormatError(lineno, f"expected {config.p} values, got {len(row)}")
        for d, (x, v) in enumerate(zip(row, config.cardinalities)):
            if not 0 <= x < v:
                raise SuiteFormatError(lineno, f"value {x} out of range [0, {v}) for parameter {d}")
        rows.append(row)
    return rows


def format_suite(rows: Iterable[Sequence]) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in rows)
