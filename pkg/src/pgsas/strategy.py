"""One-test-at-a-time suite construction driven by gravitational search.

Every cycle starts a fresh population, searches for the candidate that covers
the most still-uncovered tuples, keeps the best candidate seen anywhere in the
cycle, and strikes its tuples off the list.  Cycles repeat until nothing is
left to cover.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .gsa import (
    GsaParams,
    compute_forces,
    compute_masses,
    decode_positions,
    evaluate_population,
    init_population,
    update_kinematics,
)
from .sut import SutConfig, TestCase, TestSuite, format_config
from .tuples import TupleList, generate_tuples

__all__ = [
    "SCHEMA_VERSION",
    "CaseRecord",
    "StrategyReport",
    "generate_suite",
    "select_best_of_cycle",
    "progress_fallback",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CaseRecord:
    values: tuple[int, ...]
    iterations: int  # population evaluations spent in the cycle
    weight: int  # tuples newly covered by this case
    remaining: int  # uncovered tuples left after accepting it
    fallback: bool = False


@dataclass
class StrategyReport:
    suite: TestSuite
    records: list[CaseRecord]
    seed: Optional[int]
    params: GsaParams
    initial_tuples: int
    total_iterations: int = 0
    fallbacks: int = 0
    resampled: int = 0
    duration: float = 0.0
    trace: Optional[list[tuple[int, int, float, float, float]]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.suite)

    def to_dict(self, *, include_timing: bool = True) -> dict:
        """Structured form; drop timing for byte-stable output."""
        out = {
            "schema_version": SCHEMA_VERSION,
            "config": format_config(self.suite.config),
            "cardinalities": list(self.suite.config.cardinalities),
            "seed": self.seed,
            "params": asdict(self.params),
            "size": self.size,
            "initial_tuples": self.initial_tuples,
            "total_iterations": self.total_iterations,
            "fallbacks": self.fallbacks,
            "resampled": self.resampled,
            "suite": self.suite.as_rows(),
            "records": [
                {
                    "values": list(r.values),
                    "iterations": r.iterations,
                    "weight": r.weight,
                    "remaining": r.remaining,
                    "fallback": r.fallback,
                }
                for r in self.records
            ],
        }
        if include_timing:
            out["duration_s"] = round(self.duration, 6)
        return out

    def trace_csv(self) -> str:
        """``cycle,t,best_fitness,worst_fitness,G`` lines, one per population evaluation."""
        if self.trace is None:
            return ""
        lines = ["cycle,t,best_fitness,worst_fitness,G"]
        lines += [f"{c},{t},{b:g},{w:g},{g:.6g}" for c, t, b, w, g in self.trace]
        return "\n".join(lines) + "\n"


def select_best_of_cycle(history: Sequence[tuple[TestCase, int]]) -> tuple[TestCase, int]:
    """Highest-weight ``(case, weight)`` entry; the earliest one wins ties."""
    if not history:
        raise ValueError("no candidates were evaluated in this cycle")
    best = history[0]
    for entry in history[1:]:
        if entry[1] > best[1]:
            best = entry
    return best


def progress_fallback(itl: TupleList, rng: np.random.Generator) -> TestCase:
    """Build a case around one uncovered tuple so the cycle still makes progress."""
    if not itl:
        raise ValueError("progress_fallback needs a non-empty tuple list")
    t = itl.random_uncovered(rng)
    cards = itl.config.cardinalities
    values = [int(rng.integers(v)) for v in cards]
    values[t.i] = t.a
    values[t.j] = t.b
    return TestCase(tuple(values))


def _search_cycle(
    config: SutConfig,
    params: GsaParams,
    itl: TupleList,
    rng: np.random.Generator,
    trace: Optional[list],
    cycle: int,
) -> tuple[TestCase, int, int, int]:
    """Run one population for up to T updates; returns (case, weight, evaluations, resampled)."""
    state = init_population(config, params, rng)
    target = itl.max_weight()
    history: list[tuple[TestCase, int]] = []
    evaluations = 0
    for t in range(params.max_iterations + 1):
        evaluate_population(state, itl.weights, vectorized=True)
        evaluations += 1
        k = int(np.argmax(state.fitness))
        row = decode_positions(state.positions[k], state.upper)
        history.append((TestCase(tuple(row.tolist())), int(state.fitness[k])))
        if trace is not None:
            trace.append((cycle, state.t, state.best, state.worst, state.G))
        if state.best >= target:
            break
        # With best == worst nothing moves, so every later iteration would
        # evaluate the exact same population.
        if state.degenerate or t == params.max_iterations:
            break
        compute_masses(state)
        forces = compute_forces(state, params)
        update_kinematics(state, forces, params)
    case, weight = select_best_of_cycle(history)
    return case, weight, evaluations, state.resampled


def generate_suite(
    config: SutConfig,
    params: Optional[GsaParams] = None,
    seed: Optional[int] = None,
    *,
    trace: bool = False,
    deadline: Optional[float] = None,
) -> StrategyReport:
    """Build a complete pairwise suite for ``config``.

    The same ``(config, params, seed)`` always yields the same suite.
    ``deadline`` is a wall-clock budget in seconds, checked between cycles;
    running past it raises :class:`TimeoutError`.
    """
    params = params or GsaParams()
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    itl = generate_tuples(config)
    cases: list[TestCase] = []
    records: list[CaseRecord] = []
    total_iterations = fallbacks = resampled = 0
    trace_rows: Optional[list] = [] if trace else None

    while itl:
        if deadline is not None and time.perf_counter() - start > deadline:
            raise TimeoutError(
                f"seed {seed}: exceeded {deadline:g}s with {len(itl)} tuples uncovered"
            )
        case, weight, evals, res = _search_cycle(config, params, itl, rng, trace_rows, len(cases))
        total_iterations += evals
        resampled += res
        used_fallback = weight == 0
        if used_fallback:
            case = progress_fallback(itl, rng)
            fallbacks += 1
        removed = itl.remove(case)
        if removed == 0:  # pragma: no cover - guarded by progress_fallback
            raise RuntimeError(f"accepted test case {case.values} covered nothing")
        cases.append(case)
        records.append(CaseRecord(case.values, evals, removed, len(itl), used_fallback))

    duration = time.perf_counter() - start
    suite = TestSuite(
        tuple(cases),
        config,
        {"seed": seed, "total_iterations": total_iterations, "duration_s": duration},
    )
    return StrategyReport(
        suite=suite,
        records=records,
        seed=seed,
        params=params,
        initial_tuples=itl.initial_count,
        total_iterations=total_iterations,
        fallbacks=fallbacks,
        resampled=resampled,
        duration=duration,
        trace=trace_rows,
    )
