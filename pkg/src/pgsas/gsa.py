"""Gravitational search over a box of continuous positions.

Each object is a point in ``[0, v_1 - 1] x ... x [0, v_p - 1]``; rounding a
position gives a discrete test case.  Heavier (fitter) objects pull lighter
ones towards them with a force that fades as the gravitational constant
decays, and only the ``K`` fittest objects exert any pull at all.

All state lives in numpy arrays on :class:`GsaState`; the per-object
:class:`GsaObject` view exists for inspection and tests.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.spatial.distance import cdist

from .sut import SutConfig, TestCase

__all__ = [
    "DecodeError",
    "GsaParams",
    "GsaObject",
    "GsaState",
    "init_population",
    "decode_position",
    "decode_positions",
    "evaluate_population",
    "compute_masses",
    "gravitational_constant",
    "kbest_size",
    "kbest_indices",
    "compute_forces",
    "update_kinematics",
]

logger = logging.getLogger(__name__)

DISTANCES = ("position", "mass")


class DecodeError(ValueError):
    """A position contained NaN or infinity."""


@dataclass(frozen=True)
class GsaParams:
    population_size: int = 200
    g0: float = 10.0
    alpha: float = 20.0
    epsilon: float = 1e-9
    max_iterations: int = 500
    # "position": R_ij is the euclidean distance between positions.
    # "mass": R_ij = |M_j - M_i|, the literal mass-difference formula.
    distance: str = "position"

    def __post_init__(self) -> None:
        if int(self.population_size) != self.population_size or self.population_size < 2:
            raise ValueError(f"population_size must be an integer >= 2, got {self.population_size}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an integer >= 1, got {self.max_iterations}")
        if not self.g0 > 0:
            raise ValueError(f"g0 must be > 0, got {self.g0}")
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.distance not in DISTANCES:
            raise ValueError(f"distance must be one of {DISTANCES}, got {self.distance!r}")


@dataclass(frozen=True)
class GsaObject:
    position: np.ndarray
    velocity: np.ndarray
    fitness: float
    mass: float


@dataclass
class GsaState:
    positions: np.ndarray  # (N, p)
    velocities: np.ndarray  # (N, p)
    upper: np.ndarray  # (p,) inclusive upper bound v_d - 1
    rng: np.random.Generator
    max_iterations: int
    t: int = 0
    G: float = 0.0
    fitness: Optional[np.ndarray] = None
    masses: Optional[np.ndarray] = None  # normalized, sums to 1
    best: Optional[float] = None
    worst: Optional[float] = None
    resampled: int = 0
    trace: Optional[list] = field(default=None, repr=False)

    @property
    def n_objects(self) -> int:
        return self.positions.shape[0]

    @property
    def objects(self) -> list[GsaObject]:
        n = self.n_objects
        fit = self.fitness if self.fitness is not None else np.full(n, np.nan)
        mass = self.masses if self.masses is not None else np.full(n, np.nan)
        return [
            GsaObject(self.positions[i].copy(), self.velocities[i].copy(), float(fit[i]), float(mass[i]))
            for i in range(n)
        ]

    @property
    def degenerate(self) -> bool:
        return self.best == self.worst


def init_population(
    config: SutConfig,
    params: GsaParams,
    rng: np.random.Generator,
    *,
    trace: bool = False,
) -> GsaState:
    """Uniform positions in the parameter box, zero velocities, ``t = 0``."""
    upper = np.asarray(config.cardinalities, dtype=float) - 1.0
    positions = rng.random((params.population_size, config.p)) * upper
    return GsaState(
        positions=positions,
        velocities=np.zeros_like(positions),
        upper=upper,
        rng=rng,
        max_iterations=params.max_iterations,
        t=0,
        G=gravitational_constant(0, params),
        trace=[] if trace else None,
    )


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.where(x >= 0, np.floor(x + 0.5), np.ceil(x - 0.5))


def decode_positions(positions: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Round half away from zero, then clamp each column into ``[0, upper_d]``."""
    r = _round_half_away(positions)
    np.maximum(r, 0, out=r)
    np.minimum(r, upper, out=r)
    return r.astype(np.int64)


def decode_position(position, config: SutConfig) -> TestCase:
    x = np.asarray(position, dtype=float)
    if x.shape != (config.p,):
        raise ValueError(f"position has shape {x.shape}, expected ({config.p},)")
    if not np.all(np.isfinite(x)):
        raise DecodeError(f"non-finite coordinate in position {x.tolist()}")
    upper = np.asarray(config.cardinalities, dtype=float) - 1.0
    return TestCase(tuple(decode_positions(x, upper).tolist()))


def evaluate_population(
    state: GsaState,
    fitness_fn: Callable,
    *,
    vectorized: bool = False,
) -> GsaState:
    """Score every object's decoded test case; larger fitness is better.

    ``fitness_fn`` takes a :class:`TestCase`, or with ``vectorized=True`` the
    whole ``(N, p)`` integer array of decoded cases.
    """
    cases = decode_positions(state.positions, state.upper)
    if vectorized:
        fitness = np.asarray(fitness_fn(cases), dtype=float)
    else:
        fitness = np.array([fitness_fn(TestCase(tuple(row))) for row in cases.tolist()], dtype=float)
    state.fitness = fitness
    state.best = float(fitness.max())
    state.worst = float(fitness.min())
    return state


def compute_masses(state: GsaState) -> GsaState:
    if state.fitness is None:
        raise RuntimeError("evaluate_population must run before compute_masses")
    if state.best == state.worst:
        raise ValueError("compute_masses called on a degenerate population (best == worst)")
    m = (state.fitness - state.worst) / (state.best - state.worst)
    state.masses = m / m.sum()
    return state


def gravitational_constant(t: int, params: GsaParams) -> float:
    return params.g0 * math.exp(-params.alpha * t / params.max_iterations)


def kbest_size(t: int, params: GsaParams) -> int:
    """Linear decay from ``N`` at ``t = 0`` to 1 at ``t = T``."""
    n = params.population_size
    k = math.floor(n * (1.0 - t / params.max_iterations) + 0.5)
    return max(1, min(n, k))


def kbest_indices(fitness: np.ndarray, k: int) -> np.ndarray:
    """Indices of the ``k`` fittest objects; ties go to the lower index."""
    return np.argsort(-np.asarray(fitness), kind="stable")[:k]


def compute_forces(state: GsaState, params: GsaParams) -> np.ndarray:
    """Total pull on every object from the current K-best set.

    One uniform draw per (receiver, source) pair, taken as an ``(N, K)`` block
    in row-major order.
    """
    if state.masses is None:
        raise RuntimeError("compute_masses must run before compute_forces")
    X = state.positions
    M = state.masses
    src = kbest_indices(state.fitness, kbest_size(state.t, params))
    Xk = X[src]
    D = cdist(X, Xk)
    if params.distance == "position":
        R = D + params.epsilon
    else:
        R = np.abs(M[src][None, :] - M[:, None])
        R += params.epsilon
    coef = state.rng.random(D.shape)
    coef *= (state.G * M)[:, None]
    coef *= M[src]
    coef /= R
    # coincident pairs (self included) contribute exactly nothing; dropping
    # them also keeps their 1/epsilon coefficients out of the cancellation below
    coef[D == 0] = 0.0
    # sum_j c_ij (x_j - x_i) == (C @ Xk)_i - (sum_j c_ij) x_i
    return coef @ Xk - coef.sum(axis=1)[:, None] * X


def update_kinematics(state: GsaState, forces: np.ndarray, params: GsaParams) -> GsaState:
    """Acceleration, velocity and position update, then clamp and advance ``t``."""
    M = state.masses
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        accel = forces / np.maximum(M, params.epsilon)[:, None]
        velocities = state.rng.random(state.velocities.shape) * state.velocities + accel
        positions = state.positions + velocities
    bad = ~(np.isfinite(accel).all(axis=1) & np.isfinite(positions).all(axis=1))
    if bad.any():
        idx = np.flatnonzero(bad)
        positions[idx] = state.rng.random((idx.size, positions.shape[1])) * state.upper
        velocities[idx] = 0.0
        state.resampled += idx.size
        logger.debug("resampled %d objects with non-finite kinematics at t=%d", idx.size, state.t)
    state.velocities = velocities
    np.maximum(positions, 0.0, out=positions)
    np.minimum(positions, state.upper, out=positions)
    state.positions = positions
    state.t += 1
    state.G = gravitational_constant(state.t, params)
    return state
