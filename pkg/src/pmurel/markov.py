"""Continuous-time Markov model of coupled hardware-software failure.

The unified state model has eight explicit states:

    UP      healthy and fully functional
    HD1     partial hardware degradation, detected but not recoverable
    HD2     partial hardware degradation, detected and recoverable by software
    HD3     undetected hardware degradation, heading to failure
    SD      software degradation (accumulating errors)
    F_HW    hardware-caused total failure (reached from HD1/HD2)
    F_INT   hardware-software interaction failure (reached from HD3)
    F_SW    software-caused total failure (reached from SD)

The three F_* states together form the total-failure aggregate.  The chain's
interaction reliability is the probability mass still inside the operational
subset {UP, HD1, HD2, HD3} at time t.

Transient distributions are solved by uniformization: the generator Q is
embedded into a discrete chain P = I + Q/rate driven by a Poisson number of
jumps, and the Poisson series is truncated once its mass reaches
1 - 1e-10.  Long horizons are split into steps so the Poisson weights never
underflow.  Generators with a vanishing uniformization rate fall back to a
truncated power series of exp(Q t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

STATES: tuple[str, ...] = ("UP", "HD1", "HD2", "HD3", "SD", "F_HW", "F_INT", "F_SW")
OPERATIONAL_STATES: tuple[str, ...] = ("UP", "HD1", "HD2", "HD3")
FAILURE_STATES: tuple[str, ...] = ("F_HW", "F_INT", "F_SW")

# The only transitions the unified model admits.  Failure states are
# absorbing; HD2 -> UP is software-driven recovery and SD -> UP an optional
# restart, both defaulting to rate 0.
ALLOWED_TRANSITIONS: tuple[str, ...] = (
    "UP->HD1",
    "UP->HD2",
    "UP->HD3",
    "UP->SD",
    "HD1->F_HW",
    "HD2->F_HW",
    "HD2->UP",
    "HD3->F_INT",
    "SD->F_SW",
    "SD->UP",
)

_ROW_SUM_TOL = 1e-12
_POISSON_TRUNCATION_EPS = 1e-10
# Cap on the Poisson mean per uniformization step; larger horizons are split.
_MAX_STEP_MEAN = 64.0
# Below this jump count the Poisson machinery is pointless; use the plain
# power series of exp(Q t).
_SERIES_THRESHOLD = 1e-6


def parse_transition(name: str) -> tuple[str, str]:
    """Split a 'SRC->DST' transition label."""
    src, sep, dst = name.partition("->")
    if not sep or not src or not dst:
        raise ValueError(f"malformed transition name {name!r}; expected 'SRC->DST'")
    return src, dst


@dataclass(frozen=True)
class GeneratorMatrix:
    """Transition-rate matrix of a labeled CTMC.

    Off-diagonal entry [i, j] is the rate of the i -> j transition; each
    diagonal entry is the negative row sum, so rows sum to zero.
    """

    states: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        states = tuple(self.states)
        if len(set(states)) != len(states) or not states:
            raise ValueError("states must be a nonempty tuple of unique names")
        m = np.array(self.matrix, dtype=float)
        n = len(states)
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match {n} states")
        if not np.all(np.isfinite(m)):
            raise ValueError("generator entries must be finite")
        off = m.copy()
        np.fill_diagonal(off, 0.0)
        if np.any(off < 0.0):
            raise ValueError("off-diagonal generator entries must be >= 0")
        rows = m.sum(axis=1)
        if np.any(np.abs(rows) > _ROW_SUM_TOL * max(1.0, np.abs(m).max())):
            raise ValueError(f"generator rows must sum to 0, got {rows}")
        m.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_rates(cls, states, rates: Mapping[str, float]) -> "GeneratorMatrix":
        """Build a generator from 'SRC->DST' labeled rates.

        Unnamed transitions default to rate 0; the diagonal is filled with
        negative row sums.
        """
        states = tuple(states)
        index = {s: i for i, s in enumerate(states)}
        m = np.zeros((len(states), len(states)))
        for name, rate in rates.items():
            src, dst = parse_transition(name)
            for s in (src, dst):
                if s not in index:
                    raise ValueError(f"unknown state {s!r} in transition {name!r}")
            if src == dst:
                raise ValueError(f"self-transition {name!r} is not allowed")
            rate = float(rate)
            if not math.isfinite(rate) or rate < 0.0:
                raise ValueError(f"rate for {name} must be finite and >= 0, got {rate}")
            m[index[src], index[dst]] += rate
        np.fill_diagonal(m, 0.0)
        np.fill_diagonal(m, -m.sum(axis=1))
        return cls(states, m)

    def index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise ValueError(f"unknown state {state!r}") from None

    def rate(self, src: str, dst: str) -> float:
        return float(self.matrix[self.index(src), self.index(dst)])


@dataclass(frozen=True)
class StateDistribution:
    """Probability per state at one instant."""

    states: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        states = tuple(self.states)
        p = np.array(self.probs, dtype=float)
        if p.shape != (len(states),):
            raise ValueError("probability vector length does not match states")
        if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
            raise ValueError(f"probabilities must lie in [0, 1], got {p}")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
        p.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "probs", p)

    @classmethod
    def point_mass(cls, states, state: str) -> "StateDistribution":
        states = tuple(states)
        p = np.zeros(len(states))
        p[states.index(state)] = 1.0
        return cls(states, p)

    def __getitem__(self, state: str) -> float:
        return float(self.probs[self.states.index(state)])

    def as_dict(self) -> dict[str, float]:
        return {s: float(p) for s, p in zip(self.states, self.probs)}


def build_unified_model(rates: Mapping[str, float]) -> GeneratorMatrix:
    """Generator of the eight-state model from named transition rates.

    Only the transitions in ALLOWED_TRANSITIONS may be given; anything else
    is rejected.  Unspecified rates default to 0, which leaves the failure
    states absorbing and disables the optional recovery paths.
    """
    for name in rates:
        if name not in ALLOWED_TRANSITIONS:
            raise ValueError(
                f"transition {name!r} is not part of the model; "
                f"allowed: {', '.join(ALLOWED_TRANSITIONS)}"
            )
    return GeneratorMatrix.from_rates(STATES, rates)


def _series_step(q: np.ndarray, x: np.ndarray, t: float) -> np.ndarray:
    # Power series of x @ exp(Q t); only used when ||Q t|| is tiny, where a
    # handful of terms reach machine precision.
    result = x.copy()
    term = x.copy()
    for k in range(1, 60):
        term = (term @ q) * (t / k)
        result += term
        if np.abs(term).max() <= 1e-18 * max(1.0, np.abs(result).max()):
            break
    return result


def _uniformized_step(q: np.ndarray, x: np.ndarray, t: float, rate: float, eps: float) -> np.ndarray:
    # One uniformization step: sum_k Poisson(rate*t, k) * x @ P^k with
    # P = I + Q/rate, truncated when the accumulated Poisson mass reaches
    # 1 - eps.  rate*t must be small enough that exp(-rate*t) does not
    # underflow (guaranteed by the step splitting in transient_distribution).
    mean = rate * t
    p = np.eye(q.shape[0]) + q / rate
    weight = math.exp(-mean)
    cumulative = weight
    vec = x.copy()
    result = weight * vec
    k = 0
    # Loop guard: past mean + 12*sqrt(mean) the Poisson tail is far below
    # any eps we use; without it, rounding could stall `cumulative` just
    # under the target.
    k_max = int(mean + 12.0 * math.sqrt(mean) + 60.0)
    while cumulative < 1.0 - eps and k < k_max:
        k += 1
        vec = vec @ p
        weight *= mean / k
        cumulative += weight
        result += weight * vec
    return result


def transient_distribution(
    g: GeneratorMatrix, initial: StateDistribution, t: float
) -> StateDistribution:
    """Distribution at time t of the chain started from ``initial``.

    Solves the forward equations by uniformization with Poisson truncation
    error at most 1e-10 over the whole horizon.
    """
    t = float(t)
    if math.isnan(t) or t < 0.0:
        raise ValueError(f"time must be >= 0, got {t}")
    if initial.states != g.states:
        raise ValueError("initial distribution is labeled for different states")
    if t == 0.0:
        return StateDistribution(g.states, initial.probs)

    q = g.matrix
    rate = float(np.max(-np.diag(q)))
    x = np.array(initial.probs, dtype=float)
    if rate * t <= _SERIES_THRESHOLD:
        x = _series_step(q, x, t)
    else:
        n_steps = max(1, math.ceil(rate * t / _MAX_STEP_MEAN))
        step_eps = _POISSON_TRUNCATION_EPS / n_steps
        dt = t / n_steps
        for _ in range(n_steps):
            x = _uniformized_step(q, x, dt, rate, step_eps)
    np.clip(x, 0.0, 1.0, out=x)
    return StateDistribution(g.states, x)


def interaction_reliability_markov(g: GeneratorMatrix, t: float) -> float:
    """Probability the chain started in UP is still operational at time t.

    Operational means any of {UP, HD1, HD2, HD3} that exist in the model;
    the chain is started as a point mass on UP.
    """
    dist = transient_distribution(g, StateDistribution.point_mass(g.states, "UP"), t)
    total = sum(dist[s] for s in OPERATIONAL_STATES if s in g.states)
    return min(1.0, total)
