"""Sequential Monte Carlo simulation of failure/repair cycles over a mission.

Each replication alternates exponentially distributed time-to-failure and
time-to-repair draws (the constant-rate premise of the state model) and
accumulates a clock until the mission horizon.  Replications are aggregated
into availability and failure-count estimates plus the interval-bucketed
exposure table consumed by the rate-fitting module.

Reproducibility contract: replication i draws from an independent substream
derived from (master_seed, i) via numpy's SeedSequence spawn keys, and
aggregation always reduces in replication order.  The same configuration
therefore produces bit-identical results no matter how many workers execute
the replications.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SimulationConfig:
    """Inputs of one simulation campaign (rates per unit time, times in the
    same unit)."""

    failure_rate: float
    repair_rate: float
    mission_time: float
    n_replications: int = 10000
    master_seed: int = 42
    n_intervals: int = 8

    def __post_init__(self) -> None:
        for name in ("failure_rate", "repair_rate"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {v}")
        if not math.isfinite(self.mission_time) or self.mission_time <= 0.0:
            raise ValueError(f"mission_time must be > 0, got {self.mission_time}")
        if int(self.n_replications) != self.n_replications or self.n_replications < 1:
            raise ValueError(f"n_replications must be an integer >= 1, got {self.n_replications}")
        if int(self.n_intervals) != self.n_intervals or self.n_intervals < 1:
            raise ValueError(f"n_intervals must be an integer >= 1, got {self.n_intervals}")
        if int(self.master_seed) != self.master_seed or self.master_seed < 0:
            raise ValueError(f"master_seed must be a nonnegative integer, got {self.master_seed}")


def replication_rng(master_seed: int, replication_index: int) -> np.random.Generator:
    """Independent random substream for one replication.

    Built from SeedSequence(master_seed) spawn key (replication_index,), so
    any replication's stream can be constructed directly without generating
    the preceding ones.
    """
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(replication_index,))
    return np.random.default_rng(seq)


def sample_exponential(rate: float, rng: np.random.Generator) -> float:
    """One exponential draw via inverse transform, -ln(u)/rate.

    u is uniform on (0, 1): an exact-zero draw is rejected so the sample is
    always strictly positive and finite.
    """
    if not math.isfinite(rate) or rate <= 0.0:
        raise ValueError(f"rate must be finite and > 0, got {rate}")
    u = rng.random()
    while u <= 0.0:
        u = rng.random()
    return -math.log(u) / rate


@dataclass(frozen=True)
class ReplicationTrace:
    """Failure/repair history of one replication, truncated at the mission end.

    ``cycles`` holds one (time_to_failure, repair_time) pair per failure that
    occurred before the mission horizon; the repair time of the last pair is
    clipped at the horizon if the mission ended mid-repair.  A final up
    period that ran out the mission clock appears in ``up_time`` only.
    """

    cycles: tuple[tuple[float, float], ...]
    n_failures: int
    up_time: float
    down_time: float

    def failure_times(self) -> list[float]:
        """Absolute occurrence time of each failure, in order."""
        times = []
        clock = 0.0
        for ttf, ttr in self.cycles:
            clock += ttf
            times.append(clock)
            clock += ttr
        return times

    def up_periods(self, mission_time: float) -> list[tuple[float, float]]:
        """Operating intervals [start, end] within [0, mission_time]."""
        periods = []
        clock = 0.0
        for ttf, ttr in self.cycles:
            periods.append((clock, clock + ttf))
            clock += ttf + ttr
        if clock < mission_time:
            periods.append((clock, mission_time))
        return periods


def run_replication(cfg: SimulationConfig, replication_index: int) -> ReplicationTrace:
    """Simulate one mission: alternate failure and repair draws until the
    clock passes the horizon, crediting the final partial period only up to
    the horizon."""
    rng = replication_rng(cfg.master_seed, replication_index)
    horizon = cfg.mission_time
    clock = 0.0
    cycles = []
    up_time = 0.0
    down_time = 0.0
    while True:
        ttf = sample_exponential(cfg.failure_rate, rng)
        if clock + ttf >= horizon:
            up_time += horizon - clock
            break
        up_time += ttf
        clock += ttf
        ttr = sample_exponential(cfg.repair_rate, rng)
        credited = min(ttr, horizon - clock)
        down_time += credited
        cycles.append((ttf, credited))
        clock += credited
        if clock >= horizon:
            break
    return ReplicationTrace(
        cycles=tuple(cycles),
        n_failures=len(cycles),
        up_time=up_time,
        down_time=down_time,
    )


@dataclass(frozen=True)
class ExposureTable:
    """Aggregate exposure per mission sub-interval.

    counts[i] is the number of failures observed in interval i+1 across all
    replications; times[i] is the operating (up) time accumulated there.
    Simulation output always has whole-valued counts, but the type admits
    fractional ones so that analytically constructed tables (e.g. exact-fit
    fixtures) can be expressed too.
    """

    counts: tuple[float, ...]
    times: tuple[float, ...]

    def __post_init__(self) -> None:
        counts = tuple(float(c) for c in self.counts)
        times = tuple(float(t) for t in self.times)
        if len(counts) != len(times) or not counts:
            raise ValueError("counts and times must be equally sized and nonempty")
        if not all(math.isfinite(c) and c >= 0.0 for c in counts):
            raise ValueError("exposure counts must be finite and >= 0")
        if not all(math.isfinite(t) and t >= 0.0 for t in times):
            raise ValueError("exposure times must be finite and >= 0")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "times", times)

    @property
    def n_intervals(self) -> int:
        return len(self.counts)

    def rows(self) -> list[tuple[int, float, float]]:
        """(interval, X_i, T_i) rows, interval numbered from 1."""
        return [(i + 1, x, t) for i, (x, t) in enumerate(zip(self.counts, self.times))]


def build_exposure_table(traces, cfg: SimulationConfig) -> ExposureTable:
    """Bucket failures and operating time into equal mission sub-intervals.

    A failure landing exactly on an interior boundary belongs to the earlier
    (right-closed) interval; the final interval is closed at the horizon.
    """
    traces = list(traces)
    if not traces:
        raise ValueError("need at least one replication trace")
    n = cfg.n_intervals
    edges = np.linspace(0.0, cfg.mission_time, n + 1)
    counts = [0] * n
    times = [0.0] * n
    for trace in traces:
        for ft in trace.failure_times():
            idx = int(np.searchsorted(edges, ft, side="left"))
            idx = min(max(idx, 1), n)
            counts[idx - 1] += 1
        for start, end in trace.up_periods(cfg.mission_time):
            first = max(int(np.searchsorted(edges, start, side="right")) - 1, 0)
            for i in range(first, n):
                overlap = min(end, edges[i + 1]) - max(start, edges[i])
                if overlap <= 0.0:
                    break
                times[i] += overlap
    return ExposureTable(tuple(counts), tuple(times))


@dataclass(frozen=True)
class SimulationSummary:
    """Campaign-level reliability indices."""

    availability: float
    mean_failures: float
    availability_se: float
    mean_failures_se: float
    exposure: ExposureTable


def run_simulation(cfg: SimulationConfig, n_jobs: int = 1) -> SimulationSummary:
    """Run all replications and aggregate them.

    ``n_jobs`` > 1 executes replications on a thread pool; because every
    replication owns its substream and reduction happens in index order, the
    result is identical to the serial run.
    """
    if n_jobs < 1:
        raise ValueError(f"n_jobs must be >= 1, got {n_jobs}")
    indices = range(cfg.n_replications)
    if n_jobs == 1:
        traces = [run_replication(cfg, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            traces = list(pool.map(lambda i: run_replication(cfg, i), indices))

    n = cfg.n_replications
    up_fractions = np.array([t.up_time / cfg.mission_time for t in traces])
    failures = np.array([t.n_failures for t in traces], dtype=float)
    availability = float(up_fractions.sum() / n)
    mean_failures = float(failures.sum() / n)
    if n > 1:
        availability_se = float(up_fractions.std(ddof=1) / math.sqrt(n))
        mean_failures_se = float(failures.std(ddof=1) / math.sqrt(n))
    else:
        availability_se = 0.0
        mean_failures_se = 0.0
    return SimulationSummary(
        availability=availability,
        mean_failures=mean_failures,
        availability_se=availability_se,
        mean_failures_se=mean_failures_se,
        exposure=build_exposure_table(traces, cfg),
    )
