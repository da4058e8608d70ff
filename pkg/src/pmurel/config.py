"""Run configuration: one JSON document, validated strictly on load.

The document is versioned through its ``schema`` field and groups one
section per pipeline stage (fuzzy, curves, markov, simulation, fit).
Unknown keys anywhere are rejected by name, so typos never silently fall
back to defaults.  Command-line flags override file values after loading.

The repair rate's unit is deliberately an explicit required field:
``repair_rate_unit`` is either ``"events_per_year"`` (the value is a rate,
the documented default interpretation) or ``"hours_per_repair"`` (the value
is a mean repair duration in hours, converted to 8760/value events per
year).  Apart from that one conversion, all rates and times share the single
declared ``time_unit`` and are never converted implicitly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .fuzzy import TriangularFuzzyNumber
from .markov import ALLOWED_TRANSITIONS
from .simulate import SimulationConfig

SCHEMA = "pmu-reliability/1"
HOURS_PER_YEAR = 8760.0

REPAIR_RATE_UNITS = ("events_per_year", "hours_per_repair")


class ConfigError(Exception):
    """A configuration document failed validation."""


def _check_keys(mapping, allowed, context: str) -> None:
    if not isinstance(mapping, dict):
        raise ConfigError(f"{context} must be a JSON object")
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' in {context}")


def _number(mapping, key, context, default=None):
    if key not in mapping:
        if default is None:
            raise ConfigError(f"missing required key '{key}' in {context}")
        return default
    v = mapping[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"'{key}' in {context} must be a finite number, got {v!r}")
    return float(v)


def _integer(mapping, key, context, default=None):
    if key not in mapping:
        if default is None:
            raise ConfigError(f"missing required key '{key}' in {context}")
        return default
    v = mapping[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"'{key}' in {context} must be an integer, got {v!r}")
    return v


@dataclass(frozen=True)
class TimeGrid:
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.start) or self.start < 0.0:
            raise ConfigError(f"time grid start must be >= 0, got {self.start}")
        if not math.isfinite(self.stop) or self.stop <= self.start:
            raise ConfigError("time grid stop must exceed start")
        if self.count < 2:
            raise ConfigError(f"time grid count must be >= 2, got {self.count}")

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count)]

    @classmethod
    def from_dict(cls, d, context) -> "TimeGrid":
        _check_keys(d, {"start", "stop", "count"}, context)
        return cls(
            start=_number(d, "start", context),
            stop=_number(d, "stop", context),
            count=_integer(d, "count", context),
        )


@dataclass(frozen=True)
class FuzzySection:
    """Fuzzy rate inputs: centers, relative half-width, alpha resolution."""

    failure_rate_center: float
    repair_rate_center: float
    repair_rate_unit: str
    halfwidth_fraction: float = 0.1
    alpha_levels: int = 11

    def __post_init__(self) -> None:
        if self.repair_rate_unit not in REPAIR_RATE_UNITS:
            raise ConfigError(
                f"repair_rate_unit must be one of {REPAIR_RATE_UNITS}, "
                f"got {self.repair_rate_unit!r}"
            )
        for name in ("failure_rate_center", "repair_rate_center"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {v}")
        if not 0.0 <= self.halfwidth_fraction < 1.0:
            raise ConfigError(
                f"halfwidth_fraction must lie in [0, 1), got {self.halfwidth_fraction}"
            )
        if self.alpha_levels < 1:
            raise ConfigError(f"alpha_levels must be >= 1, got {self.alpha_levels}")

    def failure_number(self) -> TriangularFuzzyNumber:
        c = self.failure_rate_center
        return TriangularFuzzyNumber(c, self.halfwidth_fraction * c)

    def repair_number(self) -> TriangularFuzzyNumber:
        c = self.repair_rate_center
        if self.repair_rate_unit == "hours_per_repair":
            c = HOURS_PER_YEAR / c
        return TriangularFuzzyNumber(c, self.halfwidth_fraction * c)

    def alpha_grid(self) -> tuple[float, ...]:
        if self.alpha_levels == 1:
            return (1.0,)
        return tuple(i / (self.alpha_levels - 1) for i in range(self.alpha_levels))

    @classmethod
    def from_dict(cls, d) -> "FuzzySection":
        context = "section 'fuzzy'"
        _check_keys(
            d,
            {
                "failure_rate_center",
                "repair_rate_center",
                "repair_rate_unit",
                "halfwidth_fraction",
                "alpha_levels",
            },
            context,
        )
        if "repair_rate_unit" not in d:
            raise ConfigError(
                "missing required key 'repair_rate_unit' in section 'fuzzy'; "
                "set it to 'events_per_year' (default interpretation) or "
                "'hours_per_repair'"
            )
        unit = d["repair_rate_unit"]
        if not isinstance(unit, str):
            raise ConfigError("'repair_rate_unit' must be a string")
        return cls(
            failure_rate_center=_number(d, "failure_rate_center", context),
            repair_rate_center=_number(d, "repair_rate_center", context),
            repair_rate_unit=unit,
            halfwidth_fraction=_number(d, "halfwidth_fraction", context, default=0.1),
            alpha_levels=_integer(d, "alpha_levels", context, default=11),
        )


@dataclass(frozen=True)
class CurvesSection:
    hardware_rate: float
    hardware_shape: float
    software_total_faults: float
    software_detection_rate: float
    software_startup_time: float
    interaction_lambda1: float
    interaction_lambda2: float
    time_grid: TimeGrid

    def __post_init__(self) -> None:
        # eager validation so --dry-run catches bad curve parameters
        try:
            self.hardware_params()
            self.software_params()
            self.interaction_params()
        except ValueError as exc:
            raise ConfigError(f"section 'curves': {exc}") from exc

    def hardware_params(self):
        from .curves import HardwareParams

        return HardwareParams(rate=self.hardware_rate, shape=self.hardware_shape)

    def software_params(self):
        from .curves import SoftwareParams

        return SoftwareParams(
            total_faults=self.software_total_faults,
            detection_rate=self.software_detection_rate,
            startup_time=self.software_startup_time,
        )

    def interaction_params(self):
        from .curves import InteractionParams

        return InteractionParams(
            lambda1=self.interaction_lambda1, lambda2=self.interaction_lambda2
        )

    @classmethod
    def from_dict(cls, d) -> "CurvesSection":
        context = "section 'curves'"
        _check_keys(d, {"hardware", "software", "interaction", "time_grid"}, context)
        for part in ("hardware", "software", "interaction", "time_grid"):
            if part not in d:
                raise ConfigError(f"missing required key '{part}' in {context}")
        hw, sw, inter = d["hardware"], d["software"], d["interaction"]
        _check_keys(hw, {"rate", "shape"}, "curves.hardware")
        _check_keys(
            sw, {"total_faults", "detection_rate", "startup_time"}, "curves.software"
        )
        _check_keys(inter, {"lambda1", "lambda2"}, "curves.interaction")
        return cls(
            hardware_rate=_number(hw, "rate", "curves.hardware"),
            hardware_shape=_number(hw, "shape", "curves.hardware"),
            software_total_faults=_number(sw, "total_faults", "curves.software"),
            software_detection_rate=_number(sw, "detection_rate", "curves.software"),
            software_startup_time=_number(sw, "startup_time", "curves.software", default=0.0),
            interaction_lambda1=_number(inter, "lambda1", "curves.interaction"),
            interaction_lambda2=_number(inter, "lambda2", "curves.interaction"),
            time_grid=TimeGrid.from_dict(d["time_grid"], "curves.time_grid"),
        )


@dataclass(frozen=True)
class MarkovSection:
    transitions: dict[str, float]
    time_grid: TimeGrid

    def __post_init__(self) -> None:
        for name, rate in self.transitions.items():
            if name not in ALLOWED_TRANSITIONS:
                raise ConfigError(
                    f"transition '{name}' in section 'markov' is not part of the "
                    f"model; allowed: {', '.join(ALLOWED_TRANSITIONS)}"
                )
            if isinstance(rate, bool) or not isinstance(rate, (int, float)) \
                    or not math.isfinite(rate) or rate < 0.0:
                raise ConfigError(
                    f"rate for '{name}' must be a finite number >= 0, got {rate!r}"
                )

    @classmethod
    def from_dict(cls, d) -> "MarkovSection":
        context = "section 'markov'"
        _check_keys(d, {"transitions", "time_grid"}, context)
        for part in ("transitions", "time_grid"):
            if part not in d:
                raise ConfigError(f"missing required key '{part}' in {context}")
        raw = d["transitions"]
        if not isinstance(raw, dict):
            raise ConfigError("'transitions' in section 'markov' must be an object")
        transitions = {}
        for name, rate in raw.items():
            if isinstance(rate, bool) or not isinstance(rate, (int, float)):
                raise ConfigError(f"rate for '{name}' must be a number, got {rate!r}")
            transitions[name] = float(rate)
        return cls(
            transitions=transitions,
            time_grid=TimeGrid.from_dict(d["time_grid"], "markov.time_grid"),
        )


@dataclass(frozen=True)
class SimulationSection:
    failure_rate: float
    repair_rate: float
    mission_time: float
    n_replications: int
    master_seed: int
    n_intervals: int = 8

    def __post_init__(self) -> None:
        # eager validation so --dry-run catches bad simulation parameters
        self.to_simulation_config()

    def to_simulation_config(self, failure_rate=None, repair_rate=None) -> SimulationConfig:
        """Build the engine config, optionally with rates supplied by an
        upstream stage."""
        try:
            return SimulationConfig(
                failure_rate=self.failure_rate if failure_rate is None else failure_rate,
                repair_rate=self.repair_rate if repair_rate is None else repair_rate,
                mission_time=self.mission_time,
                n_replications=self.n_replications,
                master_seed=self.master_seed,
                n_intervals=self.n_intervals,
            )
        except ValueError as exc:
            raise ConfigError(f"section 'simulation': {exc}") from exc

    @classmethod
    def from_dict(cls, d) -> "SimulationSection":
        context = "section 'simulation'"
        _check_keys(
            d,
            {
                "failure_rate",
                "repair_rate",
                "mission_time",
                "n_replications",
                "master_seed",
                "n_intervals",
            },
            context,
        )
        return cls(
            failure_rate=_number(d, "failure_rate", context),
            repair_rate=_number(d, "repair_rate", context),
            mission_time=_number(d, "mission_time", context),
            n_replications=_integer(d, "n_replications", context, default=10000),
            master_seed=_integer(d, "master_seed", context, default=42),
            n_intervals=_integer(d, "n_intervals", context, default=8),
        )


@dataclass(frozen=True)
class FitSection:
    g: float | None = 2.0
    g_grid: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if (self.g is None) == (self.g_grid is None):
            raise ConfigError("section 'fit' needs exactly one of 'g' or 'g_grid'")

    def ratios(self) -> list[float]:
        return [self.g] if self.g is not None else list(self.g_grid)

    @classmethod
    def from_dict(cls, d) -> "FitSection":
        context = "section 'fit'"
        _check_keys(d, {"g", "g_grid"}, context)
        if "g" in d and "g_grid" in d:
            raise ConfigError("section 'fit' must not set both 'g' and 'g_grid'")
        if "g_grid" in d:
            grid = d["g_grid"]
            if not isinstance(grid, list) or not grid:
                raise ConfigError("'g_grid' must be a nonempty list of numbers")
            values = []
            for v in grid:
                if isinstance(v, bool) or not isinstance(v, (int, float)) \
                        or not math.isfinite(v) or v <= 0.0:
                    raise ConfigError(f"'g_grid' entries must be > 0, got {v!r}")
                values.append(float(v))
            return cls(g=None, g_grid=tuple(values))
        g = _number(d, "g", context, default=2.0)
        if g <= 0.0:
            raise ConfigError(f"'g' must be > 0, got {g}")
        return cls(g=g, g_grid=None)


@dataclass(frozen=True)
class RunConfig:
    """The whole validated configuration document."""

    fuzzy: FuzzySection
    curves: CurvesSection
    markov: MarkovSection
    simulation: SimulationSection
    fit: FitSection
    time_unit: str = "years"
    output_dir: str = "out"


_TOP_LEVEL_KEYS = {
    "schema",
    "time_unit",
    "output_dir",
    "fuzzy",
    "curves",
    "markov",
    "simulation",
    "fit",
}


def config_from_dict(doc) -> RunConfig:
    """Validate a parsed JSON document into a RunConfig."""
    _check_keys(doc, _TOP_LEVEL_KEYS, "configuration")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise ConfigError(f"unsupported schema {schema!r}; expected {SCHEMA!r}")
    defaults = default_config()
    time_unit = doc.get("time_unit", "years")
    if not isinstance(time_unit, str) or not time_unit:
        raise ConfigError("'time_unit' must be a nonempty string")
    output_dir = doc.get("output_dir", defaults.output_dir)
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("'output_dir' must be a nonempty string")

    def section(name, parser, fallback):
        return parser(doc[name]) if name in doc else fallback

    return RunConfig(
        fuzzy=section("fuzzy", FuzzySection.from_dict, defaults.fuzzy),
        curves=section("curves", CurvesSection.from_dict, defaults.curves),
        markov=section("markov", MarkovSection.from_dict, defaults.markov),
        simulation=section("simulation", SimulationSection.from_dict, defaults.simulation),
        fit=section("fit", FitSection.from_dict, defaults.fit),
        time_unit=time_unit,
        output_dir=output_dir,
    )


def load_config(path) -> RunConfig:
    """Read and validate a JSON configuration file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(doc)


def default_config() -> RunConfig:
    """Built-in defaults: the crisp study rates with a 10% uncertainty band."""
    return RunConfig(
        fuzzy=FuzzySection(
            failure_rate_center=0.6566,
            repair_rate_center=22.2898,
            repair_rate_unit="events_per_year",
            halfwidth_fraction=0.1,
            alpha_levels=11,
        ),
        curves=CurvesSection(
            hardware_rate=0.6566,
            hardware_shape=1.0,
            software_total_faults=10.0,
            software_detection_rate=0.1,
            software_startup_time=5.0,
            interaction_lambda1=8.92e-4,
            interaction_lambda2=3.92e-3,
            time_grid=TimeGrid(start=0.0, stop=10.0, count=101),
        ),
        markov=MarkovSection(
            transitions={"UP->HD3": 8.92e-4, "HD3->F_INT": 3.92e-3},
            time_grid=TimeGrid(start=0.0, stop=5000.0, count=51),
        ),
        simulation=SimulationSection(
            failure_rate=0.6566,
            repair_rate=22.2898,
            mission_time=10.0,
            n_replications=10000,
            master_seed=42,
            n_intervals=8,
        ),
        fit=FitSection(g=2.0, g_grid=None),
    )
