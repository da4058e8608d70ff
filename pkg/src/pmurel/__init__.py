"""Reliability toolkit for phasor measurement units.

Models a repairable PMU whose hardware and software fail both independently
and through their interaction: triangular fuzzy numbers carry the uncertainty
in failure/repair rates, a continuous-time Markov chain captures the coupled
hardware-software degradation paths, closed-form Weibull/fault-detection
curves give the component reliabilities, a sequential Monte Carlo engine
generates synthetic failure histories, and a closed-form least-squares
estimator recovers the two interaction rates from aggregated exposure data.
"""

from .curves import (
    HardwareParams,
    InteractionParams,
    SoftwareParams,
    composite_pmu_reliability,
    interaction_reliability_closed_form,
    nhpp_mean_value,
    software_reliability,
    weibull_reliability,
)
from .fitting import FitResult, effective_rate, fit_lambda1, fit_scan, sse
from .fuzzy import (
    AlphaCutInterval,
    FuzzyIndex,
    TriangularFuzzyNumber,
    alpha_cut,
    defuzzify,
    fuzzy_availability,
    fuzzy_unavailability,
)
from .markov import (
    ALLOWED_TRANSITIONS,
    OPERATIONAL_STATES,
    STATES,
    GeneratorMatrix,
    StateDistribution,
    build_unified_model,
    interaction_reliability_markov,
    transient_distribution,
)
from .simulate import (
    ExposureTable,
    ReplicationTrace,
    SimulationConfig,
    SimulationSummary,
    build_exposure_table,
    replication_rng,
    run_replication,
    run_simulation,
    sample_exponential,
)

__version__ = "0.1.0"

__all__ = [
    "ALLOWED_TRANSITIONS",
    "AlphaCutInterval",
    "ExposureTable",
    "FitResult",
    "FuzzyIndex",
    "GeneratorMatrix",
    "HardwareParams",
    "InteractionParams",
    "OPERATIONAL_STATES",
    "ReplicationTrace",
    "STATES",
    "SimulationConfig",
    "SimulationSummary",
    "SoftwareParams",
    "StateDistribution",
    "TriangularFuzzyNumber",
    "alpha_cut",
    "build_exposure_table",
    "build_unified_model",
    "composite_pmu_reliability",
    "defuzzify",
    "effective_rate",
    "fit_lambda1",
    "fit_scan",
    "fuzzy_availability",
    "fuzzy_unavailability",
    "interaction_reliability_closed_form",
    "interaction_reliability_markov",
    "nhpp_mean_value",
    "replication_rng",
    "run_replication",
    "run_simulation",
    "sample_exponential",
    "software_reliability",
    "sse",
    "transient_distribution",
    "weibull_reliability",
]
