from .bits import NoRandomness, RandomSource, derive_seed, splitmix64_mix
from .errors import (
    InfeasibleConfigurationError,
    InvalidInputError,
    PagingError,
    RandomnessAccessError,
    ResourceLimitError,
    UnsupportedConfigurationError,
)
from .exact import Distribution, ExactCost, expected_cost_exact
from .model import (
    HIT,
    Hit,
    Load,
    Move,
    OnlineAlgorithm,
    ProblemType,
    Step,
    StepAction,
    Trace,
    apply_action,
    check_cache,
    check_requests,
    harmonic,
    overlap_deficit,
)
from .phases import (
    PhaseAnalysis,
    PhaseCounters,
    PhaseRecord,
    analyze_phases,
    partition_phases,
    phase_counters,
    phase_opt_bounds,
)
from .report import RatioReport, fit_prefixes, ratio_report
from .simulation import MonteCarloResult, empirical_expected_cost, run_cost, simulate
