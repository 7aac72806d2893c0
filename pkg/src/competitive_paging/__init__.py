"""Competitive paging: randomized marking, EATR, the harmonic lower-bound
adversary and the punish-rule combiner, with exact-expectation checking."""

from .adversary import NemesisAdversary, NemesisResult, deterministic_nemesis, generate_nemesis
from .algorithms import (
    EATR,
    FIFO,
    FWF,
    LRU,
    Belady,
    Marking,
    RandomEviction,
    belady_opt,
    brute_force_opt,
    eatr_phases,
    make_eatr,
    make_fifo,
    make_fwf,
    make_lru,
    make_marking,
    make_random,
)
from .combiner import (
    CombinedAlgorithm,
    CombinerConfig,
    PunishLedger,
    VInterval,
    make_combined,
    make_randomized_combined,
    necessity_demo,
    run_combined,
    select_punish_target,
    shuttle_algorithms,
    v_intervals,
    verify_punish_guarantee,
)
from .core import *  # noqa: F401,F403

__version__ = "0.1.0"
