from .deterministic import FIFO, FWF, LRU, CacheState, OrderState, make_fifo, make_fwf, make_lru
from .offline import Belady, BeladyResult, belady_opt, brute_force_opt
from .randomized import (
    EATR,
    EatrPhase,
    EatrState,
    Marking,
    MarkState,
    RandomEviction,
    eatr_phases,
    make_eatr,
    make_marking,
    make_random,
)

ONLINE = {
    "lru": LRU,
    "fifo": FIFO,
    "fwf": FWF,
    "random": RandomEviction,
    "marking": Marking,
    "eatr": EATR,
}


def by_name(name: str, ptype):
    try:
        return ONLINE[name](ptype)
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {sorted(ONLINE)}") from None
