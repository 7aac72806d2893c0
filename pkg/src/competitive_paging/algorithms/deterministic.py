"""Deterministic on-line policies: LRU, FIFO and flush-when-full."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.model import HIT, Load, Move, OnlineAlgorithm


@dataclass(frozen=True, slots=True)
class OrderState:
    """Cached vertices in eviction order, next victim first."""

    order: tuple[int, ...]
    cache: frozenset[int]

    @classmethod
    def of(cls, order):
        order = tuple(order)
        return cls(order, frozenset(order))


class _OrderedPolicy(OnlineAlgorithm):
    touch_on_hit = False

    def initial_state(self, cache):
        # 1..k are treated as loaded/used in increasing order at time 0
        return OrderState.of(sorted(cache))

    def serve(self, state, request, rng):
        if request in state.cache:
            if not self.touch_on_hit:
                return state, HIT
            order = tuple(v for v in state.order if v != request) + (request,)
            return OrderState(order, state.cache), HIT
        if len(state.order) < self.ptype.k:
            return OrderState.of(state.order + (request,)), Load(request)
        victim = state.order[0]
        return OrderState.of(state.order[1:] + (request,)), Move(victim, request)


class LRU(_OrderedPolicy):
    """Evicts the least recently requested cached vertex."""

    name = "lru"
    touch_on_hit = True


class FIFO(_OrderedPolicy):
    """Evicts the vertex that has been resident longest."""

    name = "fifo"


@dataclass(frozen=True, slots=True)
class CacheState:
    cache: frozenset[int]


class FWF(OnlineAlgorithm):
    """Flush-when-full: a fault on a full cache empties it, then loads.

    The flush is free; each load costs one.  Not lazy by design.
    """

    name = "fwf"

    def initial_state(self, cache):
        return CacheState(frozenset(cache))

    def serve(self, state, request, rng):
        cache = state.cache
        if request in cache:
            return state, HIT
        if len(cache) < self.ptype.k:
            return CacheState(cache | {request}), Load(request)
        return CacheState(frozenset({request})), Load(request, tuple(sorted(cache)))


def make_lru(ptype) -> LRU:
    return LRU(ptype)


def make_fifo(ptype) -> FIFO:
    return FIFO(ptype)


def make_fwf(ptype) -> FWF:
    return FWF(ptype)
