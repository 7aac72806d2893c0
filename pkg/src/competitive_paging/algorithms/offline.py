"""Off-line optima: Belady's farthest-in-future rule and an exhaustive oracle."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..core.errors import InvalidInputError, ResourceLimitError
from ..core.model import HIT, Load, Move, OnlineAlgorithm, ProblemType, check_cache, check_requests
from ..core.simulation import simulate

NEVER = float("inf")


@dataclass(frozen=True, slots=True)
class OfflineState:
    t: int
    cache: frozenset[int]


class Belady(OnlineAlgorithm):
    """Farthest-next-use eviction with the whole sequence known in advance.

    Ties go to the smallest vertex id; vertices never requested again count
    as infinitely far.  Lazy, so it can serve as a reference algorithm.
    """

    name = "opt"

    def __init__(self, ptype: ProblemType, requests: Sequence[int]):
        super().__init__(ptype)
        self.requests = check_requests(requests, ptype)
        self._positions: dict[int, list[int]] = {}
        for i, r in enumerate(self.requests):
            self._positions.setdefault(r, []).append(i)

    def next_use(self, vertex: int, t: int):
        pos = self._positions.get(vertex)
        if not pos:
            return NEVER
        j = bisect_right(pos, t)
        return pos[j] if j < len(pos) else NEVER

    def initial_state(self, cache):
        return OfflineState(0, frozenset(cache))

    def serve(self, state, request, rng):
        t = state.t
        if t >= len(self.requests) or self.requests[t] != request:
            raise InvalidInputError(f"off-line optimum was built for a different sequence (step {t + 1})")
        cache = state.cache
        if request in cache:
            return OfflineState(t + 1, cache), HIT
        if len(cache) < self.ptype.k:
            return OfflineState(t + 1, cache | {request}), Load(request)
        victim = max(sorted(cache), key=lambda v: self.next_use(v, t))
        return OfflineState(t + 1, (cache - {victim}) | {request}), Move(victim, request)


@dataclass
class BeladyResult:
    cost: int
    schedule: list[tuple[int, int]]  # (step, evicted vertex), steps from 1


def belady_opt(requests: Sequence[int], ptype: ProblemType, initial_cache: Iterable[int] | None = None) -> BeladyResult:
    alg = Belady(ptype, requests)
    trace = simulate(alg, ptype, alg.requests, initial_cache=initial_cache)
    schedule = [(s.t, s.action.src) for s in trace.steps if isinstance(s.action, Move)]
    return BeladyResult(trace.total_cost, schedule)


def brute_force_opt(
    requests: Sequence[int],
    ptype: ProblemType,
    initial_cache: Iterable[int] | None = None,
    max_length: int = 20,
) -> int:
    """Minimum cost over every lazy eviction strategy (memoized search)."""
    requests = tuple(check_requests(requests, ptype))
    if len(requests) > max_length:
        raise ResourceLimitError(f"brute force limited to {max_length} requests, got {len(requests)}")
    start = check_cache(ptype.default_cache if initial_cache is None else initial_cache, ptype)
    k, n_req = ptype.k, len(requests)

    @lru_cache(maxsize=None)
    def best(pos: int, cache: frozenset[int]) -> int:
        if pos == n_req:
            return 0
        r = requests[pos]
        if r in cache:
            return best(pos + 1, cache)
        if len(cache) < k:
            return 1 + best(pos + 1, cache | {r})
        return 1 + min(best(pos + 1, (cache - {v}) | {r}) for v in cache)

    return best(0, start)
