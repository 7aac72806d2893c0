"""Randomized policies: uniform random eviction, marking, and EATR.

Each exposes ``branches`` so the exact tracker can follow every outcome.
Sampling in ``serve`` draws ``rng.randbelow(m)`` over the same sorted
candidate list that ``branches`` enumerates, so both realize one
distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.errors import UnsupportedConfigurationError
from ..core.model import HIT, Load, Move, OnlineAlgorithm
from .deterministic import CacheState


class RandomEviction(OnlineAlgorithm):
    """Baseline: evict a uniformly random cached vertex."""

    name = "random"
    randomized = True

    def initial_state(self, cache):
        return CacheState(frozenset(cache))

    def _outcomes(self, state, request):
        cache = state.cache
        if request in cache:
            return None
        if len(cache) < self.ptype.k:
            return [(CacheState(cache | {request}), Load(request))]
        return [
            (CacheState((cache - {v}) | {request}), Move(v, request))
            for v in sorted(cache)
        ]

    def serve(self, state, request, rng):
        outs = self._outcomes(state, request)
        if outs is None:
            return state, HIT
        return outs[rng.randbelow(len(outs))]

    def branches(self, state, request):
        outs = self._outcomes(state, request)
        if outs is None:
            return [(Fraction(1), HIT, state)]
        p = Fraction(1, len(outs))
        return [(p, a, s) for s, a in outs]


@dataclass(frozen=True, slots=True)
class MarkState:
    cache: frozenset[int]
    marks: frozenset[int]


class Marking(OnlineAlgorithm):
    """Randomized marking algorithm.

    Every request marks its vertex; when ``k + 1`` vertices would be marked,
    only the newest mark survives.  A fault evicts a uniformly random
    unmarked cached vertex.
    """

    name = "marking"
    randomized = True

    def initial_state(self, cache):
        cache = frozenset(cache)
        return MarkState(cache, cache)

    def _remark(self, marks, request):
        if request in marks:
            return marks
        if len(marks) == self.ptype.k:
            return frozenset({request})
        return marks | {request}

    def _outcomes(self, state, request):
        marks = self._remark(state.marks, request)
        cache = state.cache
        if request in cache:
            return marks, None
        if len(cache) < self.ptype.k:
            return marks, [(MarkState(cache | {request}, marks), Load(request))]
        candidates = sorted(cache - marks)
        assert candidates, "fault with every cached vertex marked"
        return marks, [
            (MarkState((cache - {v}) | {request}, marks), Move(v, request))
            for v in candidates
        ]

    def serve(self, state, request, rng):
        marks, outs = self._outcomes(state, request)
        if outs is None:
            return (state if marks is state.marks else MarkState(state.cache, marks)), HIT
        return outs[rng.randbelow(len(outs))]

    def branches(self, state, request):
        marks, outs = self._outcomes(state, request)
        if outs is None:
            new = state if marks is state.marks else MarkState(state.cache, marks)
            return [(Fraction(1), HIT, new)]
        p = Fraction(1, len(outs))
        return [(p, a, s) for s, a in outs]


@dataclass(frozen=True, slots=True)
class EatrState:
    """Two servers: one pinned on ``most_recent``, one ``roamer``.

    ``stale`` is the current stale set (never containing ``most_recent``);
    the roamer is uniform over it across branches.  Between phases
    ``stale == {roamer}`` and ``clean_count == 0``.
    """

    most_recent: int
    roamer: int
    stale: frozenset[int]
    clean_count: int
    in_phase: bool

    @property
    def cache(self) -> frozenset[int]:
        return frozenset((self.most_recent, self.roamer))


class EATR(OnlineAlgorithm):
    """EATR ("end after twice requested") for k = 2, realized lazily.

    A clean request grows the stale set to size ``s`` (old most-recent vertex
    joins it).  With probability ``1/s`` the roamer moves to the request and
    the old most-recent server takes over the roamer role; otherwise the
    most-recent server moves.  Either way the roamer stays uniform over the
    stale set.  A stale request ends the phase with both servers on the two
    most recently requested vertices.
    """

    name = "eatr"
    randomized = True

    def __init__(self, ptype):
        if ptype.k != 2:
            raise UnsupportedConfigurationError(f"EATR is defined for k=2 only, got k={ptype.k}")
        super().__init__(ptype)

    def initial_state(self, cache):
        cache = sorted(cache)
        if len(cache) != 2:
            raise UnsupportedConfigurationError("EATR needs both servers placed initially")
        # as if the initial vertices were requested in increasing order
        roamer, recent = cache
        return EatrState(recent, roamer, frozenset({roamer}), 0, False)

    def _outcomes(self, state, request):
        if request == state.most_recent:
            return [(Fraction(1), HIT, state)]
        if request in state.stale:
            if not state.in_phase:
                # covered inter-phase request: swap roles, no phase starts
                new = EatrState(request, state.most_recent, frozenset({state.most_recent}), 0, False)
                return [(Fraction(1), HIT, new)]
            new = EatrState(request, state.most_recent, frozenset({state.most_recent}), 0, False)
            if state.roamer == request:
                return [(Fraction(1), HIT, new)]
            return [(Fraction(1), Move(state.roamer, request), new)]
        stale = state.stale | {state.most_recent}
        count = state.clean_count + 1
        p = Fraction(1, len(stale))
        swap = EatrState(request, state.most_recent, stale, count, True)
        keep = EatrState(request, state.roamer, stale, count, True)
        return [
            (p, Move(state.roamer, request), swap),
            (1 - p, Move(state.most_recent, request), keep),
        ]

    def serve(self, state, request, rng):
        outs = self._outcomes(state, request)
        if len(outs) == 1:
            return outs[0][2], outs[0][1]
        # outcome 0 (roamer moves) iff the draw over the stale set hits 0
        pick = 0 if rng.randbelow(len(state.stale) + 1) == 0 else 1
        return outs[pick][2], outs[pick][1]

    def branches(self, state, request):
        return self._outcomes(state, request)


@dataclass
class EatrPhase:
    """EATR phase: 0-based inclusive indices, clean count, completion flag."""

    start: int
    end: int
    l: int
    complete: bool


def eatr_phases(requests, initial_cache=(1, 2)) -> list[EatrPhase]:
    """EATR's deterministic phase structure.

    Requests between a terminating stale request and the next uncovered one
    belong to no phase.
    """
    a, b = sorted(initial_cache)
    covered = {a, b}
    recent = b
    phases: list[EatrPhase] = []
    stale: set[int] = set()
    start, l, in_phase = 0, 0, False
    for i, r in enumerate(requests):
        if not in_phase:
            if r in covered:
                recent = r
                continue
            in_phase, start, l = True, i, 0
            stale = set(covered)
            stale.discard(recent)
        if r == recent:
            continue
        if r in stale:
            phases.append(EatrPhase(start, i, l, True))
            covered = {recent, r}
            recent = r
            in_phase = False
            continue
        stale.add(recent)
        l += 1
        recent = r
    if in_phase:
        phases.append(EatrPhase(start, len(requests) - 1, l, False))
    return phases


def make_random(ptype) -> RandomEviction:
    return RandomEviction(ptype)


def make_marking(ptype) -> Marking:
    return Marking(ptype)


def make_eatr(ptype) -> EATR:
    return EATR(ptype)
