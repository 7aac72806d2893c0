"""Marking-phase decomposition and the per-phase off-line lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .model import overlap_deficit


@dataclass
class PhaseRecord:
    """One marking phase; indices are 0-based and ``end`` is inclusive."""

    start: int
    end: int
    clean: frozenset[int]
    distinct: frozenset[int]
    previous: frozenset[int]
    complete: bool

    @property
    def l(self) -> int:
        return len(self.clean)

    def indices(self) -> range:
        return range(self.start, self.end + 1)


def partition_phases(requests: Sequence[int], k: int, initial_cache: Iterable[int]) -> list[PhaseRecord]:
    """Split ``requests`` into marking phases.

    The first phase opens at the first request outside ``initial_cache``;
    a phase closes just before the request that would make ``k + 1``
    distinct vertices.  A phase is complete once it has touched ``k``
    distinct vertices.
    """
    previous = frozenset(initial_cache)
    phases: list[PhaseRecord] = []
    start = next((i for i, r in enumerate(requests) if r not in previous), None)
    if start is None:
        return phases
    distinct: set[int] = set()
    for i in range(start, len(requests)):
        r = requests[i]
        if r not in distinct and len(distinct) == k:
            d = frozenset(distinct)
            phases.append(PhaseRecord(start, i - 1, d - previous, d, previous, True))
            previous, distinct, start = d, set(), i
        distinct.add(r)
    d = frozenset(distinct)
    phases.append(PhaseRecord(start, len(requests) - 1, d - previous, d, previous, len(d) == k))
    return phases


@dataclass
class PhaseCounters:
    """Per-step clean/stale counters inside one phase.

    ``c[j]`` and ``s[j]`` are the number of clean vertices requested so far
    and the number of stale vertices, both taken just before step
    ``phase.start + j``.
    """

    phase: PhaseRecord
    c: list[int] = field(default_factory=list)
    s: list[int] = field(default_factory=list)
    first_stale: list[bool] = field(default_factory=list)


def phase_counters(requests: Sequence[int], phase: PhaseRecord) -> PhaseCounters:
    out = PhaseCounters(phase)
    stale = set(phase.previous)
    seen_clean: set[int] = set()
    for i in phase.indices():
        r = requests[i]
        out.c.append(len(seen_clean))
        out.s.append(len(stale))
        out.first_stale.append(r in stale)
        if r in stale:
            stale.discard(r)
        elif r not in phase.previous:
            seen_clean.add(r)
    return out


@dataclass
class PhaseAnalysis:
    phase: PhaseRecord
    d: int
    d_end: int
    reference_cost: int

    @property
    def lower_bound(self) -> int:
        return max(self.phase.l - self.d, self.d_end)


def phase_opt_bounds(phase: PhaseRecord | int, d: int, d_end: int) -> tuple[int, Fraction]:
    """``(max(l - d, d_end), (l - d + d_end) / 2)`` for a phase with ``l`` clean vertices."""
    l = phase.l if isinstance(phase, PhaseRecord) else phase
    if d < 0 or d_end < 0:
        raise InvalidInputError("deficits must be nonnegative")
    return max(l - d, d_end), Fraction(l - d + d_end, 2)


def analyze_phases(
    requests: Sequence[int],
    k: int,
    initial_cache: Iterable[int],
    reference_caches: Sequence[frozenset[int]],
    reference_costs: Sequence[int],
) -> list[PhaseAnalysis]:
    """Deficits of a reference algorithm against marking at phase boundaries.

    ``reference_caches[i]`` is the reference cache just before request ``i``
    (length ``len(requests) + 1``, the last entry being the final cache).
    Marking's cache at a phase start equals the previous phase's vertex set
    and at a complete phase's end equals its own vertex set, on every branch.
    Only complete phases are analyzed.
    """
    out = []
    for ph in partition_phases(requests, k, initial_cache):
        if not ph.complete:
            continue
        d = overlap_deficit(reference_caches[ph.start], ph.previous)
        d_end = overlap_deficit(reference_caches[ph.end + 1], ph.distinct)
        cost = sum(reference_costs[i] for i in ph.indices())
        out.append(PhaseAnalysis(ph, d, d_end, cost))
    return out
