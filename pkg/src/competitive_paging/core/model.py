"""Domain types for the uniform k-server / paging model.

Vertices are the integers ``1..n``; a cache is the frozenset of vertices
covered by servers.  Algorithm states are immutable, hashable values exposing
a ``cache`` attribute, so the exact tracker can merge identical branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

from .bits import NoRandomness
from .errors import InvalidInputError, RandomnessAccessError


@dataclass(frozen=True, slots=True)
class ProblemType:
    """Number of servers ``k`` and vertices ``n``, with ``1 <= k < n``."""

    k: int
    n: int

    def __post_init__(self):
        if not (1 <= self.k < self.n):
            raise InvalidInputError(f"need 1 <= k < n, got k={self.k}, n={self.n}")

    @property
    def default_cache(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1))


@dataclass(frozen=True, slots=True)
class Hit:
    cost = 0


@dataclass(frozen=True, slots=True)
class Move:
    src: int
    dst: int
    cost = 1


@dataclass(frozen=True, slots=True)
class Load:
    """Server placed on ``dst`` without vacating a vertex.

    ``flushed`` lists vertices dropped (free of charge) just before the load.
    """

    dst: int
    flushed: tuple[int, ...] = ()
    cost = 1


StepAction = Union[Hit, Move, Load]
HIT = Hit()


def apply_action(cache: frozenset[int], action: StepAction) -> frozenset[int]:
    if isinstance(action, Hit):
        return cache
    if isinstance(action, Move):
        return (cache - {action.src}) | {action.dst}
    return (cache - set(action.flushed)) | {action.dst}


@dataclass(frozen=True, slots=True)
class Step:
    t: int
    request: int
    action: StepAction
    cache_after: frozenset[int]

    @property
    def fault(self) -> bool:
        return self.action.cost == 1

    @property
    def evicted(self) -> Any:
        a = self.action
        if isinstance(a, Move):
            return a.src
        if isinstance(a, Load) and a.flushed:
            return list(a.flushed)
        return None


@dataclass
class Trace:
    """Sequential record of a simulation; steps are numbered from 1."""

    steps: list[Step] = field(default_factory=list)
    initial_cache: frozenset[int] = frozenset()
    seed: int | None = None

    @property
    def total_cost(self) -> int:
        return sum(s.action.cost for s in self.steps)

    @property
    def costs(self) -> list[int]:
        return [s.action.cost for s in self.steps]

    def caches_before(self) -> list[frozenset[int]]:
        """Cache just before each request (index i for step i+1)."""
        out = [self.initial_cache]
        out.extend(s.cache_after for s in self.steps[:-1])
        return out

    def __len__(self) -> int:
        return len(self.steps)


class OnlineAlgorithm:
    """Replayable step function over immutable states.

    Subclasses implement ``initial_state`` and ``serve``.  Randomized ones
    set ``randomized = True`` and override ``branches`` to list every random
    outcome with its exact probability.
    """

    name = "abstract"
    randomized = False

    def __init__(self, ptype: ProblemType):
        self.ptype = ptype

    def default_initial_cache(self) -> frozenset[int]:
        return self.ptype.default_cache

    def initial_state(self, cache: Iterable[int]):
        raise NotImplementedError

    def serve(self, state, request: int, rng):
        """Return ``(new_state, action)`` for ``request``."""
        raise NotImplementedError

    @property
    def enumerable(self) -> bool:
        return not self.randomized or type(self).branches is not OnlineAlgorithm.branches

    def branches(self, state, request: int) -> list[tuple[Fraction, StepAction, Any]]:
        if self.randomized:
            raise TypeError(f"{self.name} does not expose its random branches")
        try:
            new_state, action = self.serve(state, request, NoRandomness())
        except RandomnessAccessError as exc:
            raise TypeError(f"{self.name} is flagged deterministic but read random bits") from exc
        return [(Fraction(1), action, new_state)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k={self.ptype.k}, n={self.ptype.n})"


def check_cache(cache: Iterable[int], ptype: ProblemType) -> frozenset[int]:
    cache = frozenset(cache)
    if len(cache) > ptype.k:
        raise InvalidInputError(f"cache {sorted(cache)} holds more than k={ptype.k} vertices")
    bad = [v for v in cache if not (1 <= v <= ptype.n)]
    if bad:
        raise InvalidInputError(f"cache vertices {sorted(bad)} outside [1, {ptype.n}]")
    return cache


def check_requests(requests: Sequence[int], ptype: ProblemType) -> list[int]:
    out = []
    for i, r in enumerate(requests):
        if isinstance(r, bool) or not isinstance(r, int) or not (1 <= r <= ptype.n):
            raise InvalidInputError(f"request #{i + 1} = {r!r} is outside [1, {ptype.n}]")
        out.append(r)
    return out


def harmonic(k: int) -> Fraction:
    """Exact ``H_k = 1 + 1/2 + ... + 1/k``."""
    if k <= 0:
        raise InvalidInputError(f"harmonic number needs k >= 1, got {k}")
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def overlap_deficit(a: Iterable[int], b: Iterable[int]) -> int:
    """Number of vertices of ``a`` not covered by ``b`` (equal-size caches)."""
    a, b = frozenset(a), frozenset(b)
    if len(a) != len(b):
        raise InvalidInputError(f"cache sizes differ: {len(a)} vs {len(b)}")
    return len(a - b)
