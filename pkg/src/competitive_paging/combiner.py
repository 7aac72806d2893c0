"""Combining several on-line algorithms with the punish rule.

The combined algorithm A simulates every B(i) on the request stream.  On a
fault at request v, A picks the target i minimizing ``c(i) * (PUN(i) + 1)``
(smallest i on ties) and evicts the smallest vertex that A covers but B(i)
no longer covers after serving v.  Whenever ``sum(1/c(i)) <= 1`` this keeps
``PUN(i) >= floor(C_A / c(i))`` at every fault, and ``C_B(i) >= PUN(i)``.

For randomized B(i) every member reads one shared bit stream through its
own cursor, so the guarantee holds pathwise for each seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .core.bits import NoRandomness, RandomSource
from .core.errors import InfeasibleConfigurationError, InvalidInputError
from .core.model import HIT, Load, Move, OnlineAlgorithm, ProblemType, Step, Trace, check_cache, check_requests
from .core.simulation import simulate


@dataclass
class CombinerConfig:
    algorithms: list[OnlineAlgorithm]
    constants: list[Fraction]

    def __post_init__(self):
        self.constants = [Fraction(c) for c in self.constants]
        if not self.algorithms:
            raise InvalidInputError("need at least one algorithm to combine")
        if len(self.algorithms) != len(self.constants):
            raise InvalidInputError(
                f"{len(self.algorithms)} algorithms but {len(self.constants)} constants"
            )
        if any(c <= 0 for c in self.constants):
            raise InvalidInputError("competitiveness constants must be positive")
        types = {a.ptype for a in self.algorithms}
        if len(types) != 1:
            raise InvalidInputError(f"algorithms disagree on problem type: {types}")
        if self.density > 1:
            raise InfeasibleConfigurationError(
                f"sum of 1/c(i) is {self.density} > 1; constants are not realizable"
            )

    @property
    def m(self) -> int:
        return len(self.algorithms)

    @property
    def ptype(self) -> ProblemType:
        return self.algorithms[0].ptype

    @property
    def density(self) -> Fraction:
        return sum((1 / c for c in self.constants), Fraction(0))


def select_punish_target(constants: Sequence[Fraction], pun: Sequence[int]) -> int:
    """Index minimizing ``c(i) * (PUN(i) + 1)``; ties go to the smallest index."""
    return min(range(len(constants)), key=lambda i: (constants[i] * (pun[i] + 1), i))


@dataclass(frozen=True, slots=True)
class CombinedState:
    cache: frozenset[int]
    members: tuple
    cursors: tuple[int, ...]
    pun: tuple[int, ...]
    member_costs: tuple[int, ...]
    cost: int
    last_punished: int | None = None


class CombinedAlgorithm(OnlineAlgorithm):
    """Punish-rule combination of ``config.algorithms``.

    Randomized members share the bit stream of ``master_seed`` when given,
    else the stream of the source passed to ``serve``; each member keeps its
    own cursor starting at position 0.  For a fixed stream A is
    deterministic.  No branch enumeration is offered for randomized members.
    """

    def __init__(self, config: CombinerConfig, master_seed: int | None = None):
        super().__init__(config.ptype)
        self.config = config
        self.master_seed = master_seed
        self.name = "combined:" + ",".join(a.name for a in config.algorithms)
        self.randomized = any(a.randomized for a in config.algorithms)

    def initial_state(self, cache):
        cache = frozenset(cache)
        if len(cache) != self.ptype.k:
            raise InvalidInputError("the combined algorithm starts from a full cache")
        members = tuple(a.initial_state(a.default_initial_cache()) for a in self.config.algorithms)
        zeros = (0,) * self.config.m
        return CombinedState(cache, members, zeros, zeros, zeros, 0)

    def _advance_members(self, state, request, seed):
        members, cursors, costs = [], [], []
        for alg, s, pos, c in zip(self.config.algorithms, state.members, state.cursors, state.member_costs):
            rng = NoRandomness() if seed is None or not alg.randomized else RandomSource(seed, pos)
            s, action = alg.serve(s, request, rng)
            members.append(s)
            cursors.append(rng.position)
            costs.append(c + action.cost)
        return tuple(members), tuple(cursors), tuple(costs)

    def stream_seed(self, rng) -> int | None:
        if not self.randomized:
            return None
        if self.master_seed is not None:
            return self.master_seed
        if rng is None or not hasattr(rng, "seed"):
            raise InvalidInputError("randomized members need a bit stream")
        return rng.seed

    def serve(self, state, request, rng=None):
        members, cursors, costs = self._advance_members(state, request, self.stream_seed(rng))
        if request in state.cache:
            return CombinedState(state.cache, members, cursors, state.pun, costs, state.cost), HIT
        i = select_punish_target(self.config.constants, state.pun)
        candidates = state.cache - members[i].cache
        assert candidates, "no punish vertex: member caches must have size <= k"
        u = min(candidates)
        pun = state.pun[:i] + (state.pun[i] + 1,) + state.pun[i + 1:]
        new = CombinedState((state.cache - {u}) | {request}, members, cursors, pun, costs, state.cost + 1, i)
        return new, Move(u, request)


def make_combined(config: CombinerConfig) -> CombinedAlgorithm:
    return CombinedAlgorithm(config)


def make_randomized_combined(config: CombinerConfig, master_seed: int) -> CombinedAlgorithm:
    return CombinedAlgorithm(config, master_seed)


@dataclass(frozen=True)
class PunishEvent:
    t: int
    punished: int
    evicted: int
    cost: int
    pun: tuple[int, ...]
    member_costs: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "punished": self.punished + 1, "evicted": self.evicted,
                           "cost": self.cost, "pun": list(self.pun)})


@dataclass
class PunishLedger:
    events: list[PunishEvent] = field(default_factory=list)
    pun: tuple[int, ...] = ()
    member_costs: tuple[int, ...] = ()
    combined_cost: int = 0

    def write_jsonl(self, fh: IO[str]) -> None:
        for ev in self.events:
            fh.write(ev.to_json() + "\n")


@dataclass(frozen=True)
class VInterval:
    """Server residency on ``v`` from ``t1`` until it moves away at ``t2``."""

    v: int
    t1: int
    t2: int


def v_intervals(trace: Trace) -> list[VInterval]:
    """Closed residency intervals of a trace; initial residents start at time 0."""
    since = {v: 0 for v in trace.initial_cache}
    out = []
    prev = trace.initial_cache
    for step in trace.steps:
        for v in prev - step.cache_after:
            out.append(VInterval(v, since.pop(v), step.t))
        for v in step.cache_after - prev:
            since[v] = step.t
        prev = step.cache_after
    return out


@dataclass
class CombinedRun:
    trace: Trace
    ledger: PunishLedger
    member_traces: list[Trace]


def run_combined(alg: CombinedAlgorithm, requests: Sequence[int], seed: int = 0,
                 initial_cache: Iterable[int] | None = None, member_traces: bool = False) -> CombinedRun:
    """Simulate ``alg`` and collect its punish ledger.

    With ``member_traces`` the members are re-simulated standalone on the
    same stream, which must reproduce the costs tracked inside ``alg``.
    """
    ptype = alg.ptype
    requests = check_requests(requests, ptype)
    cache = check_cache(alg.default_initial_cache() if initial_cache is None else initial_cache, ptype)
    trace = Trace(initial_cache=cache, seed=seed)
    ledger = PunishLedger()
    state = alg.initial_state(cache)
    rng = RandomSource(seed)
    for t, r in enumerate(requests, start=1):
        state, action = alg.serve(state, r, rng)
        trace.steps.append(Step(t, r, action, state.cache))
        if action.cost:
            ledger.events.append(PunishEvent(t, state.last_punished, action.src,
                                             state.cost, state.pun, state.member_costs))
    ledger.pun = state.pun
    ledger.member_costs = state.member_costs
    ledger.combined_cost = state.cost
    traces = []
    if member_traces:
        stream = alg.master_seed if alg.master_seed is not None else seed
        traces = [simulate(b, ptype, requests, seed=stream) for b in alg.config.algorithms]
    return CombinedRun(trace, ledger, traces)


@dataclass(frozen=True)
class Verification:
    ok: bool
    violation: tuple[int, int] | None = None  # (t, member index from 1)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_punish_guarantee(ledger: PunishLedger, config: CombinerConfig) -> Verification:
    """Check ``PUN(i) >= floor(C_A / c(i))`` and ``C_B(i) >= PUN(i)`` at every fault."""
    for ev in ledger.events:
        for i, c in enumerate(config.constants):
            need = math.floor(Fraction(ev.cost) / c)
            if ev.pun[i] < need:
                return Verification(False, (ev.t, i + 1), f"PUN({i + 1})={ev.pun[i]} < floor({ev.cost}/{c})={need}")
            if ev.member_costs[i] < ev.pun[i]:
                return Verification(False, (ev.t, i + 1), f"C_B({i + 1})={ev.member_costs[i]} < PUN={ev.pun[i]}")
    return Verification(True)


@dataclass(frozen=True, slots=True)
class ShuttleState:
    cache: frozenset[int]


class Shuttle(OnlineAlgorithm):
    """Keeps every vertex but ``i`` and ``i + m`` covered and shuttles one server between them.

    Type ``(2m - 1, 2m)``.  It starts at its invariant with hole ``i + m``;
    from any other start it reaches the invariant lazily by evicting ``i`` on
    off-shuttle faults.
    """

    def __init__(self, i: int, m: int):
        if not (1 <= i <= m):
            raise InvalidInputError(f"shuttle index {i} outside 1..{m}")
        super().__init__(ProblemType(2 * m - 1, 2 * m))
        self.i, self.m = i, m
        self.name = f"shuttle{i}"

    def default_initial_cache(self):
        return frozenset(range(1, 2 * self.m + 1)) - {self.i + self.m}

    def initial_state(self, cache):
        return ShuttleState(frozenset(cache))

    def serve(self, state, request, rng):
        cache = state.cache
        if request in cache:
            return state, HIT
        if len(cache) < self.ptype.k:
            return ShuttleState(cache | {request}), Load(request)
        victim = self.i + self.m if request == self.i else self.i
        return ShuttleState((cache - {victim}) | {request}), Move(victim, request)


def shuttle_algorithms(m: int) -> list[Shuttle]:
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    return [Shuttle(i, m) for i in range(1, m + 1)]


@dataclass
class NecessityReport:
    length: int
    target_cost: int
    member_costs: list[int]
    excess: list[Fraction]  # max_i (C_A - c(i) C_B(i)) after each prefix
    crossing: int | None  # first prefix length where the excess exceeds ``additive``


def necessity_demo(target: OnlineAlgorithm, constants: Sequence, length: int, additive: float = 100) -> NecessityReport:
    """Run the shuttle suite against the deterministic nemesis of ``target``.

    The target pays on every request while the shuttles together pay at
    most once per request, so with ``sum(1/c) > 1`` the excess
    ``max_i C_A - c(i) C_B(i)`` grows without bound.
    """
    from .adversary import deterministic_nemesis

    constants = [Fraction(c) for c in constants]
    m = len(constants)
    if target.ptype != ProblemType(2 * m - 1, 2 * m):
        raise InvalidInputError(f"target must have type ({2 * m - 1}, {2 * m})")
    tau = deterministic_nemesis(target, length)
    a_costs = simulate(target, target.ptype, tau).costs
    b_costs = [simulate(b, b.ptype, tau).costs for b in shuttle_algorithms(m)]
    excess, crossing = [], None
    ca, cb = 0, [0] * m
    for t in range(length):
        ca += a_costs[t]
        for i in range(m):
            cb[i] += b_costs[i][t]
        e = max(ca - c * b for c, b in zip(constants, cb))
        excess.append(e)
        if crossing is None and e > additive:
            crossing = t + 1
    return NecessityReport(length, ca, cb, excess, crossing)
