"""Nemesis request sequences.

:class:`NemesisAdversary` builds the randomized lower-bound sequence one
subphase at a time.  It reads only the exact hole probabilities of the
tracked algorithm (a :class:`~competitive_paging.core.exact.Distribution`),
never sampled server positions.  With ``k < n - 1`` it confines itself to
vertices ``1..k+1``.

Ties are always broken toward the smallest vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core.bits import NoRandomness
from .core.errors import InvalidInputError, RandomnessAccessError, UnsupportedConfigurationError
from .core.exact import DEFAULT_MAX_STATES, Distribution
from .core.model import OnlineAlgorithm, ProblemType, harmonic


@dataclass
class Subphase:
    u: int
    requests: list[int]
    expected_cost: Fraction
    epsilon: Fraction | None


@dataclass
class AdversaryState:
    marked: frozenset[int]
    size: int  # number of vertices in play, k + 1

    @property
    def u(self) -> int:
        return self.size - len(self.marked)

    def mark(self, v: int) -> None:
        if v in self.marked:
            return
        if len(self.marked) == self.size - 1:
            self.marked = frozenset({v})
        else:
            self.marked = self.marked | {v}


def _argmax(p: dict[int, Fraction], candidates) -> int:
    return max(sorted(candidates), key=lambda v: p[v])


class NemesisAdversary:
    """Subphase generator against ``alg`` started on ``{1..k}``."""

    max_subphase_requests = 100_000

    def __init__(self, alg: OnlineAlgorithm, max_states: int = DEFAULT_MAX_STATES):
        if not alg.enumerable:
            raise TypeError(f"{alg.name} does not expose its random branches")
        self.alg = alg
        self.ptype: ProblemType = alg.ptype
        self.size = self.ptype.k + 1
        self.vertices = range(1, self.size + 1)
        self.tracker = Distribution(alg, self.ptype, self.ptype.default_cache, max_states)
        self.state = AdversaryState(self.ptype.default_cache, self.size)
        self.requests: list[int] = []

    def holes(self) -> dict[int, Fraction]:
        p = self.tracker.hole_probabilities()
        total = sum((p[v] for v in self.vertices), Fraction(0))
        if total != 1:
            raise UnsupportedConfigurationError(
                f"adversary needs exactly one hole among vertices 1..{self.size}; "
                f"{self.alg.name} has total hole mass {total}"
            )
        return p

    def _request(self, v: int) -> Fraction:
        self.state.mark(v)
        self.requests.append(v)
        return self.tracker.advance(v)

    def next_subphase(self) -> Subphase:
        u = self.state.u
        marked = self.state.marked
        unmarked = [v for v in self.vertices if v not in marked]
        p = self.holes()
        P = sum((p[v] for v in marked), Fraction(0))
        emitted: list[int] = []
        bound = Fraction(1, u)
        if P == 0:
            v = _argmax(p, unmarked)
            assert p[v] >= bound
            emitted.append(v)
            cost = self._request(v)
            return Subphase(u, emitted, cost, None)

        first = _argmax(p, marked)
        eps = p[first]
        assert eps > 0
        emitted.append(first)
        cost = self._request(first)
        while True:
            p = self.holes()
            P = sum((p[v] for v in marked), Fraction(0))
            if not (P > eps and cost <= bound):
                break
            if len(emitted) > self.max_subphase_requests:
                raise RuntimeError("subphase loop failed to terminate")
            v = _argmax(p, marked)
            emitted.append(v)
            cost += self._request(v)
        if cost > bound:
            v = unmarked[0]
        else:
            v = _argmax(p, unmarked)
            assert p[v] >= (1 - P) / u
        emitted.append(v)
        cost += self._request(v)
        return Subphase(u, emitted, cost, eps)

    def next_phase(self) -> list[Subphase]:
        """One round of subphases: ``u = 1`` then ``u = k, k - 1, ..., 2``.

        Every round starts and ends with ``k`` vertices marked.
        """
        assert self.state.u == 1
        out = [self.next_subphase()]
        while self.state.u != 1:
            out.append(self.next_subphase())
        return out


@dataclass
class NemesisResult:
    requests: list[int]
    phase_costs: list[Fraction]
    subphases: list[list[Subphase]] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum(self.phase_costs, Fraction(0))


def generate_nemesis(alg: OnlineAlgorithm, phases: int, max_states: int = DEFAULT_MAX_STATES) -> NemesisResult:
    """Generate ``phases`` adversary rounds and their exact expected costs.

    Each round costs the tracked algorithm at least ``H_k`` in expectation
    (asserted) while the off-line optimum pays about one per round.
    """
    adv = NemesisAdversary(alg, max_states)
    costs, subs = [], []
    floor = harmonic(alg.ptype.k)
    for _ in range(phases):
        round_ = adv.next_phase()
        for sp in round_:
            assert sp.expected_cost >= Fraction(1, sp.u), sp
        c = sum((sp.expected_cost for sp in round_), Fraction(0))
        assert c >= floor, (c, floor)
        costs.append(c)
        subs.append(round_)
    return NemesisResult(adv.requests, costs, subs)


def deterministic_nemesis(alg: OnlineAlgorithm, length: int, initial_cache=None) -> list[int]:
    """Sequence that always requests a vertex ``alg`` does not cover (n = k + 1).

    With several uncovered vertices (after an FWF flush) the smallest is used.
    """
    ptype = alg.ptype
    if ptype.n != ptype.k + 1:
        raise UnsupportedConfigurationError(f"deterministic nemesis needs n = k + 1, got {ptype}")
    if alg.randomized:
        raise InvalidInputError(f"{alg.name} is randomized; the deterministic nemesis needs a deterministic algorithm")
    cache = alg.default_initial_cache() if initial_cache is None else frozenset(initial_cache)
    state = alg.initial_state(cache)
    rng = NoRandomness()
    out = []
    for _ in range(length):
        v = next(x for x in range(1, ptype.n + 1) if x not in state.cache)
        try:
            state, action = alg.serve(state, v, rng)
        except RandomnessAccessError as exc:
            raise InvalidInputError(f"{alg.name} consumed random bits") from exc
        out.append(v)
    return out
