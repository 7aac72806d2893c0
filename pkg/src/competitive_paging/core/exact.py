"""Exact expected costs by advancing the full branch distribution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .model import OnlineAlgorithm, ProblemType, check_cache, check_requests

DEFAULT_MAX_STATES = 200_000


class Distribution:
    """Weighted set of algorithm states; identical states are merged.

    Weights are exact fractions summing to one.  ``hole_probabilities``
    gives, per vertex, the probability that no server covers it.
    """

    def __init__(self, alg: OnlineAlgorithm, ptype: ProblemType, initial_cache=None,
                 max_states: int = DEFAULT_MAX_STATES):
        if not alg.enumerable:
            raise TypeError(f"{alg.name} does not expose its random branches")
        cache = check_cache(alg.default_initial_cache() if initial_cache is None else initial_cache, ptype)
        self.alg = alg
        self.ptype = ptype
        self.max_states = max_states
        self.weights: dict = {alg.initial_state(cache): Fraction(1)}
        self.steps = 0

    def advance(self, request: int) -> Fraction:
        """Serve ``request`` on every branch; return the step's expected cost."""
        expected = Fraction(0)
        nxt: dict = {}
        for state, w in self.weights.items():
            for p, action, new_state in self.alg.branches(state, request):
                q = w * p
                if action.cost:
                    expected += q
                nxt[new_state] = nxt.get(new_state, 0) + q
            if len(nxt) > self.max_states:
                raise ResourceLimitError(
                    f"exact tracker exceeded {self.max_states} states at step {self.steps + 1}; "
                    "use empirical_expected_cost (Monte Carlo) instead"
                )
        self.weights = nxt
        self.steps += 1
        return expected

    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def hole_probabilities(self) -> dict[int, Fraction]:
        p = {v: Fraction(0) for v in range(1, self.ptype.n + 1)}
        for state, w in self.weights.items():
            cache = state.cache
            for v in p:
                if v not in cache:
                    p[v] += w
        return p

    def coverage(self, vertex: int) -> Fraction:
        return sum((w for s, w in self.weights.items() if vertex in s.cache), Fraction(0))

    def __len__(self) -> int:
        return len(self.weights)


@dataclass
class ExactCost:
    total: Fraction
    per_step: list[Fraction]
    final: Distribution


def expected_cost_exact(
    alg: OnlineAlgorithm,
    ptype: ProblemType,
    requests: Sequence[int],
    initial_cache: Iterable[int] | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> ExactCost:
    requests = check_requests(requests, ptype)
    dist = Distribution(alg, ptype, initial_cache, max_states)
    per_step = [dist.advance(r) for r in requests]
    return ExactCost(sum(per_step, Fraction(0)), per_step, dist)
