"""Sampling engine: single replayable runs and Monte Carlo aggregation."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import RandomSource, derive_seed
from .model import OnlineAlgorithm, ProblemType, Step, Trace, apply_action, check_cache, check_requests


def simulate(
    alg: OnlineAlgorithm,
    ptype: ProblemType,
    requests: Sequence[int],
    seed: int = 0,
    initial_cache: Iterable[int] | None = None,
) -> Trace:
    """Run ``alg`` over ``requests`` with the bit stream of ``seed``.

    The initial cache defaults to the algorithm's own default, which is
    ``{1, ..., k}`` for every policy except warm-started shuttles.
    """
    requests = check_requests(requests, ptype)
    cache = check_cache(alg.default_initial_cache() if initial_cache is None else initial_cache, ptype)
    rng = RandomSource(seed)
    state = alg.initial_state(cache)
    trace = Trace(initial_cache=cache, seed=seed)
    for t, r in enumerate(requests, start=1):
        state, action = alg.serve(state, r, rng)
        expected = apply_action(cache, action)
        cache = state.cache
        assert cache == expected, f"step {t}: action {action} inconsistent with cache {sorted(cache)}"
        assert r in cache
        trace.steps.append(Step(t, r, action, cache))
    return trace


def run_cost(alg, ptype, requests, seed=0, initial_cache=None) -> int:
    """Cost-only fast path of :func:`simulate` (no trace retained)."""
    cache = check_cache(alg.default_initial_cache() if initial_cache is None else initial_cache, ptype)
    rng = RandomSource(seed)
    state = alg.initial_state(cache)
    cost = 0
    for r in requests:
        state, action = alg.serve(state, r, rng)
        cost += action.cost
    return cost


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    trials: int
    master_seed: int
    costs: tuple[int, ...]


def empirical_expected_cost(
    alg: OnlineAlgorithm,
    ptype: ProblemType,
    requests: Sequence[int],
    trials: int,
    master_seed: int = 0,
    initial_cache: Iterable[int] | None = None,
    workers: int | None = None,
) -> MonteCarloResult:
    """Mean cost over ``trials`` runs seeded by ``derive_seed(master_seed, i)``.

    Trial ``i`` always lands in slot ``i``, so the result does not depend on
    the order in which (possibly concurrent) trials finish.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    requests = check_requests(requests, ptype)
    if initial_cache is not None:
        initial_cache = check_cache(initial_cache, ptype)

    def one(i):
        return run_cost(alg, ptype, requests, derive_seed(master_seed, i), initial_cache)

    if not alg.randomized:
        costs = [one(0)] * trials
    elif workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            costs = list(pool.map(one, range(trials)))
    else:
        costs = [one(i) for i in range(trials)]
    arr = np.asarray(costs, dtype=float)
    mean = math.fsum(costs) / trials
    stderr = float(arr.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloResult(mean, stderr, trials, master_seed, tuple(costs))
