"""Competitive-ratio estimates against an off-line cost."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class RatioReport:
    """Estimated ``c`` and ``a`` in ``cost <= c * opt + a``.

    The intercept is a least-squares estimate over prefixes, not a certified
    additive constant.
    """

    algorithm_cost: float | Fraction
    stderr: float
    opt_cost: int
    ratio: float
    intercept: float
    trials: int
    seed: int | None


def fit_prefixes(alg_prefix: Sequence[float], opt_prefix: Sequence[float], points: int = 200) -> tuple[float, float]:
    """Least-squares ``(slope, intercept)`` of algorithm vs off-line prefix costs."""
    alg = np.asarray(alg_prefix, dtype=float)
    opt = np.asarray(opt_prefix, dtype=float)
    if len(alg) != len(opt):
        raise ValueError("prefix arrays differ in length")
    idx = np.unique(np.linspace(0, len(alg) - 1, min(points, len(alg))).astype(int))
    x, y = opt[idx], alg[idx]
    if len(idx) < 2 or np.ptp(x) == 0:
        return (float(y[-1] / x[-1]) if len(x) and x[-1] else float("nan")), 0.0
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def ratio_report(
    algorithm_cost,
    opt_cost: int,
    *,
    stderr: float = 0.0,
    trials: int = 1,
    seed: int | None = None,
    alg_prefix: Sequence[float] | None = None,
    opt_prefix: Sequence[float] | None = None,
) -> RatioReport:
    intercept = 0.0
    if alg_prefix is not None and opt_prefix is not None:
        _, intercept = fit_prefixes(alg_prefix, opt_prefix)
    if opt_cost == 0:
        ratio = float("inf") if float(algorithm_cost) - intercept > 0 else 1.0
    else:
        ratio = (float(algorithm_cost) - intercept) / opt_cost
    return RatioReport(algorithm_cost, stderr, opt_cost, ratio, intercept, trials, seed)
