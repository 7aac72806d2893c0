"""End-to-end acceptance checks, one test per criterion.

A per-criterion PASS/FAIL line is printed in the pytest terminal summary.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from competitive_paging import (
    CombinerConfig,
    ProblemType,
    analyze_phases,
    belady_opt,
    brute_force_opt,
    deterministic_nemesis,
    eatr_phases,
    expected_cost_exact,
    generate_nemesis,
    harmonic,
    make_combined,
    make_eatr,
    make_fifo,
    make_lru,
    make_marking,
    make_randomized_combined,
    necessity_demo,
    partition_phases,
    run_combined,
    shuttle_algorithms,
    simulate,
    verify_punish_guarantee,
)
from competitive_paging.algorithms.offline import Belady
from competitive_paging.cli import main
from competitive_paging.cli.sequences import altpairs, generate, uniform

criterion = pytest.mark.criterion


def phase_costs(per_step, phases):
    return [sum(per_step[i] for i in ph.indices()) for ph in phases]


@criterion(1, "harmonic(k) equals direct summation for k = 1..10")
def test_criterion_01_harmonic_ladder():
    for k in range(1, 11):
        direct = sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))
        assert harmonic(k) == direct


@criterion(2, "marking on alternating pairs: 2 per phase, ratio in [1.95, 2.01]")
def test_criterion_02_marking_counterexample():
    t0 = time.perf_counter()
    pt = ProblemType(2, 4)
    seq = altpairs(400)
    phases = partition_phases(seq, pt.k, pt.default_cache)
    assert len(phases) == 200 and all(ph.complete and ph.l == 2 for ph in phases)
    ex = expected_cost_exact(make_marking(pt), pt, seq)
    # a step costs at most 1, so expectation 1 means every branch pays 1
    assert all(c == 1 for c in ex.per_step)
    assert phase_costs(ex.per_step, phases) == [2] * 200
    for seed in range(5):
        assert simulate(make_marking(pt), pt, seq, seed=seed).total_cost == 400
    opt = belady_opt(seq, pt).cost
    assert 200 <= opt <= 200 + pt.k
    assert 1.95 <= ex.total / opt <= 2.01
    assert time.perf_counter() - t0 < 1.0


@criterion(3, "nemesis vs marking (k=3, n=4): every round >= 11/6, Belady <= 23")
def test_criterion_03_lower_bound():
    pt = ProblemType(3, 4)
    res = generate_nemesis(make_marking(pt), 20)
    assert len(res.phase_costs) == 20
    assert all(c >= Fraction(11, 6) for c in res.phase_costs)
    assert belady_opt(res.requests, pt).cost <= 20 + 3


@criterion(4, "marking at k = n-1 = 3: 20 H_3 <= cost <= H_3 opt + 3")
def test_criterion_04_upper_and_lower_consistency():
    pt = ProblemType(3, 4)
    res = generate_nemesis(make_marking(pt), 20)
    total = expected_cost_exact(make_marking(pt), pt, res.requests).total
    assert total == res.total
    opt = belady_opt(res.requests, pt).cost
    assert total >= 20 * harmonic(3)
    assert total <= harmonic(3) * opt + pt.k


@criterion(5, "EATR: complete phase costs l + l/(l+1); ratio vs Belady <= 1.52")
def test_criterion_05_eatr():
    t0 = time.perf_counter()
    pt = ProblemType(2, 6)
    for l in (1, 2, 3):
        seq = list(range(3, 3 + l)) + [1]
        ex = expected_cost_exact(make_eatr(pt), pt, seq)
        (ph,) = eatr_phases(seq)
        assert ph.complete and ph.l == l
        assert sum(ex.per_step[ph.start:ph.end + 1]) == l + Fraction(l, l + 1)

    # longer mixed sequences: every complete phase still matches
    seq = uniform(6, 2000, seed=11)
    ex = expected_cost_exact(make_eatr(pt), pt, seq)
    for ph in eatr_phases(seq):
        if ph.complete:
            assert sum(ex.per_step[ph.start:ph.end + 1]) == ph.l + Fraction(ph.l, ph.l + 1)

    pt3 = ProblemType(2, 3)
    nem = generate_nemesis(make_eatr(pt3), 300)
    assert nem.total / belady_opt(nem.requests, pt3).cost <= 1.52
    for n in (3, 4, 6):
        ptn = ProblemType(2, n)
        for seed in range(3):
            s = uniform(n, 3000, seed=seed)
            cost = expected_cost_exact(make_eatr(ptn), ptn, s).total
            assert cost / belady_opt(s, ptn).cost <= 1.52
    assert time.perf_counter() - t0 < 10.0


@criterion(6, "per-phase marking bound and Belady per-phase / prefix lower bounds")
def test_criterion_06_phase_bounds():
    pt = ProblemType(3, 5)
    hk = harmonic(pt.k)
    for seed in range(100):
        seq = uniform(pt.n, 80, seed=1000 + seed)
        phases = partition_phases(seq, pt.k, pt.default_cache)
        per_step = expected_cost_exact(make_marking(pt), pt, seq).per_step
        for ph, cost in zip(phases, phase_costs(per_step, phases)):
            if ph.complete:
                assert cost <= ph.l * (hk - harmonic(ph.l) + 1)

        trace = simulate(Belady(pt, seq), pt, seq)
        caches = trace.caches_before() + [trace.steps[-1].cache_after]
        costs = trace.costs
        clean_total = 0
        for a in analyze_phases(seq, pt.k, pt.default_cache, caches, costs):
            assert a.reference_cost >= max(a.phase.l - a.d, a.d_end)
            clean_total += a.phase.l
            assert sum(costs[:a.phase.end + 1]) >= Fraction(clean_total, 2) - pt.k


@criterion(7, "Belady equals brute force on all 4^8 sequences (k=2, n=4)")
def test_criterion_07_exhaustive_offline():
    pt = ProblemType(2, 4)
    for seq in itertools.product(range(1, 5), repeat=8):
        seq = list(seq)
        assert belady_opt(seq, pt).cost == brute_force_opt(seq, pt)


@criterion(8, "LRU on the cyclic nemesis (k=3, n=4, N=3000): cost N, ratio in [2.85, 3.0]")
def test_criterion_08_deterministic_lower_bound():
    t0 = time.perf_counter()
    pt = ProblemType(3, 4)
    seq = generate("cyclic", 3, 4, 3000)
    assert seq == deterministic_nemesis(make_lru(pt), 3000)
    assert simulate(make_lru(pt), pt, seq).total_cost == 3000
    ratio = 3000 / belady_opt(seq, pt).cost
    assert 2.85 <= ratio <= 3.0
    assert time.perf_counter() - t0 < 1.0


@criterion(9, "LRU + FIFO combiner with c = (2, 2): punish guarantee at every fault; c = (1.5, 1.5) exits 3")
def test_criterion_09_combiner(capsys):
    pt = ProblemType(4, 10)
    cfg = CombinerConfig([make_lru(pt), make_fifo(pt)], [2, 2])
    for seed in range(50):
        seq = uniform(10, 10_000, seed=seed)
        run = run_combined(make_combined(cfg), seq)
        assert verify_punish_guarantee(run.ledger, cfg).ok
        for ev in run.ledger.events:
            for i in range(2):
                assert ev.pun[i] >= math.floor(Fraction(ev.cost) / cfg.constants[i])
                assert ev.member_costs[i] >= ev.pun[i]
    assert main(["combine", "--algs", "lru,fifo", "--c", "1.5,1.5", "--len", "100"]) == 3
    capsys.readouterr()


@criterion(10, "LRU + marking randomized combiner: pathwise ledger, E[C_A] <= 2 E[C_M] + k within 3 SE")
def test_criterion_10_randomized_combiner():
    pt = ProblemType(3, 6)
    cfg = CombinerConfig([make_lru(pt), make_marking(pt)], [2, 2])
    seq = uniform(6, 2000, seed=77)
    a_costs, lru_costs, m_costs = [], [], []
    for seed in range(100):
        run = run_combined(make_randomized_combined(cfg, seed), seq)
        assert verify_punish_guarantee(run.ledger, cfg).ok
        a_costs.append(run.ledger.combined_cost)
        lru_costs.append(run.ledger.member_costs[0])
        m_costs.append(run.ledger.member_costs[1])
    a = np.asarray(a_costs, dtype=float)
    for member in (m_costs, lru_costs):
        diff = a - 2 * np.asarray(member, dtype=float) - pt.k
        se = diff.std(ddof=1) / math.sqrt(len(diff))
        assert diff.mean() <= 3 * se


@criterion(11, "shuttle suite (m=2) vs nemesis of N=10^4: C_A = N, sum C_B <= N, excess grows for c = (1.5, 1.5)")
def test_criterion_11_necessity():
    t0 = time.perf_counter()
    N = 10_000
    pt = ProblemType(3, 4)
    for target in (make_lru(pt), make_fifo(pt)):
        tau = deterministic_nemesis(target, N)
        assert simulate(target, pt, tau).total_cost == N
        assert sum(simulate(b, pt, tau).total_cost for b in shuttle_algorithms(2)) <= N
    rep = necessity_demo(make_lru(pt), [Fraction(3, 2), Fraction(3, 2)], N)
    assert rep.target_cost == N and sum(rep.member_costs) <= N
    # for c with sum(1/c) > 1 some member falls behind by a margin linear in N
    assert rep.excess[-1] >= N - Fraction(3, 2) * N / 2
    quarter = [rep.excess[q * N // 4 - 1] for q in (1, 2, 3, 4)]
    assert quarter == sorted(quarter) and quarter[-1] > quarter[0]
    assert rep.crossing is not None
    assert time.perf_counter() - t0 < 1.0
