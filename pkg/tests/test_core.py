from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from competitive_paging import (
    LRU,
    Distribution,
    InvalidInputError,
    Load,
    Move,
    ProblemType,
    RandomSource,
    ResourceLimitError,
    derive_seed,
    empirical_expected_cost,
    expected_cost_exact,
    harmonic,
    make_lru,
    make_marking,
    make_random,
    overlap_deficit,
    partition_phases,
    phase_counters,
    phase_opt_bounds,
    simulate,
)
from competitive_paging.core.bits import NoRandomness, splitmix64_mix
from competitive_paging.core.errors import RandomnessAccessError


# --- bit stream -----------------------------------------------------------

def test_splitmix_reference_value():
    # first output of SplitMix64 seeded with 0 (published reference value)
    assert splitmix64_mix(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF


def test_same_seed_same_stream():
    a, b = RandomSource(42), RandomSource(42)
    assert [a.bit() for _ in range(300)] == [b.bit() for _ in range(300)]


def test_random_access_cursor_matches_sequential_read():
    seq = RandomSource(7)
    bits = [seq.bit() for _ in range(200)]
    late = RandomSource(7, position=130)
    assert [late.bit() for _ in range(70)] == bits[130:]


def test_randbelow_power_of_two_consumes_exact_width():
    rng = RandomSource(3)
    rng.randbelow(8)
    assert rng.position == 3
    rng.randbelow(1)
    assert rng.position == 3


def test_randbelow_is_roughly_uniform():
    rng = RandomSource(11)
    counts = [0, 0, 0]
    for _ in range(30000):
        counts[rng.randbelow(3)] += 1
    assert all(abs(c - 10000) < 400 for c in counts)


def test_derive_seed_distinct_per_trial():
    seeds = {derive_seed(5, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert derive_seed(5, 0) == derive_seed(5, 0)


def test_no_randomness_refuses():
    with pytest.raises(RandomnessAccessError):
        NoRandomness().randbelow(2)


# --- types and small helpers ---------------------------------------------

@pytest.mark.parametrize("k,n", [(0, 3), (3, 3), (4, 3)])
def test_problem_type_rejects_bad_sizes(k, n):
    with pytest.raises(InvalidInputError):
        ProblemType(k, n)


@pytest.mark.parametrize("k,expected", [(1, Fraction(1)), (2, Fraction(3, 2)), (3, Fraction(11, 6))])
def test_harmonic_examples(k, expected):
    assert harmonic(k) == expected


def test_harmonic_rejects_nonpositive():
    with pytest.raises(InvalidInputError):
        harmonic(0)


@pytest.mark.parametrize("a,b,expected", [({1, 2}, {1, 2}, 0), ({1, 3}, {1, 2}, 1), ({3, 4}, {1, 2}, 2)])
def test_overlap_deficit_examples(a, b, expected):
    assert overlap_deficit(a, b) == expected


def test_overlap_deficit_size_mismatch():
    with pytest.raises(InvalidInputError):
        overlap_deficit({1, 2}, {1})


@pytest.mark.parametrize("l,d,d_end,expected", [
    (2, 1, 1, (1, Fraction(1))),
    (1, 0, 0, (1, Fraction(1, 2))),
    (3, 3, 2, (2, Fraction(1))),
])
def test_phase_opt_bounds_examples(l, d, d_end, expected):
    assert phase_opt_bounds(l, d, d_end) == expected


# --- simulate -------------------------------------------------------------

def test_simulate_lru_example():
    pt = ProblemType(2, 4)
    trace = simulate(make_lru(pt), pt, [3, 4, 3])
    assert [s.action for s in trace.steps][:2] == [Move(1, 3), Move(2, 4)]
    assert trace.steps[2].action.cost == 0
    assert trace.total_cost == 2


def test_simulate_empty_sequence():
    pt = ProblemType(2, 4)
    trace = simulate(make_marking(pt), pt, [])
    assert len(trace) == 0 and trace.total_cost == 0


def test_simulate_marking_covered_request():
    pt = ProblemType(2, 3)
    assert simulate(make_marking(pt), pt, [1]).total_cost == 0


def test_simulate_rejects_out_of_range_request_with_index():
    pt = ProblemType(2, 4)
    with pytest.raises(InvalidInputError, match="#3"):
        simulate(make_lru(pt), pt, [1, 2, 5])


def test_simulate_load_when_cache_not_full():
    pt = ProblemType(3, 5)
    trace = simulate(make_lru(pt), pt, [4, 5, 2], initial_cache={1})
    assert [s.action for s in trace.steps] == [Load(4), Load(5), Move(1, 2)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=40), st.integers(0, 2**64 - 1))
def test_replay_is_deterministic(seq, seed):
    pt = ProblemType(3, 6)
    for alg in (make_marking(pt), make_random(pt)):
        assert simulate(alg, pt, seq, seed).steps == simulate(alg, pt, seq, seed).steps


# --- exact tracker ----------------------------------------------------------

def test_exact_marking_single_fault():
    pt = ProblemType(2, 3)
    ex = expected_cost_exact(make_marking(pt), pt, [3])
    assert ex.total == 1
    p = ex.final.hole_probabilities()
    assert (p[1], p[2], p[3]) == (Fraction(1, 2), Fraction(1, 2), 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 5), max_size=30))
def test_exact_equals_simulation_for_deterministic(seq):
    pt = ProblemType(3, 5)
    assert expected_cost_exact(make_lru(pt), pt, seq).total == simulate(make_lru(pt), pt, seq).total_cost


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 5), max_size=25))
def test_distribution_invariants(seq):
    pt = ProblemType(3, 5)
    dist = Distribution(make_marking(pt), pt)
    for r in seq:
        dist.advance(r)
        assert dist.total_weight() == 1
        assert sum(dist.hole_probabilities().values()) == pt.n - pt.k
        assert all(w > 0 for w in dist.weights.values())


def test_exact_state_cap():
    pt = ProblemType(4, 8)
    with pytest.raises(ResourceLimitError, match="Monte Carlo"):
        expected_cost_exact(make_random(pt), pt, [5, 6, 7, 8, 1, 2, 3, 4] * 3, max_states=10)


def test_exact_rejects_non_enumerable():
    class Opaque(LRU):
        randomized = True

    pt = ProblemType(2, 3)
    with pytest.raises(TypeError):
        expected_cost_exact(Opaque(pt), pt, [3])


# --- Monte Carlo ------------------------------------------------------------

def test_monte_carlo_matches_exact_within_three_stderr():
    pt = ProblemType(3, 5)
    seq = [4, 5, 1, 2, 3, 4, 5, 2, 1, 3, 5, 4]
    exact = expected_cost_exact(make_marking(pt), pt, seq).total
    mc = empirical_expected_cost(make_marking(pt), pt, seq, trials=10_000, master_seed=1)
    assert abs(mc.mean - float(exact)) <= 3 * mc.stderr


def test_monte_carlo_deterministic_has_zero_stderr():
    pt = ProblemType(2, 4)
    mc = empirical_expected_cost(make_lru(pt), pt, [3, 4, 1, 2], trials=50)
    assert mc.stderr == 0 and mc.mean == 4


def test_monte_carlo_single_trial_equals_simulate():
    pt = ProblemType(2, 4)
    seq = [3, 4, 1, 3, 2, 4]
    mc = empirical_expected_cost(make_marking(pt), pt, seq, trials=1, master_seed=9)
    assert mc.mean == simulate(make_marking(pt), pt, seq, seed=derive_seed(9, 0)).total_cost


def test_monte_carlo_concurrent_equals_sequential():
    pt = ProblemType(3, 6)
    seq = [4, 5, 6, 1, 2, 3] * 5
    a = empirical_expected_cost(make_marking(pt), pt, seq, trials=64, master_seed=3)
    b = empirical_expected_cost(make_marking(pt), pt, seq, trials=64, master_seed=3, workers=4)
    assert a.costs == b.costs


# --- phases -----------------------------------------------------------------

def oracle_phases(seq, k, initial):
    """Literal reading of the phase rule: from the first request outside the
    initial cache, each phase ends at the smallest j whose window through
    j + 1 has k + 1 distinct vertices."""
    i = next((t for t, r in enumerate(seq) if r not in initial), None)
    out = []
    while i is not None and i < len(seq):
        j = i
        while j + 1 < len(seq) and len(set(seq[i:j + 2])) <= k:
            j += 1
        out.append((i, j))
        i = j + 1
    return out


def test_phases_two_all_clean_pairs():
    ph = partition_phases([3, 4, 1, 2], 2, {1, 2})
    assert [(p.start, p.end, p.l, p.clean) for p in ph] == [(0, 1, 2, {3, 4}), (2, 3, 2, {1, 2})]


def test_phases_none_started():
    assert partition_phases([1, 2, 1], 2, {1, 2}) == []


def test_phases_incomplete_tail():
    ph = partition_phases([4, 2, 2, 3, 1], 3, {1, 2, 3})
    assert [(p.start, p.end, p.l, p.complete) for p in ph] == [(0, 3, 1, True), (4, 4, 1, False)]
    assert ph[0].clean == {4}


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=40), st.integers(1, 4))
def test_phases_match_oracle(seq, k):
    initial = set(range(1, k + 1))
    ph = partition_phases(seq, k, initial)
    assert [(p.start, p.end) for p in ph] == oracle_phases(seq, k, initial)
    prev = frozenset(initial)
    for p in ph:
        assert seq[p.start] not in p.previous
        assert p.clean == p.distinct - prev and p.clean <= p.distinct
        if p.complete:
            assert len(p.distinct) == k and 1 <= p.l <= k
        prev = p.distinct


def test_phase_counters_stale_decrements():
    seq = [5, 6, 1, 2, 2]
    ph = partition_phases(seq, 4, {1, 2, 3, 4})[0]
    pc = phase_counters(seq, ph)
    assert pc.c == [0, 1, 2, 2, 2]
    assert pc.s == [4, 4, 4, 3, 2]
    assert pc.first_stale == [False, False, True, True, False]
