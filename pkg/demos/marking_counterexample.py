"""Marking on alternating pairs at k=2, n=4.

Every phase consists of two clean vertices, so marking pays 2 per phase on
every random branch, while an off-line pair of servers shadows the requests
for 1 per phase.  The ratio therefore tends to 2, above H_2 = 3/2.
"""

from competitive_paging import ProblemType, belady_opt, expected_cost_exact, make_marking, partition_phases
from competitive_paging.cli.sequences import altpairs

pt = ProblemType(2, 4)
for phases in (10, 100, 1000):
    seq = altpairs(2 * phases)
    cost = expected_cost_exact(make_marking(pt), pt, seq).total
    opt = belady_opt(seq, pt).cost
    assert len(partition_phases(seq, pt.k, pt.default_cache)) == phases
    print(f"{phases:5d} phases  marking {cost}  optimum {opt}  ratio {float(cost / opt):.4f}")
