"""Following several algorithms at once with the punish rule.

With constants c satisfying sum(1/c) <= 1, the combination pays at most
c(i) times what member i pays (plus c(i)), whatever the input.  When
sum(1/c) > 1 no combination can promise that: the shuttle suite below
splits one unit of cost per request between two members, while some
on-line algorithm must pay for every request.
"""

from fractions import Fraction

from competitive_paging import (
    CombinerConfig, ProblemType, make_combined, make_fifo, make_lru, make_marking, make_randomized_combined,
    necessity_demo, run_combined, verify_punish_guarantee,
)
from competitive_paging.cli.sequences import uniform

pt = ProblemType(4, 10)
seq = uniform(10, 20_000, seed=3)
cfg = CombinerConfig([make_lru(pt), make_fifo(pt)], [2, 2])
run = run_combined(make_combined(cfg), seq)
print("lru+fifo  combined", run.ledger.combined_cost, "members", run.ledger.member_costs,
      "punishes", run.ledger.pun, "guarantee", bool(verify_punish_guarantee(run.ledger, cfg)))

cfg = CombinerConfig([make_lru(pt), make_marking(pt)], [2, 2])
run = run_combined(make_randomized_combined(cfg, 5), seq)
print("lru+marking  combined", run.ledger.combined_cost, "members", run.ledger.member_costs,
      "guarantee", bool(verify_punish_guarantee(run.ledger, cfg)))

rep = necessity_demo(make_lru(ProblemType(3, 4)), [Fraction(3, 2), Fraction(3, 2)], 10_000, additive=100)
print(f"shuttles: target pays {rep.target_cost}, members pay {rep.member_costs}")
for t in (100, 1000, 10_000):
    print(f"  after {t:6d} requests C_A - 1.5 C_B(i) reaches {float(rep.excess[t - 1]):.1f} for some i")
print("  it first exceeds 100 at request", rep.crossing)
