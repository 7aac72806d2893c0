"""Building a sequence that forces H_k expected cost per round.

The adversary tracks the exact probability that each vertex is uncovered
and, inside vertices 1..k+1, keeps requesting until the algorithm has paid
1/u for each shrink of the unmarked set.  The off-line optimum pays about 1
per round, so no on-line algorithm beats H_k.
"""

from competitive_paging import (
    ProblemType, belady_opt, generate_nemesis, harmonic, make_lru, make_marking, make_random,
)

pt = ProblemType(3, 4)
print(f"H_3 = {harmonic(3)} ~ {float(harmonic(3)):.4f}")
for name, make in (("marking", make_marking), ("random", make_random), ("lru", make_lru)):
    res = generate_nemesis(make(pt), 30)
    opt = belady_opt(res.requests, pt).cost
    low = min(res.phase_costs)
    print(f"{name:8s} rounds 30  cheapest round {low} ({float(low):.4f})  "
          f"total {float(res.total):.2f}  optimum {opt}  ratio {float(res.total / opt):.3f}")
