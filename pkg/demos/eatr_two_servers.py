"""EATR on two servers: a phase with l clean requests costs l + l/(l+1).

The ratio against the off-line optimum stays at or below 3/2, which is the
best any randomized algorithm can do for k = 2 when n = 3.
"""

from fractions import Fraction

from competitive_paging import ProblemType, belady_opt, expected_cost_exact, generate_nemesis, make_eatr
from competitive_paging.cli.sequences import uniform

pt = ProblemType(2, 6)
for l in range(1, 5):
    seq = list(range(3, 3 + l)) + [1]
    got = expected_cost_exact(make_eatr(pt), pt, seq).total
    print(f"l={l}: phase cost {got} (formula {l + Fraction(l, l + 1)})")

for n in (3, 4, 6):
    ptn = ProblemType(2, n)
    seq = uniform(n, 5000, seed=n)
    cost = expected_cost_exact(make_eatr(ptn), ptn, seq).total
    print(f"uniform n={n}: ratio {float(cost / belady_opt(seq, ptn).cost):.4f}")

pt3 = ProblemType(2, 3)
res = generate_nemesis(make_eatr(pt3), 200)
print(f"adversarial n=3: ratio {float(res.total / belady_opt(res.requests, pt3).cost):.4f}")
