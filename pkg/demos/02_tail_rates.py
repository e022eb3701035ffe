"""How fast do atypically large or small independent sets become rare?

For c = 1 the greedy set covers about log 2 of the vertices. The exact law
of the set size gives -(1/N) log P(T/N >= log 2 + eps) for finite N; the
large-deviation rate predicts the limit. The finite-N values approach it
roughly like 1/N, so a two-point Richardson step recovers most of the gap.
"""

import math

from greedy_ldp import ModelParams, exact_stop_time_distribution, t_star, tail_log_prob, tail_rate

c, eps = 1.0, 0.1
sizes = (100, 200, 400, 800, 1600)
dists = {n: exact_stop_time_distribution(ModelParams(c, n)) for n in sizes}

for side, theta in (("upper", t_star(c) + eps), ("lower", t_star(c) - eps)):
    limit = tail_rate(c, eps, side)
    print(f"{side} tail, threshold {theta:.4f}: rate {float(limit):.5f} "
          f"(initial momentum {limit.optimizer:+.4f})")
    prev = None
    for n in sizes:
        a = -float(tail_log_prob(dists[n], theta, side)) / n
        line = f"  N={n:5d}  a_N={a:.5f}  gap={a - float(limit):+.5f}"
        if prev is not None:
            line += f"  Richardson={2 * a - prev:.5f}"
        print(line)
        prev = a

print("\nrate as a function of eps (upper side)")
for e in (0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3):
    r = float(tail_rate(c, e, "upper"))
    print(f"  eps={e:.2f}  rate={r:.6f}  rate/eps^2={r / e ** 2:.4f}")
print(f"  small-eps prediction 1/(2 sigma^2) = {1 / (2 * c / (2 * (1 + c) ** 2)):.4f}")
