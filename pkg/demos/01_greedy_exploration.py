"""Greedy independent sets on one random graph, then on many.

Samples G(n, c/n), runs the greedy exploration, checks that the result is a
maximal independent set, and compares the size distribution from explicit
graphs with the one-dimensional chain and with its exact law.
"""

import numpy as np

from greedy_ldp import (
    ModelParams,
    derive_seed,
    exact_stop_time_distribution,
    greedy_explore,
    sample_er_graph,
    simulate_stop_times,
    t_star,
    verify_independent_maximal,
)

MASTER_SEED = 2024
params = ModelParams(c=2.0, n=60)

graph = sample_er_graph(params, derive_seed(MASTER_SEED, 0))
record = greedy_explore(graph, derive_seed(MASTER_SEED, 1))
print(f"graph: n={graph.n}, edges={graph.m}")
print(f"independent set of size {record.stop_time}: {sorted(record.active)}")
print(f"explored counts Z_k: {list(record.z_steps)}")
print(f"check: {verify_independent_maximal(graph, record.active)}")

# many graphs versus the chain versus the exact law
reps = 20_000
sizes = np.array([
    greedy_explore(sample_er_graph(params, derive_seed(MASTER_SEED + 1, i)),
                   derive_seed(MASTER_SEED + 2, i)).stop_time
    for i in range(reps)
])
chain = simulate_stop_times(params, reps, derive_seed(MASTER_SEED, 3))
exact = exact_stop_time_distribution(params)

print(f"\nmean T/n  graphs {sizes.mean() / params.n:.4f}  chain {chain.mean() / params.n:.4f}  "
      f"exact {exact.mean() / params.n:.4f}  fluid limit {t_star(params.c):.4f}")
print("\n  k   graphs    chain    exact")
for k in range(20, 31):
    print(f"{k:3d}  {np.mean(sizes == k):.4f}  {np.mean(chain == k):.4f}  {exact.pmf[k - 1]:.4f}")
