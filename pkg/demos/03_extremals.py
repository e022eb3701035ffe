"""The cheapest ways to finish early or late.

Each initial momentum alpha0 gives an extremal path x(t) that leaves the
fluid limit: alpha0 < 0 runs below it and exits after log 2, alpha0 > 0 runs
above and exits earlier. Along each one the Hamiltonian stays constant, and
the accumulated cost F(alpha0) is the rate of the corresponding exit time.
"""

import numpy as np

from greedy_ldp import fluid_z, make_ham_trajectory, path_rate, rate_F
from greedy_ldp.model import ScaledPath

c = 1.0
grid = np.linspace(0.0, 1.0, 11)
print("   t    fluid   a0=-1   a0=+1")
low, high = make_ham_trajectory(c, -1.0), make_ham_trajectory(c, 1.0)
for t in grid:
    print(f"{t:5.2f}  {fluid_z(c, t):.4f}  {low.x_hat(t):.4f}  {high.x_hat(t):.4f}")
print(f"exit times: fluid {make_ham_trajectory(c, 0.0).exit_time:.4f}, "
      f"a0=-1 {low.exit_time:.4f}, a0=+1 {high.exit_time:.4f}")

t = np.linspace(0.0, low.exit_time, 200)
drift = np.max(np.abs(low.hamiltonian(t[low.x(t) < 1]) - low.energy))
print(f"Hamiltonian drift along a0=-1: {drift:.1e}")

print("\n  alpha0   exit time   F(alpha0)")
for a0 in (-2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0):
    traj = make_ham_trajectory(c, a0)
    print(f"{a0:+7.2f}   {traj.exit_time:.6f}   {float(rate_F(c, a0)):.6f}")

# the same cost, recovered from a sampled piecewise-linear version of the path
ts = np.append(np.linspace(0.0, low.exit_time, 2001), 1.0)
sampled = ScaledPath(ts, low.x_hat(ts), "linear")
print(f"\npath rate of sampled a0=-1 extremal: {float(path_rate(c, sampled)):.6f} "
      f"(F = {float(rate_F(c, -1.0)):.6f})")
