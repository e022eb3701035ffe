"""How unlikely is it that greedy reaches the best possible independent set?

For c < e the largest independent set of G(n, c/n) covers sigma1*(c) of the
vertices; for c >= 3 no independent set exceeds sigma2*(c) = (2/c) log c.
Both lie above the greedy fluid value, and the tail rate at those levels
measures how exponentially rare it is for greedy to match them.
"""

import numpy as np

from greedy_ldp import bound_rate, sigma1_star, sigma2_star, t_star

print("   c    greedy   sigma1*   rate")
for c in np.linspace(0.25, 2.5, 10):
    print(f"{c:5.2f}  {t_star(c):.4f}  {sigma1_star(c):.4f}  {float(bound_rate(c, 'sigma1')):.5f}")

print("\n   c    greedy   sigma2*   rate")
for c in (3, 4, 5, 6, 8, 10):
    print(f"{c:5.2f}  {t_star(c):.4f}  {sigma2_star(c):.4f}  {float(bound_rate(c, 'sigma2')):.5f}")
