#!/usr/bin/env python3
"""Stability functions of the shipped methods.

Prints R(infinity) for main and embedded weights, the Taylor order of R at
the origin, and a coarse table of |R(iy)| along the imaginary axis.  All
three main methods are L-stable; the stiffly accurate pair is L-stable in
the embedded weights as well.
"""

import numpy as np

from rokit.conditions import (linear_order, sample_stability_boundary,
                              stability_at_infinity)
from rokit.tableaux import get_method

ys = np.linspace(-100.0, 100.0, 2001)

for name in ("rok4a", "rok4b", "rok4p", "ros4", "rodas4"):
    tab = get_method(name)
    r_inf = stability_at_infinity(tab, "main")
    r_inf_hat = stability_at_infinity(tab, "embedded")
    rows = sample_stability_boundary(tab, ys)
    peak = max(r for _, r, _ in rows)
    peak_hat = max(rh for _, _, rh in rows)
    print(f"{name:>7s}: R(inf) = {r_inf:+.2e}  Rhat(inf) = {r_inf_hat:+.3f}  "
          f"max|R(iy)| = {peak:.6f}  max|Rhat(iy)| = {peak_hat:.6f}  "
          f"linear order = {linear_order(tab)}")

print("\nSample of |R(iy)| for rok4a:")
tab = get_method("rok4a")
for y in (0.0, 1.0, 5.0, 20.0, 100.0):
    _, r, rhat = sample_stability_boundary(tab, [y])[0]
    print(f"  y = {y:6.1f}: |R| = {r:.6f}  |Rhat| = {rhat:.6f}")
