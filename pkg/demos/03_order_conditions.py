#!/usr/bin/env python3
"""Order-condition residual tables.

Shows the condition families each method satisfies: the Krylov-order-4
family for the native methods, the classical family for the baselines, the
parabolic conditions that single out rok4p, and the hollow-node conditions
of the arbitrary-matrix (W) theory that explain behavior under inaccurate
Jacobian-vector products.
"""

from rokit.conditions import (order_condition_residuals,
                              parabolic_condition_residuals)
from rokit.tableaux import get_method


def show(name, family):
    tab = get_method(name)
    if family == "parabolic":
        rows = parabolic_condition_residuals(tab)
    else:
        rows = order_condition_residuals(tab, family)
    worst = max(r.residual for r in rows)
    flags = " ".join(f"{r.label}={r.residual:.1e}" for r in rows)
    print(f"{name:>7s} {family:>9s}: worst {worst:.2e}   {flags}")


for name in ("rok4a", "rok4b", "rok4p"):
    show(name, "k4")
print()
for name in ("ros4", "rodas4"):
    show(name, "classical")
    show(name, "k4")      # g2 fails: the split condition is the extra one
print()
for name in ("rok4a", "rok4p"):
    show(name, "parabolic")
print()
for name in ("rok4a", "rok4b", "rok4p"):
    show(name, "w")       # b2 separates rok4p from the other two
