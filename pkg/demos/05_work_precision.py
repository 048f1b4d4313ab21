#!/usr/bin/env python3
"""Work-precision comparison including an explicit Runge-Kutta baseline.

Sweeps tolerances with the adaptive controller and reports achieved error
against right-hand-side evaluations.  The explicit fourth-order method is
stability-limited: at loose tolerances its cost is set by the spectral
radius of the Jacobian, not by accuracy, which is where the linearly
implicit Krylov methods win.
"""

from rokit.bench import RunConfig, run_work_precision
from rokit.problems import lorenz96

problem = lorenz96()
tols = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)

for method, dim in (("rok4a", 8), ("rodas4", "full"), ("rk4", None)):
    cfg = RunConfig(problem="lorenz96", method=method,
                    krylov_dim=dim if dim else "full", tols=tols)
    rows = run_work_precision(cfg, problem=problem)
    print(f"\n{method} (krylov_dim={dim}):")
    print(f"  {'tol':>8s} {'error':>10s} {'f_evals':>8s} {'jvp_evals':>9s}")
    for tol, err, fe, je, _ in rows:
        print(f"  {tol:8.0e} {err:10.2e} {fe:8d} {je:9d}")
