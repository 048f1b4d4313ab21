"""Acceptance suite: one test per shipped guarantee, with pass/fail lines.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion including its runtime against the stated budget.  The heavy
shallow-water criterion dominates the total runtime (a few minutes).
"""

import time

import numpy as np
import pytest

import rokit
from rokit import (ArnoldiOptions, ControllerConfig, JvpMode, RokConfig,
                   classical_rosenbrock_step, integrate_adaptive, rok_step,
                   second_directional_derivative, stability_function)
from rokit.bench import RunConfig, build_reference, relative_error, run_convergence
from rokit.conditions import (order_condition_residuals,
                              parabolic_condition_residuals,
                              sample_stability_boundary,
                              stability_at_infinity)
from rokit.krylov import arnoldi, extend_basis_type2
from rokit.linalg import weighted_rms_norm
from rokit.problems import burgers_fd, lorenz96, shallow_water
from rokit.stepper import integrate_fixed, make_rok_stepper
from rokit.tableaux import get_method

# the fixed finite-difference increment and step ladder for the
# low-accuracy Jacobian-vector-product experiment: chosen so the
# difference error dominates the local truncation error over the ladder
LOW_ACCURACY_DELTA = 0.3
LOW_ACCURACY_STEPS = (160, 320, 640, 1280)


def _report(criterion: str, ok: bool, detail: str, elapsed: float,
            budget: float) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"{status} {criterion}: {detail} [{elapsed:.2f}s / "
          f"budget {budget:.0f}s]")
    assert ok, f"{criterion}: {detail}"
    assert elapsed < budget, f"{criterion} exceeded runtime budget"


@pytest.fixture(scope="module")
def lorenz_prob():
    return lorenz96()


@pytest.fixture(scope="module")
def swe_prob():
    return shallow_water()


def test_criterion_1_tableau_verification():
    tic = time.perf_counter()
    checks = []
    for name, tol in (("rok4a", 1e-10), ("rok4p", 1e-10), ("rok4b", 1e-8)):
        worst = max(r.residual
                    for r in order_condition_residuals(get_method(name), "k4"))
        checks.append((f"{name}-k4", worst, tol))
    worst_par = max(r.residual
                    for r in parabolic_condition_residuals(get_method("rok4p")))
    checks.append(("rok4p-parabolic", worst_par, 1e-8))
    t = get_method("rok4b")
    sa = np.abs(t.b - t.beta_full[t.s - 1, :]).max()
    checks.append(("rok4b-stiff-accuracy", sa, 1e-10))
    ok = all(v <= tol for _, v, tol in checks)
    detail = ", ".join(f"{n}={v:.1e}" for n, v, _ in checks)
    _report("criterion-1 tableau verification", ok, detail,
            time.perf_counter() - tic, 1.0)


def test_criterion_2_stability():
    tic = time.perf_counter()
    failures = []
    for name in ("rok4a", "rok4b", "rok4p"):
        tab = get_method(name)
        if stability_function(tab, 0.0) != 1.0 + 0.0j:
            failures.append(f"{name}: R(0) != 1")
        if abs(stability_at_infinity(tab, "main")) > 1e-8:
            failures.append(f"{name}: |R(inf)| > 1e-8")
        ys = np.linspace(-1e3, 1e3, 1000)
        peak = max(r for _, r, _ in sample_stability_boundary(tab, ys))
        if peak > 1.0 + 1e-9:
            failures.append(f"{name}: axis peak {peak}")
    ra = stability_at_infinity(get_method("rok4a"), "embedded")
    rp = stability_at_infinity(get_method("rok4p"), "embedded")
    rb = stability_at_infinity(get_method("rok4b"), "embedded")
    if abs(ra - (-0.55)) > 0.01:
        failures.append(f"rok4a embedded limit {ra}")
    if abs(rp - 0.24) > 0.01:
        failures.append(f"rok4p embedded limit {rp}")
    if abs(rb) > 1e-8:
        failures.append(f"rok4b embedded limit {rb}")
    _report("criterion-2 stability", not failures,
            failures or f"emb limits {ra:+.3f}/{rp:+.3f}/{rb:+.1e}",
            time.perf_counter() - tic, 1.0)


def test_criterion_3_restricted_power_oracle(lorenz_prob):
    tic = time.perf_counter()
    sys = lorenz_prob.system
    y = lorenz_prob.y0
    f0 = sys.eval_f(0.0, y)
    basis = arnoldi(sys, 0.0, y, f0, ArnoldiOptions(m=6))
    J = sys.eval_jacobian(0.0, y)
    from rokit.krylov import apply_reduced_power
    gaps = []
    jk = f0.copy()
    for k in range(6):
        ak = apply_reduced_power(basis, k)
        gaps.append(np.linalg.norm(ak - jk) / np.linalg.norm(jk))
        jk = J @ jk
    ok = max(gaps) <= 1e-9
    _report("criterion-3 restricted-power oracle", ok,
            f"max gap k<=5: {max(gaps):.2e}", time.perf_counter() - tic, 1.0)


def test_criterion_4_lorenz_convergence_table(lorenz_prob):
    tic = time.perf_counter()
    n = lorenz_prob.system.dimension
    rows = []
    for method in ("rok4a", "rok4b", "rok4p"):
        for dim in (n, 4):
            rows.append((method, dim, "4.0+-0.2"))
    for method in ("ros4", "rodas4"):
        rows.append((method, 4, "<=3.4"))
        rows.append((method, "full", "4.0+-0.2"))
    results = []
    failures = []
    for method, dim, band in rows:
        cfg = RunConfig(problem="lorenz96", method=method, krylov_dim=dim)
        rep = run_convergence(cfg, problem=lorenz_prob)
        results.append(f"{method}/M={dim}: {rep.fitted_order:.2f}")
        if band == "4.0+-0.2":
            if abs(rep.fitted_order - 4.0) > 0.2:
                failures.append(results[-1])
        else:
            if rep.fitted_order > 3.4:
                failures.append(results[-1])
    _report("criterion-4 Lorenz-96 convergence table", not failures,
            "; ".join(results), time.perf_counter() - tic, 30.0)


def test_criterion_5_shallow_water_table(swe_prob):
    tic = time.perf_counter()
    results = []
    failures = []
    for method in ("rok4a", "rok4b", "rok4p"):
        for label, dim, jvp in (("full", "full", "exact"),
                                ("krylov", 8, "exact"),
                                ("fd", 8, "fd")):
            cfg = RunConfig(problem="shallow-water", method=method,
                            krylov_dim=dim, jvp=jvp)
            rep = run_convergence(cfg, problem=swe_prob)
            results.append(f"{method}/{label}: {rep.fitted_order:.2f}")
            if rep.fitted_order < 3.6:
                failures.append(results[-1])
    for method, lo, hi in (("rok4a", 1.6, 2.6), ("rok4b", 1.6, 2.6),
                           ("rok4p", 0.7, 1.5)):
        cfg = RunConfig(problem="shallow-water", method=method, krylov_dim=8,
                        jvp=f"fd-fixed:{LOW_ACCURACY_DELTA}",
                        steps=LOW_ACCURACY_STEPS)
        rep = run_convergence(cfg, problem=swe_prob)
        results.append(f"{method}/low-acc: {rep.fitted_order:.2f}")
        if not (lo <= rep.fitted_order <= hi):
            failures.append(results[-1])
    _report("criterion-5 shallow-water convergence table", not failures,
            "; ".join(results), time.perf_counter() - tic, 600.0)


def test_criterion_6_scalar_equivalence():
    tic = time.perf_counter()
    tab = get_method("rok4a")
    rng = np.random.default_rng(2014)
    worst = 0.0
    for _ in range(20):
        lam = rng.uniform(-10.0, -0.1)
        h = rng.uniform(0.01, 1.0)
        y0 = rng.uniform(0.5, 2.0)
        sys = rokit.OdeSystem(
            dimension=1, eval_f=lambda t, y, lam=lam: lam * y,
            eval_jvp=lambda t, y, u, lam=lam: lam * u, is_autonomous=True)
        res = rok_step(sys, 0.0, np.array([y0]), h,
                       RokConfig(tableau=tab, arnoldi=ArnoldiOptions(m=1)))
        want = stability_function(tab, h * lam).real * y0
        worst = max(worst, abs(res.y_next[0] - want) / abs(want))
    _report("criterion-6 scalar equivalence", worst <= 1e-12,
            f"worst relative gap {worst:.2e}", time.perf_counter() - tic, 1.0)


def test_criterion_7_full_space_equivalence(lorenz_prob):
    tic = time.perf_counter()
    tab = get_method("rok4a")
    sys = lorenz_prob.system
    cfg = RokConfig(tableau=tab, arnoldi=ArnoldiOptions(m=40))
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        y = lorenz_prob.y0 + 0.5 * rng.standard_normal(40)
        h = rng.uniform(0.002, 0.02)
        a = rok_step(sys, 0.0, y, h, cfg)
        b = classical_rosenbrock_step(sys, 0.0, y, h, tab)
        worst = max(worst, float(np.abs(a.y_next - b.y_next).max()
                                 / np.abs(b.y_next).max()))
    _report("criterion-7 full-space equivalence", worst <= 1e-8,
            f"worst relative gap {worst:.2e}", time.perf_counter() - tic, 5.0)


def test_criterion_8_adaptive_controller(lorenz_prob):
    tic = time.perf_counter()
    failures = []
    details = []
    tab = get_method("rok4a")

    # scalar decay at two tolerances
    sys1 = rokit.OdeSystem(dimension=1, eval_f=lambda t, y: -y,
                           eval_jvp=lambda t, y, u: -u, is_autonomous=True)
    fn1 = make_rok_stepper(RokConfig(tableau=tab, arnoldi=ArnoldiOptions(m=1)))
    for rtol in (1e-4, 1e-6):
        y, _ = integrate_adaptive(sys1, np.array([1.0]), 0.0, 1.0, 0.1, fn1,
                                  ControllerConfig(atol=rtol, rtol=rtol))
        err = abs(y[0] - np.exp(-1.0))
        details.append(f"decay rtol={rtol:g}: {err / rtol:.2f}x")
        if err > 100 * rtol:
            failures.append(details[-1])

    # Lorenz-96 at two tolerances, plus accepted-step norm audit
    ref = build_reference(lorenz_prob, 320)
    fn = make_rok_stepper(RokConfig(tableau=tab, arnoldi=ArnoldiOptions(m=8)))
    for rtol in (1e-4, 1e-6):
        ctrl = ControllerConfig(atol=rtol, rtol=rtol)
        calls = []

        def recording(s, t, y, h):
            res = fn(s, t, y, h)
            calls.append((t, weighted_rms_norm(res.error_estimate, y,
                                               res.y_next, ctrl.atol,
                                               ctrl.rtol)))
            return res

        y, stats = integrate_adaptive(lorenz_prob.system, lorenz_prob.y0,
                                      0.0, 0.3, 0.01, recording, ctrl)
        err = relative_error(y, ref)
        details.append(f"lorenz rtol={rtol:g}: {err / rtol:.2f}x")
        if err > 100 * rtol:
            failures.append(details[-1])
        accepted = [e for (t, e), nxt in zip(calls, calls[1:] + [None])
                    if nxt is None or nxt[0] > t]
        if any(e > 1.0 for e in accepted):
            failures.append(f"accepted step with error norm > 1 at rtol {rtol}")

    # monotone tolerance sweep, one inversion permitted
    errs = []
    for tol in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8):
        y, _ = integrate_adaptive(lorenz_prob.system, lorenz_prob.y0, 0.0,
                                  0.3, 0.01, fn,
                                  ControllerConfig(atol=tol, rtol=tol))
        errs.append(relative_error(y, ref))
    inversions = sum(1 for a, b in zip(errs, errs[1:]) if b >= a)
    details.append(f"sweep inversions={inversions}")
    if inversions > 1:
        failures.append(f"{inversions} inversions in tolerance sweep")
    _report("criterion-8 adaptive controller", not failures,
            "; ".join(details), time.perf_counter() - tic, 30.0)


def test_criterion_9_enriched_basis_identity(lorenz_prob):
    tic = time.perf_counter()
    sys = lorenz_prob.system
    y = lorenz_prob.y0
    f0 = sys.eval_f(0.0, y)
    basis = arnoldi(sys, 0.0, y, f0, ArnoldiOptions(m=4))
    ext = extend_basis_type2(sys, basis, 0.0, y, f0, JvpMode.exact())
    u_g2 = second_directional_derivative(sys, JvpMode.exact(), 0.0, y, f0)
    J = sys.eval_jacobian(0.0, y)
    restricted = ext.V @ (ext.H @ (ext.V.T @ u_g2))
    true = J @ u_g2
    rel = np.linalg.norm(restricted - true) / np.linalg.norm(true)
    _report("criterion-9 enriched-basis identity", rel <= 1e-8,
            f"relative gap {rel:.2e}", time.perf_counter() - tic, 1.0)


def test_burgers_qualitative_temporal_order():
    # stands in for the digit-level spectral-discretization curves, which a
    # finite-difference spatial operator cannot reproduce
    tic = time.perf_counter()
    prob = burgers_fd()
    cfg = RunConfig(problem="burgers", method="rok4a", krylov_dim=4)
    rep = run_convergence(cfg, problem=prob)
    ok = rep.fitted_order >= 3.5
    _report("burgers qualitative temporal order", ok,
            f"fitted order {rep.fitted_order:.2f}",
            time.perf_counter() - tic, 60.0)
