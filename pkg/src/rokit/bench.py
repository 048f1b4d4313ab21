"""Benchmark harness: convergence tables, work-precision sweeps, basis checks.

Temporal errors are always measured against an internally generated
reference trajectory that must pass a two-solver agreement gate before
use; see :func:`build_reference`.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .control import ControllerConfig, integrate_adaptive
from .errors import (InsufficientRows, MissingCapability,
                     ReferenceDisagreement, StepSizeUnderflow)
from .krylov import ArnoldiOptions, apply_reduced_power, arnoldi
from .model import JvpMode, OdeSystem, WorkCounters, jvp as jvp_op
from .problems import ProblemSpec, get_problem
from .stepper import (RokConfig, integrate_fixed, make_classical_stepper,
                      make_rok_stepper, rk4_step)
from .tableaux import ROK_METHOD_NAMES, get_method

LIB_VERSION = "rokit-0.1.0"

DEFAULT_STEPS = (20, 40, 80, 160, 320)
DEFAULT_TOLS = tuple(10.0 ** (-k) for k in range(2, 9))

# usable-error window for the order fit: rows below 1e2x the reference
# tolerance sit on the reference error floor, rows above 1e-1 are
# pre-asymptotic
FIT_FLOOR_FACTOR = 1e2
FIT_CEILING = 1e-1

REFERENCE_STEP_MULTIPLE = 8
REFERENCE_AGREEMENT = 1e-10
REFERENCE_KRYLOV_DIM = 12


@dataclass(frozen=True)
class RunConfig:
    """Echoable configuration of one benchmark run."""

    problem: str
    method: str
    krylov_dim: Union[int, str] = "full"
    jvp: str = "exact"
    basis: str = "type1"
    steps: Sequence[int] = DEFAULT_STEPS
    tols: Sequence[float] = DEFAULT_TOLS
    atol: Optional[float] = None
    rtol: Optional[float] = None
    out: Optional[str] = None
    threads: int = 1

    def canonical(self) -> str:
        steps = ",".join(str(s) for s in self.steps)
        tols = ",".join(format(t, ".3e") for t in self.tols)
        return (f"problem={self.problem} method={self.method} "
                f"krylov_dim={self.krylov_dim} jvp={self.jvp} "
                f"basis={self.basis} steps={steps} tols={tols} "
                f"atol={self.atol} rtol={self.rtol} threads={self.threads} "
                f"lib={LIB_VERSION}")


@dataclass
class ConvergenceRow:
    h: float
    error: float
    f_evals: int
    jvp_evals: int
    wall_seconds: float


@dataclass
class ConvergenceReport:
    rows: List[ConvergenceRow]
    fitted_order: float
    fit_r2: float


def parse_jvp(spec: str) -> JvpMode:
    """Parse 'exact' | 'fd' | 'fd-fixed:DELTA'."""
    if spec == "exact":
        return JvpMode.exact()
    if spec == "fd":
        return JvpMode.fd()
    if spec.startswith("fd-fixed:"):
        return JvpMode.fd_fixed(float(spec.split(":", 1)[1]))
    raise ValueError(f"unknown jvp spec {spec!r}")


def order_fit(rows: Sequence[Tuple[float, float]]):
    """Least-squares slope of log(error) against log(h), with r^2.

    Raises :class:`InsufficientRows` below three points.
    """
    pts = [(h, e) for h, e in rows if e > 0 and np.isfinite(e)]
    if len(pts) < 3:
        raise InsufficientRows(f"need >= 3 usable rows, have {len(pts)}")
    x = np.log([h for h, _ in pts])
    y = np.log([e for _, e in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def relative_error(y: np.ndarray, ref: np.ndarray) -> float:
    """Max-norm distance to the reference, relative to the reference scale."""
    scale = float(np.abs(ref).max())
    return float(np.abs(y - ref).max()) / scale


def make_step_fn(method: str, krylov_dim: Union[int, str],
                 jvp_mode: JvpMode, basis: str = "type1"):
    """Assemble the step function for a (method, Jacobian handling) pair.

    ``krylov_dim='full'`` means the exact Jacobian is used through the
    direct full-space solve (for any tableau; in exact arithmetic this
    coincides with a Krylov space of full dimension).  An integer selects
    the Krylov restriction with that many basis vectors.
    """
    tableau = get_method(method)
    if krylov_dim == "full":
        return make_classical_stepper(tableau, "full"), tableau.embedded_order
    opts = ArnoldiOptions(m=int(krylov_dim), jvp_mode=jvp_mode)
    if method in ROK_METHOD_NAMES:
        cfg = RokConfig(tableau=tableau, arnoldi=opts, basis_variant=basis)
        return make_rok_stepper(cfg), tableau.embedded_order
    return make_classical_stepper(tableau, opts), tableau.embedded_order


_reference_cache = {}


def build_reference(problem: ProblemSpec, n_finest: int):
    """Reference final state via two independent solvers.

    The primary solver is the L-stable ROK method on a moderate Krylov
    space at ``REFERENCE_STEP_MULTIPLE`` times the finest ladder
    resolution; the cross-check is a classical full-Jacobian integration
    for small systems, or the stiffly accurate ROK method for systems too
    large to factor densely.  Both must agree to ``REFERENCE_AGREEMENT``
    in the relative max norm; otherwise the resolution is doubled, and
    after two failed refinements :class:`ReferenceDisagreement` is raised.
    """
    key = (problem.name, problem.system.dimension, problem.t_span, n_finest)
    if key in _reference_cache:
        return _reference_cache[key]

    t0, tf = problem.t_span
    n = problem.system.dimension
    big = n > 1024 or problem.system.eval_jacobian is None
    m_ref = min(REFERENCE_KRYLOV_DIM, n)
    primary, _ = make_step_fn("rok4a", m_ref, JvpMode.exact())
    if big:
        cross, _ = make_step_fn("rok4b", m_ref, JvpMode.exact())
    else:
        cross, _ = make_step_fn("ros4", "full", JvpMode.exact())

    n_ref = REFERENCE_STEP_MULTIPLE * n_finest
    for attempt in range(3):
        y_a, _ = integrate_fixed(problem.system, problem.y0, t0, tf,
                                 n_ref, primary)
        y_b, _ = integrate_fixed(problem.system, problem.y0, t0, tf,
                                 n_ref, cross)
        gap = relative_error(y_a, y_b)
        if gap <= REFERENCE_AGREEMENT:
            _reference_cache[key] = y_a
            return y_a
        n_ref *= 2
    raise ReferenceDisagreement(
        f"reference solvers disagree by {gap:.3e} on {problem.name}")


def run_convergence(cfg: RunConfig,
                    problem: Optional[ProblemSpec] = None) -> ConvergenceReport:
    """Fixed-step ladder on one problem/method pair; optional CSV output."""
    if problem is None:
        problem = get_problem(cfg.problem)
    jvp_mode = parse_jvp(cfg.jvp)
    step_fn, _ = make_step_fn(cfg.method, cfg.krylov_dim, jvp_mode, cfg.basis)
    t0, tf = problem.t_span
    steps = sorted(int(s) for s in cfg.steps)
    ref = build_reference(problem, max(steps))

    def one(n_steps: int) -> ConvergenceRow:
        tic = time.perf_counter()
        y, work = integrate_fixed(problem.system, problem.y0, t0, tf,
                                  n_steps, step_fn)
        wall = time.perf_counter() - tic
        return ConvergenceRow(h=(tf - t0) / n_steps,
                              error=relative_error(y, ref),
                              f_evals=work.f_evals,
                              jvp_evals=work.jvp_evals, wall_seconds=wall)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(one, steps))
    else:
        rows = [one(n) for n in steps]

    floor = FIT_FLOOR_FACTOR * problem.reference_tolerance
    usable = [(r.h, r.error) for r in rows if floor < r.error < FIT_CEILING]
    slope, r2 = order_fit(usable)
    report = ConvergenceReport(rows=rows, fitted_order=slope, fit_r2=r2)
    if cfg.out:
        write_csv(cfg.out, cfg.canonical(),
                  ["h", "error", "f_evals", "jvp_evals", "wall_seconds"],
                  [(r.h, r.error, r.f_evals, r.jvp_evals, r.wall_seconds)
                   for r in rows],
                  footer=[("fitted_order", slope), ("fit_r2", r2)])
    return report


def spectral_radius(sys: OdeSystem, t: float, y: np.ndarray,
                    iters: int = 20) -> float:
    """Power-iteration estimate of the Jacobian spectral radius."""
    rng = np.random.default_rng(20140331)
    v = rng.standard_normal(sys.dimension)
    v /= np.linalg.norm(v)
    f0 = np.asarray(sys.eval_f(t, y), dtype=float)
    rho = 1.0
    mode = JvpMode.exact() if sys.eval_jvp is not None else JvpMode.fd()
    for _ in range(iters):
        w = jvp_op(sys, mode, t, y, v, f0)
        rho = float(np.linalg.norm(w))
        if rho == 0.0:
            return 0.0
        v = w / rho
    return rho


def _rk4_precision_row(problem: ProblemSpec, tol: float, ref: np.ndarray):
    """Fixed-step RK4 at the CFL-limited step, refined until tol is met."""
    t0, tf = problem.t_span
    rho = spectral_radius(problem.system, t0, problem.y0)
    # classical RK4 stability reach along the imaginary axis is ~2.8
    n = max(8, int(math.ceil((tf - t0) * rho / 2.8)))
    probe_evals = 20
    for _ in range(24):
        y, work = integrate_fixed(problem.system, problem.y0, t0, tf, n,
                                  rk4_step)
        err = relative_error(y, ref)
        if err <= tol:
            break
        n *= 2
    return err, work.f_evals + probe_evals, 0


def run_work_precision(cfg: RunConfig,
                       problem: Optional[ProblemSpec] = None):
    """Adaptive tolerance sweep; returns (tol, error, f_evals, jvp_evals,
    wall_seconds) rows.  ``method='rk4'`` runs the explicit baseline at its
    stability-limited fixed step instead."""
    if problem is None:
        problem = get_problem(cfg.problem)
    t0, tf = problem.t_span
    ref = build_reference(problem, max(DEFAULT_STEPS))
    rows = []
    for tol in cfg.tols:
        tic = time.perf_counter()
        if cfg.method == "rk4":
            err, f_evals, jvp_evals = _rk4_precision_row(problem, tol, ref)
            rows.append((tol, err, f_evals, jvp_evals,
                         time.perf_counter() - tic))
            continue
        jvp_mode = parse_jvp(cfg.jvp)
        step_fn, p_hat = make_step_fn(cfg.method, cfg.krylov_dim, jvp_mode,
                                      cfg.basis)
        ctrl = ControllerConfig(atol=cfg.atol if cfg.atol else tol,
                                rtol=cfg.rtol if cfg.rtol else tol)
        h0 = (tf - t0) / 50.0
        try:
            y, stats = integrate_adaptive(problem.system, problem.y0, t0, tf,
                                          h0, step_fn, ctrl, p_hat)
            err = relative_error(y, ref)
            rows.append((tol, err, stats.f_evals, stats.jvp_evals,
                         time.perf_counter() - tic))
        except StepSizeUnderflow:
            rows.append((tol, float("nan"), 0, 0,
                         time.perf_counter() - tic))
    if cfg.out:
        write_csv(cfg.out, cfg.canonical(),
                  ["tol", "error", "f_evals", "jvp_evals", "wall_seconds"],
                  rows)
    return rows


def run_lemma1(problem: ProblemSpec, m: int):
    """Gap table between restricted and true Jacobian powers on the seed.

    Requires the dense-Jacobian capability.  Returns rows
    ``(k, relative_gap)`` for k = 0..m; the k = m row is outside the
    guaranteed range and printed for contrast.
    """
    sys = problem.system
    if sys.eval_jacobian is None:
        raise MissingCapability("lemma1 table needs a dense Jacobian")
    t0 = problem.t_span[0]
    y = problem.y0
    f0 = np.asarray(sys.eval_f(t0, y), dtype=float)
    basis = arnoldi(sys, t0, y, f0, ArnoldiOptions(m=m))
    J = np.asarray(sys.eval_jacobian(t0, y), dtype=float)
    rows = []
    jk = f0.copy()
    for k in range(m + 1):
        ak = apply_reduced_power(basis, k)
        denom = float(np.linalg.norm(jk))
        gap = float(np.linalg.norm(ak - jk)) / denom if denom else 0.0
        rows.append((k, gap))
        jk = J @ jk
    return rows


def write_csv(path: str, config_string: str, header: Sequence[str],
              rows: Sequence[Sequence], footer=None) -> None:
    """CSV with a canonical-config comment line and 17-digit scientific
    notation for floats."""
    def fmt(v):
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        return format(float(v), ".16e")

    lines = [f"# config: {config_string}", ",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    if footer:
        for name, value in footer:
            lines.append(f"# {name}: {fmt(value)}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
