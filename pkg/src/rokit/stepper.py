"""Time steppers: Rosenbrock-Krylov and classical Rosenbrock single steps.

A Rosenbrock-Krylov step builds one Krylov basis at (t, y), factors the
small reduced matrix ``I - h*gamma*H`` once, and runs every stage through
the reduced system; stage vectors are recovered as
``k_i = V lambda_i + h (F_i - V phi_i)``.  The classical stepper applies
the same linearly implicit recurrence in the full space with the exact
Jacobian, or with the Krylov-restricted Jacobian substituted (used to
demonstrate the order reduction classical tableaux suffer with
approximate Jacobians).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from . import linalg
from .errors import (MissingCapability, NonFiniteOutput,
                     SingularReducedSystem, ZeroInitialVector)
from .krylov import ArnoldiOptions, KrylovBasis, arnoldi, extend_basis_type2
from .linalg import SingularMatrix
from .model import OdeSystem, WorkCounters, eval_f_counted, ft, jvp
from .tableaux import MethodTableau


@dataclass
class StepResult:
    """Outcome of a single step."""

    y_next: np.ndarray
    error_estimate: np.ndarray
    work: WorkCounters
    krylov_dim_used: int = 0


@dataclass(frozen=True)
class RokConfig:
    """Configuration of a Rosenbrock-Krylov step.

    ``basis_variant`` selects the plain Krylov space ("type1") or the
    curvature-enriched space ("type2"); the enrichment is defined for
    autonomous systems only.
    """

    tableau: MethodTableau
    arnoldi: ArnoldiOptions = field(default_factory=ArnoldiOptions)
    basis_variant: str = "type1"

    def __post_init__(self):
        if self.basis_variant not in ("type1", "type2"):
            raise ValueError("basis_variant must be 'type1' or 'type2'")


def _trivial_step(y: np.ndarray, work: WorkCounters) -> StepResult:
    return StepResult(y_next=y.copy(), error_estimate=np.zeros_like(y),
                      work=work, krylov_dim_used=0)


def rok_step(sys: OdeSystem, t: float, y: np.ndarray, h: float,
             cfg: RokConfig) -> StepResult:
    """Advance one step of size h with the Rosenbrock-Krylov scheme.

    At an autonomous equilibrium (f = 0) the step is the identity and the
    error estimate is zero.

    Raises
    ------
    SingularReducedSystem
        When ``I - h*gamma*H`` is numerically singular; callers should
        reject the step and shrink h.
    """
    tab = cfg.tableau
    work = WorkCounters()
    y = np.asarray(y, dtype=float)
    f0 = eval_f_counted(sys, t, y, work)
    if sys.is_autonomous and not np.any(f0):
        return _trivial_step(y, work)

    try:
        basis = arnoldi(sys, t, y, f0, cfg.arnoldi, work)
    except ZeroInitialVector:
        return _trivial_step(y, work)
    if cfg.basis_variant == "type2":
        basis = extend_basis_type2(sys, basis, t, y, f0,
                                   cfg.arnoldi.jvp_mode, work)

    V, H, w, m = basis.V, basis.H, basis.w, basis.m
    try:
        factors = linalg.lu_factor(np.eye(m) - h * tab.gamma * H)
    except SingularMatrix as exc:
        raise SingularReducedSystem(str(exc)) from exc

    s = tab.s
    alpha_i = tab.alpha_sums
    lam = np.zeros((s, m))
    k = np.zeros((s, sys.dimension))
    for i in range(s):
        if i == 0:
            F = f0
        else:
            yi = y + tab.alpha[i, :i].T @ k[:i]
            F = eval_f_counted(sys, t + alpha_i[i] * h, yi, work)
        phi = V.T @ F + w
        acc = tab.gamma_lower[i, :i].T @ lam[:i] if i else np.zeros(m)
        rhs = h * phi + h * (H @ acc)
        lam[i] = linalg.lu_solve(factors, rhs)
        work.reduced_solves += 1
        k[i] = V @ lam[i] + h * (F - V @ phi)

    y_next = y + tab.b @ k
    err = (tab.b - tab.b_hat) @ k
    if not (np.all(np.isfinite(y_next)) and np.all(np.isfinite(err))):
        raise NonFiniteOutput("non-finite state after Rosenbrock-Krylov step")
    return StepResult(y_next=y_next, error_estimate=err, work=work,
                      krylov_dim_used=m)


def _full_jacobian_solver(sys: OdeSystem, t: float, y: np.ndarray, h: float,
                          gamma: float):
    """Factor (I - h*gamma*J); returns (solve, matvec) closures."""
    J = sys.eval_jacobian(t, y)
    if scipy.sparse.issparse(J):
        n = J.shape[0]
        A = (scipy.sparse.identity(n, format="csc")
             - (h * gamma) * J.tocsc())
        try:
            lu = scipy.sparse.linalg.splu(A)
        except RuntimeError as exc:
            raise SingularReducedSystem(str(exc)) from exc
        return lu.solve, (lambda v: J @ v)
    J = np.asarray(J, dtype=float)
    try:
        factors = linalg.lu_factor(np.eye(len(y)) - h * gamma * J)
    except SingularMatrix as exc:
        raise SingularReducedSystem(str(exc)) from exc
    return (lambda r: linalg.lu_solve(factors, r)), (lambda v: J @ v)


def classical_rosenbrock_step(sys: OdeSystem, t: float, y: np.ndarray,
                              h: float, tableau: MethodTableau,
                              jacobian: Union[str, ArnoldiOptions] = "full",
                              ) -> StepResult:
    """One classical Rosenbrock step, Jacobian exact or Krylov-restricted.

    ``jacobian="full"`` solves the N x N systems directly (requires the
    ``eval_jacobian`` capability; sparse Jacobians use a sparse LU).
    Passing :class:`ArnoldiOptions` substitutes the Krylov restriction
    ``V H V^T`` for the Jacobian, implemented through the same reduced
    decomposition as the Rosenbrock-Krylov step; classical tableaux then
    generally lose one order of accuracy.
    """
    tab = tableau
    work = WorkCounters()
    y = np.asarray(y, dtype=float)
    f0 = eval_f_counted(sys, t, y, work)
    s = tab.s
    alpha_i = tab.alpha_sums
    gamma_i = tab.gamma_sums
    ft_vec = ft(sys, t, y, f0, work)
    k = np.zeros((s, sys.dimension))

    if isinstance(jacobian, str):
        if jacobian != "full":
            raise ValueError("jacobian must be 'full' or ArnoldiOptions")
        if sys.eval_jacobian is None:
            raise MissingCapability(
                f"system {sys.name!r} provides no full Jacobian")
        solve_shifted, matvec = _full_jacobian_solver(sys, t, y, h, tab.gamma)
        for i in range(s):
            if i == 0:
                F = f0
            else:
                yi = y + tab.alpha[i, :i].T @ k[:i]
                F = eval_f_counted(sys, t + alpha_i[i] * h, yi, work)
            acc = tab.gamma_lower[i, :i].T @ k[:i] if i else np.zeros_like(y)
            rhs = h * F + h * matvec(acc) + (h * h * gamma_i[i]) * ft_vec
            k[i] = solve_shifted(rhs)
            work.reduced_solves += 1
        m_used = sys.dimension
    else:
        # plain Krylov space of J seeded with f, even for time-dependent f;
        # the explicit h^2 gamma_i f_t term carries the time coupling.
        base_sys = sys if sys.is_autonomous else _frozen_time_view(sys)
        try:
            basis = arnoldi(base_sys, t, y, f0, jacobian, work)
        except ZeroInitialVector:
            if sys.is_autonomous:
                return _trivial_step(y, work)
            basis = None
        if basis is None:
            # f = 0 but f_t may not be: degenerate to the explicit
            # recurrence with a zero Jacobian restriction
            for i in range(s):
                if i == 0:
                    F = f0
                else:
                    yi = y + tab.alpha[i, :i].T @ k[:i]
                    F = eval_f_counted(sys, t + alpha_i[i] * h, yi, work)
                k[i] = h * F + (h * h * gamma_i[i]) * ft_vec
            y_next = y + tab.b @ k
            err = (tab.b - tab.b_hat) @ k
            return StepResult(y_next=y_next, error_estimate=err, work=work,
                              krylov_dim_used=0)
        V, H, m = basis.V, basis.H, basis.m
        try:
            factors = linalg.lu_factor(np.eye(m) - h * tab.gamma * H)
        except SingularMatrix as exc:
            raise SingularReducedSystem(str(exc)) from exc
        ft_red = V.T @ ft_vec
        ft_perp = ft_vec - V @ ft_red
        lam = np.zeros((s, m))
        for i in range(s):
            if i == 0:
                F = f0
            else:
                yi = y + tab.alpha[i, :i].T @ k[:i]
                F = eval_f_counted(sys, t + alpha_i[i] * h, yi, work)
            phi = V.T @ F
            acc = tab.gamma_lower[i, :i].T @ lam[:i] if i else np.zeros(m)
            rhs = h * phi + h * (H @ acc) + (h * h * gamma_i[i]) * ft_red
            lam[i] = linalg.lu_solve(factors, rhs)
            work.reduced_solves += 1
            k[i] = (V @ lam[i] + h * (F - V @ phi)
                    + (h * h * gamma_i[i]) * ft_perp)
        m_used = m

    y_next = y + tab.b @ k
    err = (tab.b - tab.b_hat) @ k
    if not (np.all(np.isfinite(y_next)) and np.all(np.isfinite(err))):
        raise NonFiniteOutput("non-finite state after classical step")
    return StepResult(y_next=y_next, error_estimate=err, work=work,
                      krylov_dim_used=m_used)


def _frozen_time_view(sys: OdeSystem) -> OdeSystem:
    """Autonomous-looking view so the Arnoldi seed skips the time extension."""
    return OdeSystem(dimension=sys.dimension, eval_f=sys.eval_f,
                     eval_jvp=sys.eval_jvp, eval_ft=sys.eval_ft,
                     eval_jacobian=sys.eval_jacobian, is_autonomous=True,
                     name=sys.name)


StepFn = Callable[[OdeSystem, float, np.ndarray, float], StepResult]


def make_rok_stepper(cfg: RokConfig) -> StepFn:
    def step(sys, t, y, h):
        return rok_step(sys, t, y, h, cfg)
    return step


def make_classical_stepper(tableau: MethodTableau,
                           jacobian: Union[str, ArnoldiOptions] = "full",
                           ) -> StepFn:
    def step(sys, t, y, h):
        return classical_rosenbrock_step(sys, t, y, h, tableau, jacobian)
    return step


def rk4_step(sys: OdeSystem, t: float, y: np.ndarray, h: float) -> StepResult:
    """Classical explicit fourth-order Runge-Kutta step (benchmark baseline)."""
    work = WorkCounters()
    k1 = eval_f_counted(sys, t, y, work)
    k2 = eval_f_counted(sys, t + 0.5 * h, y + 0.5 * h * k1, work)
    k3 = eval_f_counted(sys, t + 0.5 * h, y + 0.5 * h * k2, work)
    k4 = eval_f_counted(sys, t + h, y + h * k3, work)
    y_next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(y_next)):
        raise NonFiniteOutput("non-finite state after RK4 step")
    return StepResult(y_next=y_next, error_estimate=np.zeros_like(y),
                      work=work, krylov_dim_used=0)


def integrate_fixed(sys: OdeSystem, y0: np.ndarray, t0: float, tf: float,
                    n_steps: int, step_fn: StepFn):
    """March n_steps equal steps from t0 to tf; returns (y, total work)."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    h = (tf - t0) / n_steps
    y = np.asarray(y0, dtype=float).copy()
    total = WorkCounters()
    for i in range(n_steps):
        res = step_fn(sys, t0 + i * h, y, h)
        total.merge(res.work)
        y = res.y_next
    return y, total
