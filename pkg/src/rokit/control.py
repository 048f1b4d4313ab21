"""Embedded-error step-size controller and the adaptive driver.

An elementary integral controller: the step is accepted when the weighted
RMS norm of the embedded error estimate is at most one, and the next step
is scaled by ``safety * err_norm**(-1/(p_hat+1))`` within growth/shrink
clamps.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularReducedSystem, StepSizeUnderflow
from .linalg import weighted_rms_norm
from .model import OdeSystem, WorkCounters
from .stepper import StepFn


@dataclass(frozen=True)
class ControllerConfig:
    atol: float
    rtol: float
    safety: float = 0.9
    h_min: float = 1e-12
    h_max: float = float("inf")
    max_growth: float = 5.0
    max_shrink: float = 0.1
    max_rejects_per_step: int = 20

    def __post_init__(self):
        if not (0.0 < self.max_shrink < 1.0 < self.max_growth):
            raise ValueError("need 0 < max_shrink < 1 < max_growth")
        if not self.h_min < self.h_max:
            raise ValueError("need h_min < h_max")


def propose_step(h: float, err_norm: float, embedded_order: int,
                 cfg: ControllerConfig):
    """Accept/reject decision plus the next step size.

    Returns ``(accept, h_new)`` with ``accept`` iff ``err_norm <= 1``.
    A zero error estimate grows the step by the maximum factor.
    """
    if err_norm < 0 or h <= 0:
        raise ValueError("err_norm must be >= 0 and h > 0")
    accept = err_norm <= 1.0
    if err_norm == 0.0:
        factor = cfg.max_growth
    else:
        factor = cfg.safety * err_norm ** (-1.0 / (embedded_order + 1))
        factor = min(max(factor, cfg.max_shrink), cfg.max_growth)
    h_new = min(max(h * factor, cfg.h_min), cfg.h_max)
    return accept, h_new


@dataclass
class IntegrationStats:
    accepted: int = 0
    rejected: int = 0
    f_evals: int = 0
    jvp_evals: int = 0
    reduced_solves: int = 0

    def absorb(self, work: WorkCounters) -> None:
        self.f_evals += work.f_evals
        self.jvp_evals += work.jvp_evals
        self.reduced_solves += work.reduced_solves


def integrate_adaptive(sys: OdeSystem, y0: np.ndarray, t0: float, tf: float,
                       h0: float, step_fn: StepFn, cfg: ControllerConfig,
                       embedded_order: int = 3):
    """Advance from t0 to tf with accept/reject control.

    The final step is truncated to land exactly on tf.  Raises
    :class:`StepSizeUnderflow` when the controller cannot make progress.
    """
    if not (t0 < tf and h0 > 0):
        raise ValueError("need t0 < tf and h0 > 0")
    t = t0
    y = np.asarray(y0, dtype=float).copy()
    h = min(h0, tf - t0, cfg.h_max)
    stats = IntegrationStats()
    rejects_in_a_row = 0
    while t < tf:
        last = tf - t <= h
        h_try = tf - t if last else h
        try:
            res = step_fn(sys, t, y, h_try)
        except SingularReducedSystem:
            res = None
        if res is None:
            err_norm = np.inf
        else:
            stats.absorb(res.work)
            err_norm = weighted_rms_norm(res.error_estimate, y, res.y_next,
                                         cfg.atol, cfg.rtol)
        if res is None:
            accept, h_new = False, max(h_try * cfg.max_shrink, cfg.h_min)
        else:
            accept, h_new = propose_step(h_try, err_norm, embedded_order, cfg)
        if accept:
            stats.accepted += 1
            rejects_in_a_row = 0
            y = res.y_next
            t = tf if last else t + h_try
            h = h_new
        else:
            stats.rejected += 1
            rejects_in_a_row += 1
            if h_try <= cfg.h_min or rejects_in_a_row > cfg.max_rejects_per_step:
                raise StepSizeUnderflow(
                    f"step control stalled at t = {t} (h = {h_try})")
            h = h_new
    return y, stats
