"""Problem abstraction and matrix-free derivative operators.

An :class:`OdeSystem` bundles the right-hand side ``f(t, y)`` with optional
exact derivative callbacks.  Everything downstream (Arnoldi, steppers) only
touches Jacobians through :func:`jvp`, so systems may supply an analytic
Jacobian-vector product, a full Jacobian, both, or neither (falling back to
finite differences).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import MissingCapability, NonFiniteOutput

EPS = np.finfo(float).eps
SQRT_EPS = np.sqrt(EPS)


@dataclass
class WorkCounters:
    """Tally of expensive operations during a step or integration."""

    f_evals: int = 0
    jvp_evals: int = 0
    reduced_solves: int = 0

    def merge(self, other: "WorkCounters") -> None:
        self.f_evals += other.f_evals
        self.jvp_evals += other.jvp_evals
        self.reduced_solves += other.reduced_solves


@dataclass(frozen=True)
class OdeSystem:
    """Evaluatable ODE right-hand side with optional derivative capabilities.

    Parameters
    ----------
    dimension : int
        State-space dimension N.
    eval_f : callable
        ``eval_f(t, y) -> ndarray`` of length N.  Required.
    eval_jvp : callable, optional
        Exact Jacobian-vector product ``eval_jvp(t, y, u) -> J(t,y) @ u``.
    eval_ft : callable, optional
        Exact partial time derivative ``eval_ft(t, y) -> df/dt``.
    eval_jacobian : callable, optional
        Full Jacobian ``eval_jacobian(t, y)``; may return a dense array or
        a scipy sparse matrix.  Only used by the classical full-space path.
    is_autonomous : bool
        True when ``eval_f`` does not depend on t.
    """

    dimension: int
    eval_f: Callable[[float, np.ndarray], np.ndarray]
    eval_jvp: Optional[Callable[[float, np.ndarray, np.ndarray], np.ndarray]] = None
    eval_ft: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    eval_jacobian: Optional[Callable[[float, np.ndarray], object]] = None
    is_autonomous: bool = False
    name: str = ""


@dataclass(frozen=True)
class JvpMode:
    """Selects how Jacobian-vector products are evaluated.

    ``kind`` is ``"exact"`` or ``"fd"``.  For finite differences, ``delta``
    is a fixed increment, or None for the adaptive policy
    ``sqrt(eps) * (1 + ||y||) / ||u||``.
    """

    kind: str = "exact"
    delta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("exact", "fd"):
            raise ValueError(f"unknown jvp mode {self.kind!r}")
        if self.delta is not None and self.delta <= 0:
            raise ValueError("fixed finite-difference delta must be positive")

    @classmethod
    def exact(cls) -> "JvpMode":
        return cls("exact")

    @classmethod
    def fd(cls) -> "JvpMode":
        return cls("fd")

    @classmethod
    def fd_fixed(cls, delta: float) -> "JvpMode":
        return cls("fd", delta)


def _check_finite(v: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(v)):
        raise NonFiniteOutput(f"non-finite values in {what}")
    return v


def eval_f_counted(sys: OdeSystem, t: float, y: np.ndarray,
                   work: Optional[WorkCounters] = None) -> np.ndarray:
    """Evaluate f(t, y) and bump the work counter."""
    if work is not None:
        work.f_evals += 1
    return np.asarray(sys.eval_f(t, y), dtype=float)


def jvp(sys: OdeSystem, mode: JvpMode, t: float, y: np.ndarray, u: np.ndarray,
        f_at_y: np.ndarray, work: Optional[WorkCounters] = None) -> np.ndarray:
    """Jacobian-vector product J(t, y) @ u, exact or by forward difference.

    ``f_at_y`` must be the precomputed f(t, y); in finite-difference mode it
    is reused so that a step pays for f(t, y) only once.
    """
    if work is not None:
        work.jvp_evals += 1
    if mode.kind == "exact":
        if sys.eval_jvp is None:
            raise MissingCapability(f"system {sys.name!r} has no exact jvp")
        return _check_finite(np.asarray(sys.eval_jvp(t, y, u), dtype=float), "jvp")
    if mode.delta is not None:
        delta = mode.delta
    else:
        unorm = float(np.linalg.norm(u))
        if unorm == 0.0:
            return np.zeros_like(np.asarray(u, dtype=float))
        delta = SQRT_EPS * (1.0 + float(np.linalg.norm(y))) / unorm
    f_shift = eval_f_counted(sys, t, y + delta * u, work)
    return _check_finite((f_shift - f_at_y) / delta, "finite-difference jvp")


def ft(sys: OdeSystem, t: float, y: np.ndarray, f_at_y: np.ndarray,
       work: Optional[WorkCounters] = None) -> np.ndarray:
    """Partial time derivative df/dt at (t, y).

    Autonomous systems return zero.  Without an exact callback a forward
    difference with increment ``sqrt(eps) * (1 + |t|)`` is used.
    """
    if sys.is_autonomous:
        return np.zeros(sys.dimension)
    if sys.eval_ft is not None:
        return _check_finite(np.asarray(sys.eval_ft(t, y), dtype=float), "ft")
    delta = SQRT_EPS * (1.0 + abs(t))
    f_shift = eval_f_counted(sys, t + delta, y, work)
    return _check_finite((f_shift - f_at_y) / delta, "finite-difference ft")


def second_directional_derivative(sys: OdeSystem, mode: JvpMode, t: float,
                                  y: np.ndarray, u: np.ndarray,
                                  work: Optional[WorkCounters] = None) -> np.ndarray:
    """Approximate the bilinear form f_yy(u, u) by differencing jvp's.

    Uses ``(J(y + delta*u) @ u - J(y) @ u) / delta``.  In finite-difference
    jvp mode this is a difference of differences, accurate only to
    O(sqrt(delta)); with exact products the error is O(delta).
    """
    u = np.asarray(u, dtype=float)
    unorm = float(np.linalg.norm(u))
    if unorm == 0.0:
        return np.zeros_like(u)
    if mode.kind == "fd" and mode.delta is not None:
        delta = mode.delta
    else:
        delta = SQRT_EPS * (1.0 + float(np.linalg.norm(y))) / unorm
    y_shift = y + delta * u
    f_base = eval_f_counted(sys, t, y, work) if mode.kind == "fd" else None
    f_shift = eval_f_counted(sys, t, y_shift, work) if mode.kind == "fd" else None
    ju_shift = jvp(sys, mode, t, y_shift, u, f_shift, work)
    ju = jvp(sys, mode, t, y, u, f_base, work)
    return _check_finite((ju_shift - ju) / delta, "second directional derivative")
