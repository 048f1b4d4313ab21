"""Modified Arnoldi process and Krylov-restricted Jacobian operators.

One basis is built per time step from the Krylov space of the Jacobian
seeded with f(t, y).  For non-autonomous systems the (N+1)-dimensional
extended state ``[y; t]`` is used implicitly: the extra time row of each
basis vector is carried as the scalar sequence ``w`` so problem callbacks
only ever see N-vectors.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonFiniteOutput, NotAutonomous, ZeroInitialVector
from .model import (JvpMode, OdeSystem, WorkCounters, eval_f_counted, ft, jvp,
                    second_directional_derivative)


@dataclass(frozen=True)
class ArnoldiOptions:
    """Knobs for the Arnoldi iteration.

    ``m`` is the requested basis dimension.  ``reorth_threshold`` triggers a
    single extra orthogonalization pass when cancellation removed more than
    that fraction of a candidate vector's norm.  ``breakdown_tol`` is
    relative to the seed norm and detects an invariant subspace.
    """

    m: int = 4
    reorth_threshold: float = 0.25
    breakdown_tol: float = 1e-12
    jvp_mode: JvpMode = field(default_factory=JvpMode.exact)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("requested Krylov dimension must be >= 1")
        if not (0.0 < self.reorth_threshold < 1.0):
            raise ValueError("reorth_threshold must lie in (0, 1)")
        if self.breakdown_tol <= 0:
            raise ValueError("breakdown_tol must be positive")


@dataclass(frozen=True)
class KrylovBasis:
    """Orthonormal basis V, reduced matrix H and time-coupling vector w.

    Columns of V are orthonormal in the extended inner product
    ``<x, y> + wx*wy``; for autonomous bases w is identically zero and the
    columns are plainly orthonormal.  ``beta`` is the seed norm and
    ``breakdown`` marks an early stop on an invariant subspace.
    """

    V: np.ndarray
    H: np.ndarray
    w: np.ndarray
    m: int
    beta: float
    breakdown: bool
    autonomous: bool

    def project(self, x: np.ndarray) -> np.ndarray:
        """State-space part of the reduced coordinates, V^T x."""
        return self.V.T @ x


def arnoldi(sys: OdeSystem, t: float, y: np.ndarray, f_at_y: np.ndarray,
            opts: ArnoldiOptions,
            work: Optional[WorkCounters] = None) -> KrylovBasis:
    """Build the Krylov basis of the Jacobian at (t, y) seeded with f.

    Autonomous systems run the plain N-dimensional iteration (w = 0).
    Non-autonomous systems run the extended iteration on
    ``[[J, f_t], [0, 0]]`` with seed ``[f; 1]``, never materializing the
    (N+1)-vectors: the time components live in ``w``.
    """
    n = sys.dimension
    m_req = min(opts.m, n if sys.is_autonomous else n + 1)
    auto = sys.is_autonomous

    fnorm2 = float(f_at_y @ f_at_y)
    if auto:
        beta = np.sqrt(fnorm2)
        if beta == 0.0:
            raise ZeroInitialVector("f(t, y) = 0: state is an equilibrium")
    else:
        beta = np.sqrt(fnorm2 + 1.0)
    if not np.isfinite(beta):
        raise NonFiniteOutput("non-finite seed vector in arnoldi")

    V = np.zeros((n, m_req))
    wv = np.zeros(m_req)
    H = np.zeros((m_req + 1, m_req))
    V[:, 0] = f_at_y / beta
    if not auto:
        wv[0] = 1.0 / beta
        ft_vec = ft(sys, t, y, f_at_y, work)

    breakdown = False
    m = m_req
    for i in range(m_req):
        zeta = jvp(sys, opts.jvp_mode, t, y, V[:, i], f_at_y, work)
        if not auto:
            zeta = zeta + ft_vec * wv[i]
        xi = 0.0
        tau = np.sqrt(zeta @ zeta)
        for j in range(i + 1):
            hji = zeta @ V[:, j] + xi * wv[j]
            H[j, i] = hji
            zeta -= hji * V[:, j]
            xi -= hji * wv[j]
        resid = np.sqrt(zeta @ zeta + xi * xi)
        if tau > 0.0 and resid / tau <= opts.reorth_threshold:
            for j in range(i + 1):
                rho = zeta @ V[:, j] + xi * wv[j]
                zeta -= rho * V[:, j]
                xi -= rho * wv[j]
                H[j, i] += rho
            resid = np.sqrt(zeta @ zeta + xi * xi)
        H[i + 1, i] = resid
        if not np.isfinite(resid):
            raise NonFiniteOutput("non-finite Arnoldi recurrence")
        if resid <= opts.breakdown_tol * beta:
            breakdown = True
            m = i + 1
            break
        if i + 1 < m_req:
            V[:, i + 1] = zeta / resid
            wv[i + 1] = xi / resid

    return KrylovBasis(V=V[:, :m].copy(), H=H[:m, :m].copy(), w=wv[:m].copy(),
                       m=m, beta=beta, breakdown=breakdown, autonomous=auto)


def apply_reduced_power(basis: KrylovBasis, k: int) -> np.ndarray:
    """Evaluate A^k f in the full space, A = V H V^T being the restricted
    Jacobian.  For an autonomous basis V^T f = beta * e1, so this is one
    small matrix power lifted back by V."""
    if not basis.autonomous:
        raise NotAutonomous("reduced powers of the seed need w = 0")
    if k < 0:
        raise ValueError("power must be non-negative")
    coeff = np.zeros(basis.m)
    coeff[0] = basis.beta
    for _ in range(k):
        coeff = basis.H @ coeff
    return basis.V @ coeff


def extend_basis_type2(sys: OdeSystem, basis: KrylovBasis, t: float,
                       y: np.ndarray, f_at_y: np.ndarray, mode: JvpMode,
                       work: Optional[WorkCounters] = None) -> KrylovBasis:
    """Enrich an autonomous basis with f_yy(f, f) and its Jacobian image.

    Appends the orthonormalized curvature direction and its image under J,
    skipping any candidate whose out-of-span component falls below the
    breakdown tolerance.  H is recomputed column-wise as V^T (J V); the
    result is a general square matrix, not Hessenberg.
    """
    if not basis.autonomous:
        raise NotAutonomous("type-2 extension is defined for autonomous bases")
    u_g2 = second_directional_derivative(sys, mode, t, y, f_at_y, work)
    candidates = [u_g2, jvp(sys, mode, t, y, u_g2, f_at_y, work)]

    cols = [basis.V[:, j].copy() for j in range(basis.m)]
    kappa = 0.25
    for cand in candidates:
        z = cand.astype(float).copy()
        tau = np.linalg.norm(z)
        for v in cols:
            z -= (z @ v) * v
        if tau > 0.0 and np.linalg.norm(z) / tau <= kappa:
            for v in cols:
                z -= (z @ v) * v
        nz = np.linalg.norm(z)
        if nz > 1e-12 * max(basis.beta, tau):
            cols.append(z / nz)

    m = len(cols)
    V = np.column_stack(cols)
    H = np.empty((m, m))
    for j in range(m):
        H[:, j] = V.T @ jvp(sys, mode, t, y, V[:, j], f_at_y, work)
    return KrylovBasis(V=V, H=H, w=np.zeros(m), m=m, beta=basis.beta,
                       breakdown=basis.breakdown, autonomous=True)
