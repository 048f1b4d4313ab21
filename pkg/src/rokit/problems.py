"""Benchmark systems: Lorenz-96, dissipative Burgers, shallow water.

Each constructor returns a :class:`ProblemSpec` whose system carries an
exact Jacobian-vector product (linearization of the discrete operator)
and, where the full-space comparison needs it, a full Jacobian.  All
three systems are autonomous.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse

from .errors import UnknownProblem
from .model import OdeSystem


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    system: OdeSystem
    y0: np.ndarray
    t_span: Tuple[float, float]
    reference_tolerance: float


# ---------------------------------------------------------------- Lorenz-96

def lorenz96(n: int = 40, forcing: float = 8.0) -> ProblemSpec:
    """Cyclic quadratic toy atmosphere: dy_j/dt = -y_{j-1}(y_{j-2}-y_{j+1}) - y_j + F.

    The homogeneous state y = F is an equilibrium; the initial condition
    perturbs one component so the convergence study sees genuine dynamics.
    """
    if n < 4:
        raise ValueError("lorenz96 needs n >= 4")

    def f(t, y):
        ym1 = np.roll(y, 1)
        ym2 = np.roll(y, 2)
        yp1 = np.roll(y, -1)
        return -ym1 * (ym2 - yp1) - y + forcing

    def jv(t, y, u):
        ym1 = np.roll(y, 1)
        ym2 = np.roll(y, 2)
        yp1 = np.roll(y, -1)
        um1 = np.roll(u, 1)
        um2 = np.roll(u, 2)
        up1 = np.roll(u, -1)
        return -um1 * (ym2 - yp1) - ym1 * (um2 - up1) - u

    def jac(t, y):
        J = np.zeros((n, n))
        for j in range(n):
            J[j, (j - 2) % n] += -y[(j - 1) % n]
            J[j, (j - 1) % n] += -(y[(j - 2) % n] - y[(j + 1) % n])
            J[j, j] += -1.0
            J[j, (j + 1) % n] += y[(j - 1) % n]
        return J

    sys = OdeSystem(dimension=n, eval_f=f, eval_jvp=jv, eval_jacobian=jac,
                    is_autonomous=True, name="lorenz96")
    # Deterministic spin-up onto the attractor: a nudged equilibrium keeps
    # the state too symmetric for the Jacobian-approximation error terms to
    # register over the study window, hiding the order-reduction effect the
    # benchmark exists to measure.
    y0 = np.full(n, forcing)
    y0[min(19, n - 1)] += 0.01
    spin_t, spin_steps = 2.5, 500
    h = spin_t / spin_steps
    t = 0.0
    for _ in range(spin_steps):
        k1 = f(t, y0)
        k2 = f(t + 0.5 * h, y0 + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y0 + 0.5 * h * k2)
        k4 = f(t + h, y0 + h * k3)
        y0 = y0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return ProblemSpec(name="lorenz96", system=sys, y0=y0, t_span=(0.0, 0.3),
                       reference_tolerance=1e-13)


# ------------------------------------------------------------------ Burgers

def central_difference(values_with_ghosts: np.ndarray, dx: float) -> np.ndarray:
    """Second-order centered first derivative on interior points."""
    return (values_with_ghosts[2:] - values_with_ghosts[:-2]) / (2.0 * dx)


def burgers_fd(nx: int = 50, eps: float = 1e-3) -> ProblemSpec:
    """Dissipative Burgers u_t + (u^2/2)_x = eps u_xx on [0, 10].

    Method of lines on a uniform interior grid, centered differences for
    both the conservative flux derivative and the diffusion, homogeneous
    Dirichlet values at both ends.
    """
    if nx < 8:
        raise ValueError("burgers_fd needs nx >= 8")
    length = 10.0
    dx = length / (nx + 1)
    x = dx * np.arange(1, nx + 1)

    def pad(u):
        z = np.zeros(nx + 2)
        z[1:-1] = u
        return z

    def f(t, u):
        up = pad(u)
        flux = 0.5 * up * up
        return -central_difference(flux, dx) + eps * (
            up[2:] - 2.0 * up[1:-1] + up[:-2]) / (dx * dx)

    def jv(t, u, w):
        up = pad(u)
        wp = pad(w)
        dflux = up * wp
        return -central_difference(dflux, dx) + eps * (
            wp[2:] - 2.0 * wp[1:-1] + wp[:-2]) / (dx * dx)

    def jac(t, u):
        J = np.zeros((nx, nx))
        r = eps / (dx * dx)
        for i in range(nx):
            if i > 0:
                J[i, i - 1] = u[i - 1] / (2.0 * dx) + r
            J[i, i] = -2.0 * r
            if i < nx - 1:
                J[i, i + 1] = -u[i + 1] / (2.0 * dx) + r
        return J

    u0 = (np.sin(np.pi * x / 5.0) ** 2) * (1.0 - x * x) / 6.0
    sys = OdeSystem(dimension=nx, eval_f=f, eval_jvp=jv, eval_jacobian=jac,
                    is_autonomous=True, name="burgers")
    return ProblemSpec(name="burgers", system=sys, y0=u0, t_span=(0.0, 0.5),
                       reference_tolerance=1e-12)


# ------------------------------------------------------------- Shallow water

def _mirror_pad(field: np.ndarray, sx: float, sy: float) -> np.ndarray:
    """Reflective ghost ring: ghost cells mirror the adjacent interior cell,
    with sign sx on x-walls and sy on y-walls (corners are never read by
    the five-point stencil)."""
    ny, nx = field.shape
    out = np.zeros((ny + 2, nx + 2))
    out[1:-1, 1:-1] = field
    out[1:-1, 0] = sx * field[:, 0]
    out[1:-1, -1] = sx * field[:, -1]
    out[0, 1:-1] = sy * field[0, :]
    out[-1, 1:-1] = sy * field[-1, :]
    return out


def shallow_water(nx: int = 32, ny: int = 32, g: float = 9.81) -> ProblemSpec:
    """2-D shallow water equations in primitive variables on [0,1]^2.

    State ordering is [u v h] stacked (N = 3*nx*ny), cell-centered grid,
    centered second-order differences for every flux derivative, and
    reflective walls: the normal velocity is negated in the ghost ring
    while height and tangential velocity are mirrored, which makes the
    semi-discrete operator conserve total fluid volume exactly.
    """
    if nx < 8 or ny < 8:
        raise ValueError("shallow_water needs nx, ny >= 8")
    dx = 1.0 / nx
    dy = 1.0 / ny
    npts = nx * ny

    def split(y):
        u = y[:npts].reshape(ny, nx)
        v = y[npts:2 * npts].reshape(ny, nx)
        h = y[2 * npts:].reshape(ny, nx)
        return u, v, h

    def ddx(p):
        return (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * dx)

    def ddy(p):
        return (p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * dy)

    def rhs_fields(u, v, h, du, dv, dh, linear: bool):
        """Tendencies, or their linearization at (u, v, h) when linear."""
        up = _mirror_pad(u, -1.0, 1.0)
        vp = _mirror_pad(v, 1.0, -1.0)
        hp = _mirror_pad(h, 1.0, 1.0)
        if not linear:
            fu = -(u * ddx(up) + v * ddy(up) + g * ddx(hp))
            fv = -(u * ddx(vp) + v * ddy(vp) + g * ddy(hp))
            fh = -(ddx(up * hp) + ddy(vp * hp))
            return fu, fv, fh
        dup = _mirror_pad(du, -1.0, 1.0)
        dvp = _mirror_pad(dv, 1.0, -1.0)
        dhp = _mirror_pad(dh, 1.0, 1.0)
        fu = -(du * ddx(up) + u * ddx(dup) + dv * ddy(up) + v * ddy(dup)
               + g * ddx(dhp))
        fv = -(du * ddx(vp) + u * ddx(dvp) + dv * ddy(vp) + v * ddy(dvp)
               + g * ddy(dhp))
        fh = -(ddx(dup * hp + up * dhp) + ddy(dvp * hp + vp * dhp))
        return fu, fv, fh

    def f(t, y):
        u, v, h = split(y)
        fu, fv, fh = rhs_fields(u, v, h, None, None, None, False)
        return np.concatenate([fu.ravel(), fv.ravel(), fh.ravel()])

    def jv(t, y, w):
        u, v, h = split(y)
        du, dv, dh = split(np.asarray(w, dtype=float))
        fu, fv, fh = rhs_fields(u, v, h, du, dv, dh, True)
        return np.concatenate([fu.ravel(), fv.ravel(), fh.ravel()])

    # static sparsity pattern for colored Jacobian assembly: the operator
    # couples a cell to itself and its four neighbours across all fields
    n_state = 3 * npts
    ix_g, iy_g = np.arange(nx), np.arange(ny)
    color_of_col = np.empty(n_state, dtype=int)
    rows_list, cols_list = [], []
    for fld in range(3):
        for iy in range(ny):
            for ix in range(nx):
                col = fld * npts + iy * nx + ix
                color_of_col[col] = fld * 9 + (ix % 3) * 3 + (iy % 3)
                for tf in range(3):
                    for (jx, jy) in ((ix, iy), (ix - 1, iy), (ix + 1, iy),
                                     (ix, iy - 1), (ix, iy + 1)):
                        if 0 <= jx < nx and 0 <= jy < ny:
                            rows_list.append(tf * npts + jy * nx + jx)
                            cols_list.append(col)
    rows_arr = np.asarray(rows_list)
    cols_arr = np.asarray(cols_list)
    entry_color = color_of_col[cols_arr]

    def jac(t, y):
        probes = np.empty((27, n_state))
        for c in range(27):
            e = (color_of_col == c).astype(float)
            probes[c] = jv(t, y, e)
        vals = probes[entry_color, rows_arr]
        return scipy.sparse.csr_matrix((vals, (rows_arr, cols_arr)),
                                       shape=(n_state, n_state))

    xc = dx * (np.arange(nx) + 0.5)
    yc = dy * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(xc, yc)
    sigma = 0.1
    bump = 0.1 * np.exp(-((X - 0.5) ** 2 + (Y - 0.5) ** 2) / (2.0 * sigma ** 2))
    h0 = 1.0 + bump
    y0 = np.concatenate([np.zeros(npts), np.zeros(npts), h0.ravel()])
    sys = OdeSystem(dimension=n_state, eval_f=f, eval_jvp=jv,
                    eval_jacobian=jac, is_autonomous=True,
                    name="shallow-water")
    return ProblemSpec(name="shallow-water", system=sys, y0=y0,
                       t_span=(0.0, 0.2), reference_tolerance=1e-13)


PROBLEMS = {
    "lorenz96": lorenz96,
    "burgers": burgers_fd,
    "shallow-water": shallow_water,
}


def get_problem(name: str, **kwargs) -> ProblemSpec:
    """Look up a benchmark problem by registry name."""
    try:
        builder = PROBLEMS[name]
    except KeyError:
        raise UnknownProblem(
            f"unknown problem {name!r}; available: {sorted(PROBLEMS)}"
        ) from None
    return builder(**kwargs)
