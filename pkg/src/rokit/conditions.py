"""Order-condition residuals, stability functions and linear order.

Conditions are encoded explicitly as multilinear sums over stage indices.
Conventions, matching the bi-colored tree calculus for linearly implicit
methods:

* branches from a node with several children carry ``alpha`` factors,
* a single-child chain through a solid node carries ``beta`` factors,
* an edge leaving a hollow node (an appearance of the approximate
  Jacobian) carries ``gamma`` factors, with the diagonal included.

The four condition families:

* ``classical`` - the eight classical Rosenbrock conditions of order 4,
* ``k4`` - order-4 conditions when the Jacobian is restricted to a Krylov
  space of dimension >= 4 (the classical set with the single-child chain
  through the Jacobian split into its alpha and gamma parts),
* ``k5`` - the five additional hollow-rooted conditions for order 5,
* ``w`` - conditions through order 3 valid for an arbitrary matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularAtZ
from .tableaux import MethodTableau


@dataclass(frozen=True)
class ConditionResidual:
    label: str
    family: str
    lhs: float
    target: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.target)


def _parts(t: MethodTableau):
    g = t.gamma
    al = t.alpha
    bp = t.beta_strict
    G = t.gamma_lower + g * np.eye(t.s)
    B = t.beta_full
    a_i = al.sum(axis=1)
    bp_i = bp.sum(axis=1)
    one = np.ones(t.s)
    return g, al, bp, G, B, a_i, bp_i, one


def _k4(t: MethodTableau, family: str):
    g, al, bp, G, B, a_i, bp_i, one = _parts(t)
    b = t.b
    p21 = 0.5 - g
    p32 = 1.0 / 6.0 - g + g * g
    p42 = 1.0 / 8.0 - g / 3.0
    p44 = 1.0 / 24.0 - 0.5 * g + 1.5 * g * g - g ** 3
    rows = [
        ("a", b.sum(), 1.0),
        ("b", b @ bp_i, p21),
        ("c", b @ a_i ** 2, 1.0 / 3.0),
        ("d", b @ (bp @ bp_i), p32),
        ("e", b @ a_i ** 3, 0.25),
        ("f", b @ (a_i * (al @ bp_i)), p42),
    ]
    if family == "k4":
        rows += [
            ("g1", b @ (al @ a_i ** 2), 1.0 / 12.0),
            ("g2", b @ (t.gamma_lower @ a_i ** 2), -g / 3.0),
        ]
    else:  # classical: single-child chain through the Jacobian keeps beta
        rows += [("g", b @ (bp @ a_i ** 2), 1.0 / 12.0 - g / 3.0)]
    rows += [("h", b @ (bp @ (bp @ bp_i)), p44)]
    return rows


def _w(t: MethodTableau):
    g, al, bp, G, B, a_i, bp_i, one = _parts(t)
    b = t.b
    return [
        ("a", b.sum(), 1.0),
        ("b1", b @ a_i, 0.5),
        ("b2", b @ (G @ one), 0.0),
        ("c", b @ a_i ** 2, 1.0 / 3.0),
        ("d1", b @ (al @ a_i), 1.0 / 6.0),
        ("d2", b @ (G @ a_i), 0.0),
        ("d3", b @ (al @ (G @ one)), 0.0),
        ("d4", b @ (G @ (G @ one)), 0.0),
    ]


def _k5(t: MethodTableau):
    g, al, bp, G, B, a_i, bp_i, one = _parts(t)
    b = t.b
    bsum = B @ one
    c2 = a_i ** 2
    return [
        ("k5-1", b @ (G @ a_i ** 3), 0.0),
        ("k5-2", b @ (G @ (a_i * (al @ bsum))), 0.0),
        ("k5-3", b @ (G @ (B @ c2)), 0.0),
        ("k5-4", b @ (G @ (G @ c2)), 0.0),
        ("k5-5", b @ (B @ (G @ c2)), 0.0),
    ]


def order_condition_residuals(t: MethodTableau, family: str):
    """Evaluate one condition family; returns ConditionResidual rows."""
    family = family.lower()
    if family in ("k4", "classical"):
        rows = _k4(t, family)
    elif family == "k5":
        rows = _k5(t)
    elif family == "w":
        rows = _w(t)
    elif family == "parabolic":
        return parabolic_condition_residuals(t)
    else:
        raise ValueError(f"unknown condition family {family!r}")
    return [ConditionResidual(label, family, float(lhs), float(target))
            for label, lhs, target in rows]


def parabolic_condition_residuals(t: MethodTableau):
    """Extra conditions suppressing order reduction on parabolic problems.

    ``b^T beta^j (2 beta^2 1 - alpha^2) = 0`` for p-2 <= j <= s-1, with
    beta the full stage matrix, powers as matrix powers, and alpha^2 the
    component-wise square of the stage abscissae.
    """
    g, al, bp, G, B, a_i, bp_i, one = _parts(t)
    b = t.b
    vec = 2.0 * (B @ (B @ one)) - a_i ** 2
    out = []
    w = vec.copy()
    p = t.order
    for j in range(1, t.s):
        w = B @ w
        if j >= p - 2:
            out.append(ConditionResidual(f"parabolic-j{j}", "parabolic",
                                         float(b @ w), 0.0))
    return out


def stability_function(t: MethodTableau, z: complex,
                       weights: str = "main") -> complex:
    """Rational amplification factor R(z) = 1 + z b^T (I - z beta)^-1 1."""
    B = t.beta_full
    b = t.b if weights == "main" else t.b_hat
    s = t.s
    d = 1.0 - z * t.gamma
    if abs(d) < 1e-14 * max(1.0, abs(z) * abs(t.gamma)):
        raise SingularAtZ(f"resolvent singular at z = {z}")
    sol = np.linalg.solve(np.eye(s) - z * B, np.ones(s, dtype=complex))
    return complex(1.0 + z * (np.asarray(b, dtype=complex) @ sol))


def stability_at_infinity(t: MethodTableau, weights: str = "main") -> float:
    """Closed-form limit R(inf) = 1 - b^T beta^-1 1 (needs gamma > 0)."""
    B = t.beta_full
    if abs(t.gamma) < 1e-14:
        raise SingularAtZ("beta is singular when gamma = 0")
    b = t.b if weights == "main" else t.b_hat
    return float(1.0 - b @ np.linalg.solve(B, np.ones(t.s)))


def linear_order(t: MethodTableau, tol: float = 1e-7, kmax: int = 6) -> int:
    """Largest k <= kmax with R's Taylor coefficients matching 1/j! for j <= k.

    The resolvent expands as a finite Neumann series, so the coefficients
    are exactly ``b^T beta^(j-1) 1``; no differentiation is involved.
    """
    B = t.beta_full
    v = np.ones(t.s)
    fact = 1.0
    order = 0
    for j in range(1, kmax + 1):
        coeff = float(t.b @ v)
        fact *= j
        if abs(coeff - 1.0 / fact) > tol:
            break
        order = j
        v = B @ v
    return order


def sample_stability_boundary(t: MethodTableau, axis_points):
    """Tabulate |R(iy)| and |R_hat(iy)| along the imaginary axis."""
    rows = []
    for y in axis_points:
        z = 1j * float(y)
        rows.append((float(y),
                     abs(stability_function(t, z, "main")),
                     abs(stability_function(t, z, "embedded"))))
    return rows
