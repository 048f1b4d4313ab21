"""Dense kernels for the reduced stage systems and error norms.

The reduced matrices are tiny (M x M with M of order 10), so a plain
LAPACK factorization with partial pivoting is all that is needed.  The
wrappers add explicit singularity detection so that the steppers can
reject a step instead of propagating garbage.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, SingularMatrix

# Pivot threshold relative to the largest entry of the input matrix.
SINGULARITY_RTOL = 1e-14


@dataclass(frozen=True)
class LuFactors:
    """Packed LU factors with pivot record of a square matrix."""

    lu: np.ndarray
    piv: np.ndarray
    n: int


def lu_factor(a: np.ndarray) -> LuFactors:
    """Factor a square matrix with partial pivoting.

    Raises
    ------
    SingularMatrix
        If any pivot magnitude falls below ``1e-14 * max|a|``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = np.abs(a).max()
    with warnings.catch_warnings():
        # exact zero pivots are reported below via SingularMatrix
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.any(pivots <= SINGULARITY_RTOL * scale) or not np.all(np.isfinite(pivots)):
        raise SingularMatrix(
            f"pivot below {SINGULARITY_RTOL:g} * max|a| during elimination"
        )
    return LuFactors(lu=lu, piv=piv, n=n)


def lu_solve(f: LuFactors, rhs: np.ndarray) -> np.ndarray:
    """Solve A x = rhs using previously computed factors."""
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (f.n,):
        raise DimensionMismatch(f"rhs has shape {rhs.shape}, factors are {f.n}x{f.n}")
    return scipy.linalg.lu_solve((f.lu, f.piv), rhs, check_finite=False)


def solve(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """One-shot factor-and-solve convenience wrapper."""
    return lu_solve(lu_factor(a), rhs)


def weighted_rms_norm(err, y0, y1, atol: float, rtol: float) -> float:
    """Weighted root-mean-square norm used by the step controller.

    ``sqrt(mean((err_i / (atol + rtol*max(|y0_i|, |y1_i|)))**2))``
    """
    err = np.asarray(err, dtype=float)
    y0 = np.asarray(y0, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    if not (err.shape == y0.shape == y1.shape):
        raise DimensionMismatch("err, y0, y1 must share a common length")
    if atol <= 0 or rtol < 0:
        raise ValueError("atol must be positive and rtol non-negative")
    w = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / w) ** 2)))
