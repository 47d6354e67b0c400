"""Steady-state covariance matrix from the continuous Lyapunov equation.

For a stable drift matrix A and diffusion matrix D, the stationary
covariance V solves A V + V A^T = -D. The primary solver is Bartels-Stewart
(real Schur) via scipy; a dense Kronecker-product solve is kept as an
independent cross-check path.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from .dynamics import STABILITY_MARGIN, spectral_abscissa

RESIDUAL_TOL = 1e-9
# Asymmetry allowed in the raw solver output before symmetrization, relative
# to the largest entry of V (thermal variances reach ~1e4, so an absolute
# 1e-12 would trip on pure rounding).
SYMMETRY_TOL = 1e-12

MODES = ("te", "tm", "mech")


class LyapunovError(ArithmeticError):
    """Solver output violated the residual or symmetry bound."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class CovarianceMatrix:
    """Real symmetric covariance matrix with labeled two-row mode blocks.

    Basis per mode is (X, Y) quadratures (mechanical: q, p), vacuum variance
    1/2. Supports np.asarray() directly.
    """

    matrix: np.ndarray
    modes: tuple = MODES

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != 2 * len(self.modes):
            raise ValueError("expected a %dx%d matrix for modes %r, got shape %r"
                             % (2 * len(self.modes), 2 * len(self.modes),
                                self.modes, m.shape))
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "modes", tuple(self.modes))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)


def lyapunov_residual(a, d, v):
    """Max-norm residual of A V + V A^T + D, relative to the max entry of D."""
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    v = np.asarray(v, dtype=float)
    scale = max(np.max(np.abs(d)), 1e-300)
    return float(np.max(np.abs(a @ v + v @ a.T + d)) / scale)


def _default_modes(n):
    if n == 6:
        return MODES
    return tuple("m%d" % i for i in range(n // 2))


def solve_lyapunov(a, d):
    """Solve A V + V A^T = -D for the stationary covariance.

    A must be strictly stable. The raw solution is checked for symmetry
    (within SYMMETRY_TOL of the largest entry), symmetrized, and the residual
    is verified against RESIDUAL_TOL; violations raise LyapunovError rather
    than being silently patched.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    abscissa = spectral_abscissa(a)
    if not abscissa < -STABILITY_MARGIN:
        raise ValueError("drift matrix is not stable: max Re(eig) = %g" % abscissa)
    v = solve_continuous_lyapunov(a, -d)
    asym = np.max(np.abs(v - v.T))
    if asym > SYMMETRY_TOL * max(1.0, np.max(np.abs(v))):
        raise LyapunovError("solver output asymmetric beyond tolerance: %g" % asym)
    v = 0.5 * (v + v.T)
    residual = lyapunov_residual(a, d, v)
    if residual > RESIDUAL_TOL:
        raise LyapunovError("Lyapunov residual %g exceeds %g"
                            % (residual, RESIDUAL_TOL), residual=residual)
    return CovarianceMatrix(v, modes=_default_modes(a.shape[0]))


def solve_lyapunov_kron(a, d):
    """Kronecker-product linear solve of the same equation (cross-check path).

    Row-major vectorization: vec(A V + V A^T) = (A (x) I + I (x) A) vec(V).
    Returns the raw symmetric matrix without the CovarianceMatrix wrapper.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = a.shape[0]
    eye = np.eye(n)
    coeff = np.kron(a, eye) + np.kron(eye, a)
    v = np.linalg.solve(coeff, -d.reshape(n * n)).reshape(n, n)
    return 0.5 * (v + v.T)


def write_debug_dump(path, a, d, v, residual):
    """Dump (A, D, V, residual) as row-major matrix text, 17 significant digits."""
    blocks = (("drift", np.asarray(a, float)), ("diffusion", np.asarray(d, float)),
              ("covariance", np.asarray(v, float)))
    lines = []
    for name, m in blocks:
        lines.append("# %s %dx%d" % (name, m.shape[0], m.shape[1]))
        for row in m:
            lines.append(" ".join("%.17g" % x for x in row))
    lines.append("# residual")
    lines.append("%.17g" % residual)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
