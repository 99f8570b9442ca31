"""Implicit solve of the discrete Poisson equation with grounded walls.

The interior stencil is (phi[j+1] - 2 phi[j] + phi[j-1])/dx^2 = (n_e - n_i)/chi;
the grounded-wall condition (phi_ghost + phi_boundary)/2 = 0 eliminates the
ghosts into -3 diagonal entries at the first and last rows. The tridiagonal
system is solved by direct banded elimination to machine precision.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConfigError


def assemble_system(n_e: np.ndarray, n_i: np.ndarray, chi: float, dx: float):
    """Banded matrix (ab layout) and right-hand side of the discrete Poisson problem."""
    if chi <= 0.0:
        raise ConfigError("chi must be strictly positive")
    n = n_e.shape[0]
    if n < 2 or n_i.shape[0] != n:
        raise ConfigError("density fields must share a length >= 2")
    inv_dx2 = 1.0 / (dx * dx)
    ab = np.empty((3, n))
    ab[0, :] = inv_dx2   # super-diagonal (ab[0, 0] unused)
    ab[2, :] = inv_dx2   # sub-diagonal (ab[2, -1] unused)
    ab[1, :] = -2.0 * inv_dx2
    ab[1, 0] = -3.0 * inv_dx2
    ab[1, -1] = -3.0 * inv_dx2
    rhs = (n_e - n_i) / chi
    return ab, rhs


def solve_poisson(n_e: np.ndarray, n_i: np.ndarray, chi: float, dx: float) -> np.ndarray:
    """Potential field satisfying the discrete Poisson equation exactly."""
    ab, rhs = assemble_system(n_e, n_i, chi, dx)
    return solve_banded((1, 1), ab, rhs)


def residual(phi: np.ndarray, n_e: np.ndarray, n_i: np.ndarray,
             chi: float, dx: float) -> float:
    """Max-norm residual of the assembled system at phi, relative to the RHS scale."""
    ab, rhs = assemble_system(n_e, n_i, chi, dx)
    n = phi.shape[0]
    lhs = ab[1] * phi
    lhs[:-1] += ab[0, 1:] * phi[1:]
    lhs[1:] += ab[2, :-1] * phi[:-1]
    scale = max(float(np.max(np.abs(rhs))), 1.0 / (dx * dx))
    return float(np.max(np.abs(lhs - rhs))) / scale


def poisson_resolution_check(dx: float, chi: float) -> bool:
    """True when the mesh resolves the Debye length (dx <= sqrt(chi))."""
    if dx <= 0.0 or chi <= 0.0:
        raise ConfigError("dx and chi must be strictly positive")
    return dx <= math.sqrt(chi)
