"""Ionization closure, collision rates, Lorentz/friction sources, and their budgets.

The ionization rate is not a physical input: it is recomputed every step so
that volumetric creation exactly compensates the ion loss through the walls,
keeping the total ion number constant. Two discretizations are provided; on
a conservative convective step with upwind ion ghosts they agree to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError
from .params import NondimParams


@dataclass
class SourceContext:
    """Rates and potential entering one source substep."""

    nu_iz: float
    nu_i: np.ndarray
    nu_e: float
    phi: np.ndarray


def ionization_rate_I0(n_i_old: np.ndarray, n_e_star: np.ndarray,
                       n_i_star: np.ndarray, dt: float) -> float:
    """Rate balancing the ion number lost between the old and star densities."""
    electron_mass = float(np.sum(n_e_star))
    if electron_mass <= 0.0:
        raise DegenerateStateError("total electron density must be positive")
    if dt <= 0.0:
        raise DegenerateStateError("dt must be positive")
    return float((np.sum(n_i_old) - np.sum(n_i_star)) / (dt * electron_mass))


def ionization_rate_I1(m_i_first: float, m_i_last: float,
                       n_e: np.ndarray, dx: float) -> float:
    """Rate from the net ion momentum leaving through the two boundary cells."""
    electron_mass = float(np.sum(n_e)) * dx
    if electron_mass <= 0.0:
        raise DegenerateStateError("total electron density must be positive")
    return float((m_i_last - m_i_first) / electron_mass)


def ion_collision_rate(u_i, kappa: float, macro_to_mfp: float):
    """Ion-neutral collision rate for constant cross sections; even in u."""
    return macro_to_mfp * np.sqrt(8.0 * kappa / math.pi + (math.pi**2 / 4.0) * u_i * u_i)


def momentum_source(n, m, species: str, phi_left, phi_right, dx: float,
                    nu, eps: float | None = None):
    """Lorentz-force plus friction momentum source rate.

    The discrete potential gradient is centered, (phi[j+1]-phi[j-1])/(2 dx),
    with grounded-wall ghosts supplying the out-of-domain neighbors.
    Electrons carry the n/eps field coupling, ions the -n coupling.
    """
    grad = (phi_right - phi_left) / (2.0 * dx)
    if species == "electron":
        if eps is None:
            raise ValueError("electron momentum source needs eps")
        return n * grad / eps - nu * m
    if species == "ion":
        return -n * grad - nu * m
    raise ValueError(f"unknown species {species!r}")


def source_dt(ctx: SourceContext, p: NondimParams) -> float:
    """Source-side time-step budget: ionization, collisions, plasma frequency.

    A transiently negative ionization rate does not constrain the step.
    """
    budgets = [p.inv_omega_pe]
    if ctx.nu_iz > 0.0:
        budgets.append(1.0 / ctx.nu_iz)
    rate = max(ctx.nu_e, float(np.max(ctx.nu_i)) if np.size(ctx.nu_i) else 0.0)
    if rate > 0.0:
        budgets.append(1.0 / rate)
    return min(budgets)
