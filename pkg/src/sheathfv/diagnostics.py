"""Quantitative measurements of a plasma snapshot tied to the sheath-transition physics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .mesh import Mesh, PlasmaState, velocities
from .params import NondimParams, theoretical_targets

if TYPE_CHECKING:  # avoid a runtime cycle with the integrators module
    from .integrators import TimeStepBudget

# Sheath masks cover a few Debye lengths next to each wall.
SHEATH_MASK_DEBYE_LENGTHS = 5.0


@dataclass
class Diagnostics:
    """Post-step measurements: ambipolarity, potential peak, budgets, estimates."""

    time: float
    ambipolarity_err: float
    phi_peak: float
    phi_peak_rel_err: float
    ion_total: float
    steady_residual: float
    oscillation_index: float
    ion_mach_left: float
    ion_mach_right: float
    sheath_diffusion_estimate: np.ndarray = field(repr=False)
    dt_budget: "TimeStepBudget | None" = None


def particle_fluxes(state: PlasmaState) -> tuple[np.ndarray, np.ndarray]:
    """Electron and ion particle fluxes (the momentum fields, in Bohm units)."""
    return state.electrons.momentum, state.ions.momentum


def ambipolarity_error(state: PlasmaState) -> float:
    """Peak electron/ion flux mismatch normalized by the peak ion flux.

    Normalizing by max|F_i| (the wall flux at steady state) avoids the
    singular pointwise ratio at the symmetry plane where both fluxes vanish.
    """
    f_e, f_i = particle_fluxes(state)
    scale = float(np.max(np.abs(f_i)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(f_e - f_i))) / scale


def oscillation_index(momentum: np.ndarray) -> float:
    """Fraction of second-difference energy in a momentum profile, in [0, 1].

    Smooth monotone profiles score well below 0.1; a cell-to-cell sawtooth
    saturates the clamp at 1. The mean is removed so the index is invariant
    under constant shifts, and a tiny floor guards the all-zero profile.
    """
    if momentum.shape[0] < 8:
        raise ValueError("oscillation index needs at least 8 cells")
    d2 = momentum[2:] - 2.0 * momentum[1:-1] + momentum[:-2]
    centered = momentum - momentum.mean()
    denom = 4.0 * float(np.sum(centered * centered)) + 1e-300
    return min(1.0, float(np.sum(d2 * d2)) / denom)


def numerical_diffusion_estimate(n_e: np.ndarray, p: NondimParams, dx: float) -> np.ndarray:
    """Per-cell indicator n_e*dx/sqrt(eps*chi) of first-order sheath diffusion."""
    return n_e * dx / p.inv_omega_pe


def sheath_mask(mesh: Mesh, chi: float) -> np.ndarray:
    """Cells within a few Debye lengths of either wall."""
    width = SHEATH_MASK_DEBYE_LENGTHS * math.sqrt(chi)
    return (mesh.centers < width) | (mesh.centers > 1.0 - width)


def ion_mach_at_sheath_edges(state: PlasmaState, mesh: Mesh,
                             p: NondimParams) -> tuple[float, float]:
    """|u_i|/u_B at the inner edge of each sheath mask (reported, not asserted)."""
    mask = sheath_mask(mesh, p.chi)
    inner = np.nonzero(~mask)[0]
    u = velocities(state.ions.density, state.ions.momentum)
    if inner.size == 0:
        return float("nan"), float("nan")
    return abs(float(u[inner[0]])), abs(float(u[inner[-1]]))


def bulk_cosine_fit(density: np.ndarray, centers: np.ndarray,
                    bulk: np.ndarray) -> tuple[float, float, float]:
    """Fit a*cos(b*(x-1/2)) to the bulk density; returns (a, b, max rel residual)."""
    from scipy.optimize import curve_fit

    x = centers[bulk]
    y = density[bulk]

    def model(xx, a, b):
        return a * np.cos(b * (xx - 0.5))

    popt, _ = curve_fit(model, x, y, p0=(float(np.max(y)), math.pi / 2.0))
    fit = model(x, *popt)
    max_rel = float(np.max(np.abs(y - fit) / np.abs(fit)))
    return float(popt[0]), float(popt[1]), max_rel


def compute_diagnostics(state: PlasmaState, mesh: Mesh, p: NondimParams,
                        steady_residual: float = math.inf,
                        dt_budget: "TimeStepBudget | None" = None) -> Diagnostics:
    """Assemble the full diagnostics record for one snapshot."""
    targets = theoretical_targets(p)
    phi_peak = float(np.max(state.phi))
    mach_l, mach_r = ion_mach_at_sheath_edges(state, mesh, p)
    return Diagnostics(
        time=state.time,
        ambipolarity_err=ambipolarity_error(state),
        phi_peak=phi_peak,
        phi_peak_rel_err=abs(phi_peak - targets.phi_peak) / abs(targets.phi_peak),
        ion_total=float(np.sum(state.ions.density)) * mesh.dx,
        steady_residual=steady_residual,
        oscillation_index=oscillation_index(state.ions.momentum),
        ion_mach_left=mach_l,
        ion_mach_right=mach_r,
        sheath_diffusion_estimate=numerical_diffusion_estimate(
            state.electrons.density, p, mesh.dx
        ),
        dt_budget=dt_budget,
    )
