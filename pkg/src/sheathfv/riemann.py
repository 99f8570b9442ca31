"""Approximate Riemann fluxes for the species subsystems and convective CFL budgets.

Five interface-flux variants are supported:

  rusanov            two-point Rusanov/local Lax-Friedrichs
  hll                HLL with Roe-averaged thermal wave bounds
  fixed-hll          HLL with Bohm-speed wave bounds (ion stabilization)
  scaled-fixed-hll   fixed-hll with the Bohm bound relaxed in collisional
                     regimes by M = 1/(1 + tuning*dx*nu_i), floored at v_th
  controlled-rusanov rusanov with the dissipation coefficient rescaled by
                     sqrt(eps*chi) (electron sheath-diffusion control)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .mesh import DENSITY_FLOOR

ELECTRON_VARIANTS = ("rusanov", "hll", "controlled-rusanov")
ION_VARIANTS = ("rusanov", "hll", "fixed-hll", "scaled-fixed-hll")
ALL_VARIANTS = ("rusanov", "hll", "fixed-hll", "scaled-fixed-hll", "controlled-rusanov")

U_BOHM = 1.0


@dataclass(frozen=True)
class FluxPolicy:
    """A flux variant plus the species context its wave speeds need."""

    variant: str
    v_th: float
    eps: float | None = None
    chi: float | None = None
    dx: float | None = None
    kappa: float | None = None
    macro_to_mfp: float = 0.0
    ion_diffusion_tuning: float = 30.0
    diffusion_scale: float | None = None  # overrides sqrt(eps*chi) when set

    def __post_init__(self):
        if self.variant not in ALL_VARIANTS:
            raise ConfigError(f"unknown flux variant {self.variant!r}")

    @property
    def lambda_scale(self) -> float:
        """Dissipation rescaling factor for controlled-rusanov."""
        if self.diffusion_scale is not None:
            return self.diffusion_scale
        if self.eps is None or self.chi is None:
            raise ConfigError("controlled-rusanov needs eps and chi (or diffusion_scale)")
        return math.sqrt(self.eps * self.chi)


@dataclass
class WaveSpeeds:
    """Per-interface signal speeds: lambda_max for Rusanov-type, b-/b+ for HLL-type."""

    lambda_max: np.ndarray | None = None
    b_minus: np.ndarray | None = None
    b_plus: np.ndarray | None = None


def physical_flux(n, m, v_th):
    """Exact flux (m, m^2/n + n*v_th^2) of the isothermal species subsystem."""
    return m, m * m / np.maximum(n, DENSITY_FLOOR) + n * v_th * v_th


def roe_velocity(n_l, m_l, n_r, m_r):
    """Density-weighted Roe average of the interface velocities."""
    sl = np.sqrt(np.maximum(n_l, DENSITY_FLOOR))
    sr = np.sqrt(np.maximum(n_r, DENSITY_FLOOR))
    u_l = m_l / np.maximum(n_l, DENSITY_FLOOR)
    u_r = m_r / np.maximum(n_r, DENSITY_FLOOR)
    return (sl * u_l + sr * u_r) / (sl + sr)


def _rusanov_lambda(n_l, m_l, n_r, m_r, v_th):
    u_l = np.abs(m_l / np.maximum(n_l, DENSITY_FLOOR))
    u_r = np.abs(m_r / np.maximum(n_r, DENSITY_FLOOR))
    return np.maximum(u_l, u_r) + v_th


def rusanov_flux(n_l, m_l, n_r, m_r, v_th):
    """Central flux average plus lambda_max-weighted dissipation."""
    lam = _rusanov_lambda(n_l, m_l, n_r, m_r, v_th)
    return _rusanov_with_lambda(n_l, m_l, n_r, m_r, v_th, lam)


def _rusanov_with_lambda(n_l, m_l, n_r, m_r, v_th, lam):
    fl_n, fl_m = physical_flux(n_l, m_l, v_th)
    fr_n, fr_m = physical_flux(n_r, m_r, v_th)
    f_n = 0.5 * (fl_n + fr_n) - 0.5 * lam * (n_r - n_l)
    f_m = 0.5 * (fl_m + fr_m) - 0.5 * lam * (m_r - m_l)
    return f_n, f_m


def hll_flux(n_l, m_l, n_r, m_r, b_minus, b_plus, v_th):
    """Two-wave HLL flux; degenerate b-=b+=0 falls back to the flux average."""
    fl_n, fl_m = physical_flux(n_l, m_l, v_th)
    fr_n, fr_m = physical_flux(n_r, m_r, v_th)
    span = b_plus - b_minus
    safe = np.where(span > 0.0, span, 1.0)
    f_n = (b_plus * fl_n - b_minus * fr_n) / safe + b_plus * b_minus / safe * (n_r - n_l)
    f_m = (b_plus * fl_m - b_minus * fr_m) / safe + b_plus * b_minus / safe * (m_r - m_l)
    avg_n = 0.5 * (fl_n + fr_n)
    avg_m = 0.5 * (fl_m + fr_m)
    f_n = np.where(span > 0.0, f_n, avg_n)
    f_m = np.where(span > 0.0, f_m, avg_m)
    return f_n, f_m


def _interface_nu_i(policy: FluxPolicy, u):
    """Ion collision rate evaluated from the interface Roe velocity."""
    return policy.macro_to_mfp * np.sqrt(
        8.0 * policy.kappa / math.pi + (math.pi**2 / 4.0) * u * u
    )


def _hll_bounds(policy: FluxPolicy, n_l, m_l, n_r, m_r, scaled: bool):
    u_roe = roe_velocity(n_l, m_l, n_r, m_r)
    if policy.variant == "hll":
        # Classic thermal-speed bounds, not clamped to zero: once the flow
        # exceeds v_th the scheme turns anti-diffusive, which reproduces the
        # documented coupled-system instability of this solver for cold ions.
        return u_roe - policy.v_th, u_roe + policy.v_th
    if policy.variant == "fixed-hll":
        spread = U_BOHM
    else:  # scaled-fixed-hll
        if policy.kappa is None:
            raise ConfigError("scaled-fixed-hll needs kappa")
        if scaled:
            if policy.dx is None:
                raise ConfigError("scaled-fixed-hll needs dx")
            m_fac = 1.0 / (1.0 + policy.ion_diffusion_tuning * policy.dx
                           * _interface_nu_i(policy, u_roe))
            spread = np.maximum(m_fac * U_BOHM, policy.v_th)
        else:
            spread = np.maximum(U_BOHM, policy.v_th)
    b_plus = np.maximum(0.0, u_roe + spread)
    b_minus = np.minimum(0.0, u_roe - spread)
    return b_minus, b_plus


def wave_speeds(policy: FluxPolicy, n_l, m_l, n_r, m_r) -> WaveSpeeds:
    """Signal speeds of the configured variant at one or many interfaces."""
    if policy.variant == "rusanov":
        return WaveSpeeds(lambda_max=_rusanov_lambda(n_l, m_l, n_r, m_r, policy.v_th))
    if policy.variant == "controlled-rusanov":
        lam = policy.lambda_scale * _rusanov_lambda(n_l, m_l, n_r, m_r, policy.v_th)
        return WaveSpeeds(lambda_max=lam)
    b_minus, b_plus = _hll_bounds(policy, n_l, m_l, n_r, m_r, scaled=True)
    return WaveSpeeds(b_minus=b_minus, b_plus=b_plus)


def interface_flux(policy: FluxPolicy, n_l, m_l, n_r, m_r):
    """Numerical flux of the configured variant for (possibly arrays of) state pairs."""
    if policy.variant == "rusanov":
        return rusanov_flux(n_l, m_l, n_r, m_r, policy.v_th)
    if policy.variant == "controlled-rusanov":
        lam = policy.lambda_scale * _rusanov_lambda(n_l, m_l, n_r, m_r, policy.v_th)
        return _rusanov_with_lambda(n_l, m_l, n_r, m_r, policy.v_th, lam)
    b_minus, b_plus = _hll_bounds(policy, n_l, m_l, n_r, m_r, scaled=True)
    return hll_flux(n_l, m_l, n_r, m_r, b_minus, b_plus, policy.v_th)


def interface_density_flux(policy: FluxPolicy, n_l, m_l, n_r, m_r):
    """Density component of the configured flux (modified-Lie density step)."""
    if policy.variant in ("rusanov", "controlled-rusanov"):
        lam = _rusanov_lambda(n_l, m_l, n_r, m_r, policy.v_th)
        if policy.variant == "controlled-rusanov":
            lam = policy.lambda_scale * lam
        return 0.5 * (m_l + m_r) - 0.5 * lam * (n_r - n_l)
    b_minus, b_plus = _hll_bounds(policy, n_l, m_l, n_r, m_r, scaled=True)
    span = b_plus - b_minus
    safe = np.where(span > 0.0, span, 1.0)
    f_n = (b_plus * m_l - b_minus * m_r) / safe + b_plus * b_minus / safe * (n_r - n_l)
    return np.where(span > 0.0, f_n, 0.5 * (m_l + m_r))


def max_signal_speed(policy: FluxPolicy, n_l, m_l, n_r, m_r):
    """Physical (unscaled) per-interface signal bound used by the CFL budget.

    Dissipation rescaling (controlled-rusanov, the M factor) reduces
    diffusion, not propagation speed, so the budget ignores it.
    """
    if policy.variant in ("rusanov", "controlled-rusanov"):
        return _rusanov_lambda(n_l, m_l, n_r, m_r, policy.v_th)
    b_minus, b_plus = _hll_bounds(policy, n_l, m_l, n_r, m_r, scaled=False)
    return np.maximum(np.abs(b_minus), b_plus)


def species_convective_dt(policy: FluxPolicy, n, m, dx: float) -> float:
    """CFL bound dx / (2 max signal speed) over the interior interfaces."""
    speeds = max_signal_speed(policy, n[:-1], m[:-1], n[1:], m[1:])
    top = float(np.max(speeds)) if speeds.size else policy.v_th
    if top <= 0.0:
        return math.inf
    return dx / (2.0 * top)


def convective_dt(e_policy: FluxPolicy, n_e, m_e,
                  i_policy: FluxPolicy, n_i, m_i, dx: float) -> float:
    """Convective time-step budget: the tighter of the two species bounds."""
    return min(
        species_convective_dt(e_policy, n_e, m_e, dx),
        species_convective_dt(i_policy, n_i, m_i, dx),
    )
