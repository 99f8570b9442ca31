"""Parameter sets for the two-fluid bounded-plasma model.

All schemes consume the non-dimensional group (mass ratio, temperature
ratio, squared normalized Debye length, collisionality); the physical
setup exists only as a convenience converter. Velocities are normalized
by the Bohm speed, so the Bohm velocity is 1 by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterDomainError

# CODATA 2018 values; only used by the physical-to-nondimensional converter.
BOLTZMANN = 1.380649e-23            # J/K
ELEMENTARY_CHARGE = 1.602176634e-19  # C
VACUUM_PERMITTIVITY = 8.8541878128e-12  # F/m
ELECTRON_MASS = 9.1093837015e-31     # kg


@dataclass(frozen=True)
class PhysicalSetup:
    """Dimensional description of a plasma bounded by two grounded walls.

    n0: reference ion number density [m^-3]
    Te, Ti: electron/ion temperatures [K]
    mass_ratio: electron-to-ion mass ratio (dimensionless)
    L0: wall gap [m]
    macro_to_mfp: L0 over the ion mean free path (0 means collisionless)
    sigma_ratio: electron-neutral to ion-neutral cross-section ratio
    """

    n0: float
    Te: float
    Ti: float
    mass_ratio: float
    L0: float
    macro_to_mfp: float = 0.0
    sigma_ratio: float = 0.0

    def __post_init__(self):
        for name in ("n0", "Te", "Ti", "mass_ratio", "L0"):
            if not getattr(self, name) > 0.0:
                raise ParameterDomainError(f"{name} must be strictly positive")
        if self.mass_ratio > 1.0:
            raise ParameterDomainError("mass_ratio must satisfy m_e/m_i <= 1")
        if self.macro_to_mfp < 0.0:
            raise ParameterDomainError("macro_to_mfp must be >= 0")
        if self.sigma_ratio < 0.0:
            raise ParameterDomainError("sigma_ratio must be >= 0")


@dataclass(frozen=True)
class NondimParams:
    """Non-dimensional parameter group consumed by every scheme.

    eps: electron-to-ion mass ratio
    kappa: ion-to-electron temperature ratio
    chi: squared Debye length over squared wall gap (Poisson stiffness)
    """

    eps: float
    kappa: float
    chi: float
    macro_to_mfp: float = 0.0
    sigma_ratio: float = 0.0

    def __post_init__(self):
        for name in ("eps", "kappa", "chi"):
            if not getattr(self, name) > 0.0:
                raise ParameterDomainError(f"{name} must be strictly positive")
        if self.eps > 1.0:
            raise ParameterDomainError("eps must satisfy m_e/m_i <= 1")
        if self.macro_to_mfp < 0.0:
            raise ParameterDomainError("macro_to_mfp must be >= 0")
        if self.sigma_ratio < 0.0:
            raise ParameterDomainError("sigma_ratio must be >= 0")

    @property
    def v_th_e(self) -> float:
        """Electron sound speed in Bohm units."""
        return self.eps ** -0.5

    @property
    def v_th_i(self) -> float:
        """Ion sound speed in Bohm units."""
        return self.kappa ** 0.5

    @property
    def u_bohm(self) -> float:
        return 1.0

    @property
    def u_wall(self) -> float:
        """Magnitude of the thermal electron outflow velocity at a wall."""
        return 1.0 / math.sqrt(2.0 * math.pi * self.eps)

    @property
    def inv_omega_pe(self) -> float:
        """Inverse normalized electron plasma frequency, sqrt(eps*chi)."""
        return math.sqrt(self.eps * self.chi)

    @property
    def nu_e_bar(self) -> float:
        """Constant electron-neutral collision rate."""
        return electron_collision_rate(self.eps, self.macro_to_mfp, self.sigma_ratio)


@dataclass(frozen=True)
class TheoreticalTargets:
    """Closed-form potential drops for the collisionless floating-wall problem."""

    v_f_bar: float   # sheath (floating-wall) potential drop, negative
    v_s_bar: float   # pre-sheath potential drop, 1/2
    phi_peak: float  # expected center potential, v_s_bar - v_f_bar


def electron_collision_rate(eps: float, macro_to_mfp: float, sigma_ratio: float) -> float:
    """Normalized electron-neutral collision rate for constant cross sections."""
    return sigma_ratio * macro_to_mfp * math.sqrt(8.0 / (math.pi * eps))


def derive_nondim(setup: PhysicalSetup) -> NondimParams:
    """Convert a dimensional setup to the non-dimensional parameter group."""
    chi = (BOLTZMANN * setup.Te * VACUUM_PERMITTIVITY) / (
        ELEMENTARY_CHARGE**2 * setup.n0 * setup.L0**2
    )
    return NondimParams(
        eps=setup.mass_ratio,
        kappa=setup.Ti / setup.Te,
        chi=chi,
        macro_to_mfp=setup.macro_to_mfp,
        sigma_ratio=setup.sigma_ratio,
    )


def debye_length(setup: PhysicalSetup) -> float:
    """Electron Debye length [m] of the dimensional setup."""
    return math.sqrt(
        VACUUM_PERMITTIVITY * BOLTZMANN * setup.Te / (ELEMENTARY_CHARGE**2 * setup.n0)
    )


def theoretical_targets(p: NondimParams) -> TheoreticalTargets:
    """Expected sheath/pre-sheath potential drops and center-potential peak."""
    v_f = 0.5 * math.log(2.0 * math.pi * p.eps)
    v_s = 0.5
    return TheoreticalTargets(v_f_bar=v_f, v_s_bar=v_s, phi_peak=v_s - v_f)
