"""Ghost-cell construction at the two grounded, absorbing walls.

Ions are assumed supersonic at the walls and are upwinded (ghost = copy).
Electrons are subsonic there, so only the momentum carries a physical
condition (thermal outflow |n u| = n/sqrt(2 pi eps)); the density ghost is
either extrapolated (classical) or reconstructed from the non-conservative
momentum balance including the Lorentz force and friction (consistent).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DegenerateBoundaryWarning
from .mesh import DENSITY_FLOOR
from .params import NondimParams

# Clamp for the consistent-BC exponent; exceeding it flags a degenerate boundary.
EXPONENT_CLAMP = 50.0


@dataclass(frozen=True)
class WallSide:
    """One wall with its outward normal sign (-1 left, +1 right)."""

    name: str
    e_n: int


LEFT_WALL = WallSide("left", -1)
RIGHT_WALL = WallSide("right", +1)


def ion_ghost(n_b: float, m_b: float) -> tuple[float, float]:
    """Supersonic upwind ghost: copy of the boundary cell."""
    return n_b, m_b


def electron_ghost_classical(n_b: float, m_b: float, side: WallSide,
                             u_wall: float) -> tuple[float, float]:
    """Extrapolated density; momentum set so the face average is the wall outflow."""
    m_g = 2.0 * side.e_n * n_b * u_wall - m_b
    return n_b, m_g


def electron_ghost_consistent(n_b: float, m_b: float, phi_b: float, side: WallSide,
                              p: NondimParams, nu_iz: float,
                              dx: float) -> tuple[float, float, float]:
    """Ghost from the non-conservative momentum balance at the wall.

    The velocity face-average carries the thermal outflow, the ghost
    potential mirrors the grounded wall, and the density follows the
    discrete Bernoulli-like balance (kinetic + electrostatic + friction).
    Returns (ghost density, ghost momentum, ghost potential).
    """
    u_wall = p.u_wall
    u_b = m_b / max(n_b, DENSITY_FLOOR)
    u_g = 2.0 * side.e_n * u_wall - u_b
    phi_g = -phi_b
    exponent = (
        -0.5 * p.eps * (u_g * u_g - u_b * u_b)
        + (phi_g - phi_b)
        - dx * p.eps * (p.nu_e_bar + nu_iz) * u_wall
    )
    if abs(exponent) > EXPONENT_CLAMP:
        warnings.warn(
            f"consistent electron BC exponent {exponent:.3g} clamped at {side.name} wall",
            DegenerateBoundaryWarning,
            stacklevel=2,
        )
        exponent = max(-EXPONENT_CLAMP, min(EXPONENT_CLAMP, exponent))
    n_g = n_b * math.exp(exponent)
    return n_g, n_g * u_g, phi_g


def potential_ghost(phi_b: float) -> float:
    """Grounded wall: the face average of boundary and ghost potential is zero."""
    return -phi_b
