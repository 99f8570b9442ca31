"""Uniform cell-centered grid on the normalized domain [0,1] and the plasma state."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStateError, ParameterDomainError

# Densities below this floor only guard divisions; the floor is never
# added back into conserved updates.
DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class Mesh:
    """Uniform cell-centered mesh: N cells of width 1/N, centers at (j-1/2)/N."""

    n_cells: int
    dx: float
    centers: np.ndarray = field(repr=False)

    @classmethod
    def uniform(cls, n_cells: int) -> "Mesh":
        if n_cells < 4:
            raise ParameterDomainError("mesh needs at least 4 cells")
        dx = 1.0 / n_cells
        centers = (np.arange(n_cells) + 0.5) * dx
        return cls(n_cells=n_cells, dx=dx, centers=centers)


@dataclass
class SpeciesState:
    """Conserved fields of one species: density and momentum per cell."""

    density: np.ndarray
    momentum: np.ndarray

    def copy(self) -> "SpeciesState":
        return SpeciesState(self.density.copy(), self.momentum.copy())


@dataclass
class PlasmaState:
    """Both species, the electric potential, and the current ionization rate."""

    electrons: SpeciesState
    ions: SpeciesState
    phi: np.ndarray
    nu_iz: float = 0.0
    time: float = 0.0

    def copy(self) -> "PlasmaState":
        return PlasmaState(
            self.electrons.copy(), self.ions.copy(), self.phi.copy(), self.nu_iz, self.time
        )


def init_uniform(mesh: Mesh) -> PlasmaState:
    """Quiescent neutral start: unit densities, zero momenta and potential."""
    n = mesh.n_cells
    return PlasmaState(
        electrons=SpeciesState(np.ones(n), np.zeros(n)),
        ions=SpeciesState(np.ones(n), np.zeros(n)),
        phi=np.zeros(n),
    )


def velocity(s: SpeciesState, j: int) -> float:
    """Point velocity momentum/density; refuses densities below the floor."""
    n = s.density[j]
    if n < DENSITY_FLOOR:
        raise DegenerateStateError(f"density {n:.3e} below floor at cell {j}")
    return float(s.momentum[j] / n)


def velocities(density: np.ndarray, momentum: np.ndarray) -> np.ndarray:
    """Vectorized velocity with the division guarded by the density floor."""
    return momentum / np.maximum(density, DENSITY_FLOOR)


def mirror_state(state: PlasmaState) -> PlasmaState:
    """Reflect the state about x=1/2 (densities reversed, velocities negated)."""
    return PlasmaState(
        electrons=SpeciesState(state.electrons.density[::-1].copy(),
                               -state.electrons.momentum[::-1]),
        ions=SpeciesState(state.ions.density[::-1].copy(),
                          -state.ions.momentum[::-1]),
        phi=state.phi[::-1].copy(),
        nu_iz=state.nu_iz,
        time=state.time,
    )


def state_is_finite(state: PlasmaState) -> bool:
    return (
        np.isfinite(state.electrons.density).all()
        and np.isfinite(state.electrons.momentum).all()
        and np.isfinite(state.ions.density).all()
        and np.isfinite(state.ions.momentum).all()
        and np.isfinite(state.phi).all()
        and np.isfinite(state.nu_iz)
    )


def total_ion_number(state: PlasmaState, mesh: Mesh) -> float:
    return float(np.sum(state.ions.density) * mesh.dx)
