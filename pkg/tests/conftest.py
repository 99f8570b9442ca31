import numpy as np
import pytest

from sheathfv.mesh import Mesh, PlasmaState, SpeciesState
from sheathfv.params import NondimParams

HYDROGEN_EPS = 1.0 / 1836.0


@pytest.fixture
def hydrogen():
    return NondimParams(eps=HYDROGEN_EPS, kappa=0.0025, chi=4e-4)


@pytest.fixture
def hydrogen_collisional():
    return NondimParams(eps=HYDROGEN_EPS, kappa=0.0025, chi=4e-4,
                        macro_to_mfp=1e3, sigma_ratio=0.1)


@pytest.fixture
def mesh256():
    return Mesh.uniform(256)


def random_state(n_cells: int, seed: int, with_flow: bool = True) -> PlasmaState:
    """Smooth positive random state for invariance tests."""
    rng = np.random.default_rng(seed)
    x = (np.arange(n_cells) + 0.5) / n_cells

    def smooth_field(lo, hi):
        coeffs = rng.uniform(-1.0, 1.0, 3)
        field = sum(c * np.sin((k + 1) * np.pi * x) for k, c in enumerate(coeffs))
        span = np.max(field) - np.min(field)
        if span == 0.0:
            return np.full(n_cells, 0.5 * (lo + hi))
        return lo + (hi - lo) * (field - np.min(field)) / span

    n_e = smooth_field(0.2, 1.2)
    n_i = smooth_field(0.2, 1.2)
    u_scale = 1.0 if with_flow else 0.0
    return PlasmaState(
        electrons=SpeciesState(n_e, u_scale * n_e * smooth_field(-2.0, 2.0)),
        ions=SpeciesState(n_i, u_scale * n_i * smooth_field(-1.0, 1.0)),
        phi=smooth_field(-0.5, 0.5),
    )
