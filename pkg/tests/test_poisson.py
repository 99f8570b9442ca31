import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheathfv.errors import ConfigError
from sheathfv.mesh import Mesh
from sheathfv.poisson import poisson_resolution_check, residual, solve_poisson


def manufactured_error(n_cells: int) -> float:
    # rhs = sin(pi x) with chi = 1 has the closed form phi = -sin(pi x)/pi^2.
    mesh = Mesh.uniform(n_cells)
    rhs = np.sin(np.pi * mesh.centers)
    phi = solve_poisson(1.0 + rhs, np.ones(n_cells), 1.0, mesh.dx)
    exact = -np.sin(np.pi * mesh.centers) / np.pi**2
    return float(np.max(np.abs(phi - exact)))


def test_neutral_plasma_gives_zero_potential():
    n = np.full(64, 0.8)
    phi = solve_poisson(n, n.copy(), 4e-4, 1.0 / 64)
    np.testing.assert_array_equal(phi, np.zeros(64))


def test_manufactured_solution_second_order():
    e64, e128, e256 = (manufactured_error(n) for n in (64, 128, 256))
    assert e64 / e128 == pytest.approx(4.0, abs=0.3)
    assert e128 / e256 == pytest.approx(4.0, abs=0.3)


def test_mirror_symmetric_rhs_gives_mirror_symmetric_phi():
    mesh = Mesh.uniform(128)
    bump = np.exp(-80.0 * (mesh.centers - 0.5) ** 2)
    n_e = 1.0 + 0.1 * bump
    n_i = np.ones(128)
    phi = solve_poisson(n_e, n_i, 4e-4, mesh.dx)
    sym_err = np.max(np.abs(phi - phi[::-1])) / np.max(np.abs(phi))
    assert sym_err < 1e-12


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=10_000))
def test_solver_residual_at_machine_precision(seed):
    rng = np.random.default_rng(seed)
    n = 64
    n_e = rng.uniform(0.1, 2.0, n)
    n_i = rng.uniform(0.1, 2.0, n)
    phi = solve_poisson(n_e, n_i, 4e-4, 1.0 / n)
    assert residual(phi, n_e, n_i, 4e-4, 1.0 / n) < 1e-10


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=10_000))
def test_discrete_maximum_principle(seed):
    # Non-negative charge imbalance n_e - n_i forces a non-positive potential.
    rng = np.random.default_rng(seed)
    n = 48
    n_i = rng.uniform(0.1, 1.0, n)
    n_e = n_i + rng.uniform(0.0, 0.5, n)
    phi = solve_poisson(n_e, n_i, 0.01, 1.0 / n)
    assert np.all(phi <= 1e-12)


def test_resolution_check_examples():
    assert poisson_resolution_check(1.0 / 256, 4e-4)
    assert not poisson_resolution_check(0.05, 4e-4)
    assert poisson_resolution_check(math.sqrt(4e-4), 4e-4)  # boundary inclusive


def test_invalid_chi_rejected():
    with pytest.raises(ConfigError):
        solve_poisson(np.ones(8), np.ones(8), 0.0, 0.125)
    with pytest.raises(ConfigError):
        poisson_resolution_check(0.1, -1.0)
