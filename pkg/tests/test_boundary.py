import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheathfv.boundary import (
    LEFT_WALL,
    RIGHT_WALL,
    electron_ghost_classical,
    electron_ghost_consistent,
    ion_ghost,
    potential_ghost,
)
from sheathfv.errors import DegenerateBoundaryWarning
from sheathfv.params import NondimParams

HYDROGEN = NondimParams(eps=1.0 / 1836.0, kappa=0.0025, chi=4e-4)
U_WALL = 1.0 / math.sqrt(2.0 * math.pi / 1836.0)


def test_ion_ghost_is_a_copy_and_idempotent():
    assert ion_ghost(0.3, 0.5) == (0.3, 0.5)
    assert ion_ghost(*ion_ghost(0.3, 0.5)) == (0.3, 0.5)


def test_classical_ghost_hand_value():
    n_g, m_g = electron_ghost_classical(0.1, 1.0, RIGHT_WALL, U_WALL)
    assert n_g == 0.1
    assert m_g == pytest.approx(2.0 * 0.1 * U_WALL - 1.0, rel=1e-14)
    assert m_g == pytest.approx(2.4188, abs=1e-4)


def test_classical_ghost_zero_wall_speed_is_reflective():
    _, m_g = electron_ghost_classical(0.4, 0.7, LEFT_WALL, 0.0)
    assert m_g == -0.7


@given(st.floats(min_value=1e-4, max_value=5.0), st.floats(min_value=-30.0, max_value=30.0),
       st.sampled_from([LEFT_WALL, RIGHT_WALL]))
def test_classical_ghost_face_average_is_wall_outflow(n_b, m_b, side):
    n_g, m_g = electron_ghost_classical(n_b, m_b, side, U_WALL)
    assert 0.5 * (m_g + m_b) == pytest.approx(side.e_n * n_b * U_WALL, rel=1e-12, abs=1e-12)
    assert n_g == n_b


def test_classical_ghosts_preserve_mirror_symmetry():
    n_l, m_l = electron_ghost_classical(0.2, -1.5, LEFT_WALL, U_WALL)
    n_r, m_r = electron_ghost_classical(0.2, 1.5, RIGHT_WALL, U_WALL)
    assert n_l == n_r
    assert m_l == pytest.approx(-m_r, rel=1e-14)


def test_consistent_ghost_fixed_point():
    # Boundary velocity already at the wall outflow, grounded potential,
    # no collisions or ionization: the ghost density equals the boundary one.
    for side in (LEFT_WALL, RIGHT_WALL):
        u_b = side.e_n * HYDROGEN.u_wall
        n_g, m_g, phi_g = electron_ghost_consistent(
            0.07, 0.07 * u_b, 0.0, side, HYDROGEN, nu_iz=0.0, dx=1.0 / 256
        )
        assert n_g == pytest.approx(0.07, rel=1e-14)
        assert m_g == pytest.approx(0.07 * u_b, rel=1e-14)
        assert phi_g == 0.0


def test_consistent_ghost_fixed_point_holds_for_small_eps():
    for eps in (1e-3, 1e-5, 1e-8):
        p = NondimParams(eps=eps, kappa=0.0025, chi=4e-4)
        u_b = p.u_wall
        n_g, _, _ = electron_ghost_consistent(0.5, 0.5 * u_b, 0.0, RIGHT_WALL, p, 0.0, 1e-3)
        assert n_g == pytest.approx(0.5, rel=1e-13)


def test_consistent_ghost_regression_pin():
    # Collisionless right wall with a boundary cell lagging the wall outflow
    # and a sheath-level potential; exponent evaluated independently.
    n_b, m_b, phi_b = 0.05, 0.05 * 10.0, -2.8
    u_g = 2.0 * U_WALL - 10.0
    exponent = -(1.0 / 1836.0) / 2.0 * (u_g**2 - 10.0**2) + (2.8 - (-2.8))
    expected_n = 0.05 * math.exp(exponent)
    n_g, m_g, phi_g = electron_ghost_consistent(
        n_b, m_b, phi_b, RIGHT_WALL, HYDROGEN, nu_iz=0.0, dx=1.0 / 256
    )
    assert phi_g == pytest.approx(2.8)
    assert n_g == pytest.approx(expected_n, rel=1e-12)
    assert m_g == pytest.approx(expected_n * u_g, rel=1e-12)
    assert exponent == pytest.approx(5.468, abs=1e-3)


def test_consistent_ghost_friction_term():
    p = NondimParams(eps=1.0 / 1836.0, kappa=0.0025, chi=4e-4,
                     macro_to_mfp=1e3, sigma_ratio=0.1)
    dx = 1.0 / 256
    nu_iz = 2.0
    u_b = p.u_wall
    n_g, _, _ = electron_ghost_consistent(0.1, 0.1 * u_b, 0.0, RIGHT_WALL, p, nu_iz, dx)
    expected = 0.1 * math.exp(-dx * p.eps * (p.nu_e_bar + nu_iz) * p.u_wall)
    assert n_g == pytest.approx(expected, rel=1e-12)


def test_consistent_ghost_clamps_extreme_exponent():
    with pytest.warns(DegenerateBoundaryWarning):
        n_g, _, _ = electron_ghost_consistent(
            0.1, 0.0, -60.0, RIGHT_WALL, HYDROGEN, nu_iz=0.0, dx=1.0 / 256
        )
    # exponent would be ~ +120 - kinetic part; clamped at +50
    assert n_g <= 0.1 * math.exp(50.0) * (1 + 1e-12)


def test_consistent_ghosts_preserve_mirror_symmetry():
    left = electron_ghost_consistent(0.08, -0.6, 0.4, LEFT_WALL, HYDROGEN, 0.5, 1.0 / 128)
    right = electron_ghost_consistent(0.08, 0.6, 0.4, RIGHT_WALL, HYDROGEN, 0.5, 1.0 / 128)
    assert left[0] == pytest.approx(right[0], rel=1e-14)
    assert left[1] == pytest.approx(-right[1], rel=1e-14)
    assert left[2] == right[2]


def test_potential_ghost_examples():
    assert potential_ghost(3.0) == -3.0
    assert potential_ghost(0.0) == 0.0


@given(st.floats(min_value=-100.0, max_value=100.0))
def test_potential_ghost_involution(phi_b):
    assert potential_ghost(potential_ghost(phi_b)) == phi_b
