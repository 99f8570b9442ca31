import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheathfv.errors import ConfigError
from sheathfv.riemann import (
    FluxPolicy,
    convective_dt,
    hll_flux,
    interface_density_flux,
    interface_flux,
    max_signal_speed,
    physical_flux,
    roe_velocity,
    rusanov_flux,
    species_convective_dt,
    wave_speeds,
)

HYDROGEN_EPS = 1.0 / 1836.0

densities = st.floats(min_value=1e-3, max_value=10.0)
momenta = st.floats(min_value=-20.0, max_value=20.0)
thermal = st.floats(min_value=1e-2, max_value=50.0)


def ion_policy(variant="fixed-hll", macro_to_mfp=0.0, tuning=30.0, dx=1.0 / 256):
    return FluxPolicy(variant, v_th=0.05, eps=HYDROGEN_EPS, chi=4e-4, dx=dx,
                      kappa=0.0025, macro_to_mfp=macro_to_mfp, ion_diffusion_tuning=tuning)


def electron_policy(variant="rusanov", scale=None):
    return FluxPolicy(variant, v_th=math.sqrt(1836.0), eps=HYDROGEN_EPS, chi=4e-4,
                      dx=1.0 / 256, kappa=0.0025, diffusion_scale=scale)


def test_physical_flux_examples():
    assert physical_flux(1.0, 0.0, 1.0) == (0.0, 1.0)
    f_n, f_m = physical_flux(1.0, 2.0, 0.05)
    assert f_n == 2.0 and f_m == pytest.approx(4.0025, rel=1e-14)
    assert physical_flux(2.0, 0.0, 1.0) == (0.0, 2.0)


def test_rusanov_hand_value():
    f_n, f_m = rusanov_flux(1.0, 0.0, 2.0, 0.0, 1.0)
    assert f_n == pytest.approx(-0.5)
    assert f_m == pytest.approx(1.5)


@given(densities, momenta, thermal)
def test_rusanov_consistency(n, m, v_th):
    f_n, f_m = rusanov_flux(n, m, n, m, v_th)
    p_n, p_m = physical_flux(n, m, v_th)
    assert f_n == pytest.approx(p_n, rel=1e-13, abs=1e-13)
    assert f_m == pytest.approx(p_m, rel=1e-13, abs=1e-13)


@given(densities, momenta, densities, momenta, thermal)
def test_rusanov_mirror_antisymmetry(n_l, m_l, n_r, m_r, v_th):
    # Reflecting both states (velocities negated, sides swapped) negates the
    # density flux and preserves the momentum flux.
    f_n, f_m = rusanov_flux(n_l, m_l, n_r, m_r, v_th)
    g_n, g_m = rusanov_flux(n_r, -m_r, n_l, -m_l, v_th)
    assert g_n == pytest.approx(-f_n, rel=1e-12, abs=1e-12)
    assert g_m == pytest.approx(f_m, rel=1e-12, abs=1e-12)


def test_roe_velocity_examples():
    assert roe_velocity(1.0, 0.5, 1.0, 0.5) == pytest.approx(0.5)
    assert roe_velocity(1.0, 0.0, 1.0, 2.0) == pytest.approx(1.0)
    assert roe_velocity(4.0, 0.0, 1.0, 3.0) == pytest.approx(1.0)


def test_hll_supersonic_upwind_limit():
    # Supersonic right-running pair: with the left bound clamped at zero the
    # flux reduces to the left physical flux.
    f_n, f_m = hll_flux(1.0, 2.0, 1.0, 3.0, 0.0, 2.55, 0.05)
    assert f_n == pytest.approx(2.0, rel=1e-14)
    assert f_m == pytest.approx(4.0025, rel=1e-14)
    # and symmetrically for the right state when the right bound vanishes
    f_n, f_m = hll_flux(1.0, -3.0, 1.0, -2.0, -2.55, 0.0, 0.05)
    p_n, p_m = physical_flux(1.0, -2.0, 0.05)
    assert f_n == pytest.approx(p_n, rel=1e-14)
    assert f_m == pytest.approx(p_m, rel=1e-14)


@given(densities, momenta, densities, momenta, thermal)
def test_hll_with_symmetric_bounds_is_rusanov(n_l, m_l, n_r, m_r, lam):
    f = hll_flux(n_l, m_l, n_r, m_r, -lam, lam, 0.3)
    fl = physical_flux(n_l, m_l, 0.3)
    fr = physical_flux(n_r, m_r, 0.3)
    expected = (0.5 * (fl[0] + fr[0]) - 0.5 * lam * (n_r - n_l),
                0.5 * (fl[1] + fr[1]) - 0.5 * lam * (m_r - m_l))
    assert f[0] == pytest.approx(expected[0], rel=1e-12, abs=1e-12)
    assert f[1] == pytest.approx(expected[1], rel=1e-12, abs=1e-12)


def test_hll_degenerate_bounds_fall_back_to_average():
    f_n, f_m = hll_flux(1.0, 0.5, 2.0, -0.5, 0.0, 0.0, 0.3)
    fl = physical_flux(1.0, 0.5, 0.3)
    fr = physical_flux(2.0, -0.5, 0.3)
    assert f_n == pytest.approx(0.5 * (fl[0] + fr[0]))
    assert f_m == pytest.approx(0.5 * (fl[1] + fr[1]))


def test_controlled_rusanov_wave_speed_at_rest():
    ws = wave_speeds(electron_policy("controlled-rusanov"), 1.0, 0.0, 1.0, 0.0)
    # sqrt(eps*chi) * eps^(-1/2) collapses to sqrt(chi), the Debye fraction.
    assert ws.lambda_max == pytest.approx(0.02, rel=1e-12)


def test_fixed_hll_wave_speeds_at_rest():
    ws = wave_speeds(ion_policy("fixed-hll"), 1.0, 0.0, 1.0, 0.0)
    assert ws.b_minus == pytest.approx(-1.0)
    assert ws.b_plus == pytest.approx(1.0)


def test_classic_hll_bounds_are_not_sign_clamped():
    # Supersonic flow carries both thermal bounds to one side; this is what
    # makes the classic solver anti-diffusive (and unstable) for cold ions.
    ws = wave_speeds(ion_policy("hll"), 1.0, 0.5, 1.0, 0.5)
    assert ws.b_minus == pytest.approx(0.45)
    assert ws.b_plus == pytest.approx(0.55)


def test_scaled_fixed_hll_collisionless_equals_fixed():
    left = (0.7, 0.2)
    right = (0.9, -0.1)
    a = wave_speeds(ion_policy("scaled-fixed-hll", macro_to_mfp=0.0), *left, *right)
    b = wave_speeds(ion_policy("fixed-hll"), *left, *right)
    assert a.b_minus == pytest.approx(b.b_minus)
    assert a.b_plus == pytest.approx(b.b_plus)


def test_scaled_fixed_hll_diffusion_monotone_in_collisionality():
    spreads = []
    for macro in (0.0, 10.0, 100.0, 1e3, 1e5):
        ws = wave_speeds(ion_policy("scaled-fixed-hll", macro_to_mfp=macro), 1.0, 0.0, 1.0, 0.0)
        spreads.append(ws.b_plus)
    assert all(a >= b for a, b in zip(spreads, spreads[1:]))
    # bounded below by the ion thermal speed
    assert spreads[-1] >= 0.05 - 1e-15


def test_scaled_fixed_hll_m_factor_hand_value():
    # M = 1/(1 + tuning*dx*nu_i(0)) with nu_i(0) = macro*sqrt(8*kappa/pi)
    dx = 1.0 / 256
    macro = 1e3
    nu0 = macro * math.sqrt(8 * 0.0025 / math.pi)
    expected = max(1.0 / (1.0 + 30.0 * dx * nu0), 0.05)
    ws = wave_speeds(ion_policy("scaled-fixed-hll", macro_to_mfp=macro, dx=dx), 1.0, 0.0, 1.0, 0.0)
    assert ws.b_plus == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("variant", ["rusanov", "hll", "fixed-hll", "scaled-fixed-hll",
                                     "controlled-rusanov"])
@given(n=densities, m=st.floats(min_value=-0.9, max_value=0.9))
def test_flux_consistency_all_variants(variant, n, m):
    if variant == "controlled-rusanov":
        policy = electron_policy(variant)
    else:
        policy = ion_policy(variant, macro_to_mfp=50.0)
    f_n, f_m = interface_flux(policy, n, m, n, m)
    p_n, p_m = physical_flux(n, m, policy.v_th)
    assert f_n == pytest.approx(p_n, rel=1e-12, abs=1e-12)
    assert f_m == pytest.approx(p_m, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("variant", ["rusanov", "hll", "fixed-hll", "scaled-fixed-hll",
                                     "controlled-rusanov"])
@given(n_l=densities, m_l=momenta, n_r=densities, m_r=momenta)
def test_flux_mirror_antisymmetry_all_variants(variant, n_l, m_l, n_r, m_r):
    if variant == "controlled-rusanov":
        policy = electron_policy(variant)
    else:
        policy = ion_policy(variant, macro_to_mfp=50.0)
    f_n, f_m = interface_flux(policy, n_l, m_l, n_r, m_r)
    g_n, g_m = interface_flux(policy, n_r, -m_r, n_l, -m_l)
    assert g_n == pytest.approx(-f_n, rel=1e-11, abs=1e-11)
    assert g_m == pytest.approx(f_m, rel=1e-11, abs=1e-11)


def test_density_flux_matches_full_flux_density_component():
    policy = ion_policy("scaled-fixed-hll", macro_to_mfp=1e3)
    n_l, m_l, n_r, m_r = 0.8, 0.3, 0.6, 0.1
    full = interface_flux(policy, n_l, m_l, n_r, m_r)
    only = interface_density_flux(policy, n_l, m_l, n_r, m_r)
    assert only == pytest.approx(full[0], rel=1e-14)


def test_controlled_density_flux_formula():
    # Central momentum average minus the rescaled dissipation.
    policy = electron_policy("controlled-rusanov")
    n_l, m_l, n_r, m_r = 1.0, 3.0, 0.5, 2.0
    lam = math.sqrt(HYDROGEN_EPS * 4e-4) * (max(abs(3.0 / 1.0), abs(2.0 / 0.5)) + policy.v_th)
    expected = 0.5 * (m_l + m_r) - 0.5 * lam * (n_r - n_l)
    assert interface_density_flux(policy, n_l, m_l, n_r, m_r) == pytest.approx(expected, rel=1e-13)


def test_controlled_rusanov_needs_context():
    policy = FluxPolicy("controlled-rusanov", v_th=1.0)
    with pytest.raises(ConfigError):
        interface_flux(policy, 1.0, 0.0, 1.0, 0.0)


def test_scaled_fixed_hll_needs_context():
    policy = FluxPolicy("scaled-fixed-hll", v_th=0.05)
    with pytest.raises(ConfigError):
        wave_speeds(policy, 1.0, 0.0, 1.0, 0.0)


def test_unknown_variant_rejected():
    with pytest.raises(ConfigError):
        FluxPolicy("roe", v_th=1.0)


def test_convective_dt_electron_rest():
    n = np.ones(256)
    m = np.zeros(256)
    dx = 1.0 / 256
    expected = dx / (2.0 * math.sqrt(1836.0))
    assert species_convective_dt(electron_policy("rusanov"), n, m, dx) == pytest.approx(expected, rel=1e-12)
    # the controlled variant rescales dissipation, not signal speed
    assert species_convective_dt(electron_policy("controlled-rusanov"), n, m, dx) == \
        pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(4.558e-5, rel=1e-3)


def test_convective_dt_ion_rest_fixed_hll():
    n = np.ones(256)
    m = np.zeros(256)
    dx = 1.0 / 256
    assert species_convective_dt(ion_policy("fixed-hll"), n, m, dx) == pytest.approx(dx / 2.0, rel=1e-12)
    assert dx / 2.0 == pytest.approx(1.953e-3, rel=1e-3)


def test_convective_dt_is_minimum_over_species():
    n = np.ones(256)
    m = np.zeros(256)
    dx = 1.0 / 256
    dt = convective_dt(electron_policy("rusanov"), n, m, ion_policy("fixed-hll"), n, m, dx)
    assert dt == pytest.approx(dx / (2.0 * math.sqrt(1836.0)), rel=1e-12)


def test_scaled_fixed_hll_cfl_uses_unscaled_bound():
    # Strong collisionality shrinks the dissipation but must not loosen CFL.
    n = np.ones(64)
    m = np.zeros(64)
    dx = 1.0 / 64
    speed = max_signal_speed(ion_policy("scaled-fixed-hll", macro_to_mfp=1e5),
                             n[:-1], m[:-1], n[1:], m[1:])
    assert np.max(speed) == pytest.approx(1.0, rel=1e-12)
