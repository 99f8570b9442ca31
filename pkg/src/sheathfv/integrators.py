"""Complete time-stepping schemes and the run loop.

Three splittings are implemented:

  lie-classical  convective step, implicit-potential Poisson solve,
                 ionization closure, then all source terms at once.
  lie-modified   momenta advanced as in the classical splitting; the
                 densities are then recomputed from the old step using
                 interface particle fluxes built from the new momenta with
                 controlled (rescaled) dissipation, and the ionization
                 closure is applied last.
  strang         symmetric second-order splitting: half source step (RK2),
                 MUSCL-Hancock convective step, Poisson solve, half source.

Every scheme keeps the electric potential implicit: the solve always sees
the densities produced by the convective step of the same time step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .boundary import (
    LEFT_WALL,
    RIGHT_WALL,
    electron_ghost_classical,
    electron_ghost_consistent,
    ion_ghost,
    potential_ghost,
)
from .errors import ConfigError, DegenerateStateError, InstabilityError
from .mesh import Mesh, PlasmaState, SpeciesState, state_is_finite, velocities
from .params import NondimParams
from .poisson import poisson_resolution_check, solve_poisson
from .riemann import (
    ELECTRON_VARIANTS,
    ION_VARIANTS,
    FluxPolicy,
    convective_dt,
    interface_density_flux,
    interface_flux,
    physical_flux,
)
from .sources import ion_collision_rate, ionization_rate_I0, ionization_rate_I1, momentum_source

SPLITTINGS = ("lie-classical", "lie-modified", "strang")
BC_VARIANTS = ("classical", "consistent")


@dataclass
class SchemeConfig:
    """Scheme selection (splitting x per-species flux x electron BC) and run controls."""

    splitting: str = "lie-modified"
    electron_flux: str = "controlled-rusanov"
    ion_flux: str = "scaled-fixed-hll"
    electron_bc: str = "consistent"
    limiter: str = "minmod"
    cfl_safety: float = 0.9
    t_final: float = 4.0
    dt_cap: float | None = None
    steady_tol: float = 1e-6
    steady_window: int = 100
    snapshot_every: int = 0
    ion_diffusion_tuning: float = 30.0
    electron_diffusion_scale: float | None = None

    def validate(self):
        if self.splitting not in SPLITTINGS:
            raise ConfigError(f"splitting must be one of {SPLITTINGS}")
        if self.electron_flux not in ELECTRON_VARIANTS:
            raise ConfigError(
                f"electron_flux must be one of {ELECTRON_VARIANTS} "
                "(the fixed-hll variants are ion-only)"
            )
        if self.ion_flux not in ION_VARIANTS:
            raise ConfigError(
                f"ion_flux must be one of {ION_VARIANTS} (controlled-rusanov is electron-only)"
            )
        if self.electron_flux == "controlled-rusanov" and self.splitting != "lie-modified":
            raise ConfigError("controlled-rusanov requires splitting = lie-modified")
        if self.electron_bc not in BC_VARIANTS:
            raise ConfigError(f"electron_bc must be one of {BC_VARIANTS}")
        if self.limiter != "minmod":
            raise ConfigError("only the minmod slope limiter is defined")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise ConfigError("cfl_safety must lie in (0, 1]")
        if self.t_final < 0.0:
            raise ConfigError("t_final must be >= 0")
        if self.dt_cap is not None and self.dt_cap <= 0.0:
            raise ConfigError("dt_cap must be strictly positive when set")
        if self.steady_tol <= 0.0:
            raise ConfigError("steady_tol must be strictly positive")
        if self.steady_window < 1:
            raise ConfigError("steady_window must be >= 1")
        if self.snapshot_every < 0:
            raise ConfigError("snapshot_every must be >= 0")
        if self.ion_diffusion_tuning < 0.0:
            raise ConfigError("ion_diffusion_tuning must be >= 0")


@dataclass
class TimeStepBudget:
    """Per-step stability budgets and the step actually taken."""

    dt_convective: float
    dt_source: float
    dt_plasma: float
    dt_chosen: float

    @property
    def dt_min(self) -> float:
        return min(self.dt_convective, self.dt_source, self.dt_plasma)


def electron_flux_policy(cfg: SchemeConfig, p: NondimParams, dx: float) -> FluxPolicy:
    return FluxPolicy(
        variant=cfg.electron_flux,
        v_th=p.v_th_e,
        eps=p.eps,
        chi=p.chi,
        dx=dx,
        kappa=p.kappa,
        macro_to_mfp=p.macro_to_mfp,
        ion_diffusion_tuning=cfg.ion_diffusion_tuning,
        diffusion_scale=cfg.electron_diffusion_scale,
    )


def ion_flux_policy(cfg: SchemeConfig, p: NondimParams, dx: float) -> FluxPolicy:
    return FluxPolicy(
        variant=cfg.ion_flux,
        v_th=p.v_th_i,
        eps=p.eps,
        chi=p.chi,
        dx=dx,
        kappa=p.kappa,
        macro_to_mfp=p.macro_to_mfp,
        ion_diffusion_tuning=cfg.ion_diffusion_tuning,
    )


def _full_state_policy(policy: FluxPolicy) -> FluxPolicy:
    """Step-1 fluxes keep standard dissipation; rescaling is density-step only."""
    if policy.variant == "controlled-rusanov":
        return replace(policy, variant="rusanov")
    return policy


def species_ghosts(n, m, species: str, bc: str, p: NondimParams,
                   phi, nu_iz: float, dx: float):
    """Ghost (density, momentum) pairs at the left and right wall."""
    if species == "ion":
        return ion_ghost(n[0], m[0]), ion_ghost(n[-1], m[-1])
    if bc == "classical":
        return (
            electron_ghost_classical(n[0], m[0], LEFT_WALL, p.u_wall),
            electron_ghost_classical(n[-1], m[-1], RIGHT_WALL, p.u_wall),
        )
    left = electron_ghost_consistent(n[0], m[0], phi[0], LEFT_WALL, p, nu_iz, dx)
    right = electron_ghost_consistent(n[-1], m[-1], phi[-1], RIGHT_WALL, p, nu_iz, dx)
    return left[:2], right[:2]


def _extend(n, m, ghost_left, ghost_right):
    size = n.shape[0] + 2
    n_ext = np.empty(size)
    m_ext = np.empty(size)
    n_ext[1:-1] = n
    m_ext[1:-1] = m
    n_ext[0], m_ext[0] = ghost_left
    n_ext[-1], m_ext[-1] = ghost_right
    return n_ext, m_ext


def _species_ext(n, m, species, cfg, p, phi, nu_iz, dx):
    gl, gr = species_ghosts(n, m, species, cfg.electron_bc, p, phi, nu_iz, dx)
    return _extend(n, m, gl, gr)


def _phi_ext(phi):
    out = np.empty(phi.shape[0] + 2)
    out[1:-1] = phi
    out[0] = potential_ghost(phi[0])
    out[-1] = potential_ghost(phi[-1])
    return out


def interface_fluxes(policy: FluxPolicy, n_ext, m_ext):
    """Numerical fluxes on all N+1 faces of a ghost-extended species field."""
    return interface_flux(policy, n_ext[:-1], m_ext[:-1], n_ext[1:], m_ext[1:])


def convective_step(policy: FluxPolicy, n_ext, m_ext, dt: float, dx: float):
    """First-order conservative update of one species from its extended fields."""
    f_n, f_m = interface_fluxes(policy, n_ext, m_ext)
    r = dt / dx
    n_new = n_ext[1:-1] - r * (f_n[1:] - f_n[:-1])
    m_new = m_ext[1:-1] - r * (f_m[1:] - f_m[:-1])
    return n_new, m_new


def minmod(a, b):
    """Minmod limiter: the smaller-magnitude argument when signs agree, else 0."""
    return 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))


def _muscl_faces(n_ext, m_ext, dt, dx, v_th):
    """Limited, half-step-evolved face states for every extended cell.

    Ghost-cell slopes are forced to zero (reconstructing them would need a
    second cell beyond the wall); wall-adjacent cells keep their limited
    slopes so the boundary condition, not the reconstruction, controls the
    wall flux.
    """
    dn = np.zeros_like(n_ext)
    dm = np.zeros_like(m_ext)
    dn[1:-1] = minmod(n_ext[1:-1] - n_ext[:-2], n_ext[2:] - n_ext[1:-1])
    dm[1:-1] = minmod(m_ext[1:-1] - m_ext[:-2], m_ext[2:] - m_ext[1:-1])
    n_lo = n_ext - 0.5 * dn
    n_hi = n_ext + 0.5 * dn
    m_lo = m_ext - 0.5 * dm
    m_hi = m_ext + 0.5 * dm
    f_lo_n, f_lo_m = physical_flux(n_lo, m_lo, v_th)
    f_hi_n, f_hi_m = physical_flux(n_hi, m_hi, v_th)
    c = dt / (2.0 * dx)
    inc_n = c * (f_lo_n - f_hi_n)
    inc_m = c * (f_lo_m - f_hi_m)
    return n_lo + inc_n, m_lo + inc_m, n_hi + inc_n, m_hi + inc_m


def muscl_reconstruct(window_n, window_m, dt: float, dx: float, v_th: float):
    """Predictor face states of the center cell of a 3-cell window.

    Returns ((n, m) at the left face, (n, m) at the right face) after the
    half-time-step flux-difference predictor; dt=0 yields the raw limited
    reconstruction.
    """
    wn = np.asarray(window_n, dtype=float)
    wm = np.asarray(window_m, dtype=float)
    dn = minmod(wn[1] - wn[0], wn[2] - wn[1])
    dm = minmod(wm[1] - wm[0], wm[2] - wm[1])
    n_lo, n_hi = wn[1] - 0.5 * dn, wn[1] + 0.5 * dn
    m_lo, m_hi = wm[1] - 0.5 * dm, wm[1] + 0.5 * dm
    f_lo = physical_flux(n_lo, m_lo, v_th)
    f_hi = physical_flux(n_hi, m_hi, v_th)
    c = dt / (2.0 * dx)
    inc_n = c * (f_lo[0] - f_hi[0])
    inc_m = c * (f_lo[1] - f_hi[1])
    return (n_lo + inc_n, m_lo + inc_m), (n_hi + inc_n, m_hi + inc_m)


def muscl_convective_step(policy: FluxPolicy, n_ext, m_ext, dt: float, dx: float):
    """MUSCL-Hancock conservative update of one species."""
    n_lo, m_lo, n_hi, m_hi = _muscl_faces(n_ext, m_ext, dt, dx, policy.v_th)
    f_n, f_m = interface_flux(policy, n_hi[:-1], m_hi[:-1], n_lo[1:], m_lo[1:])
    r = dt / dx
    n_new = n_ext[1:-1] - r * (f_n[1:] - f_n[:-1])
    m_new = m_ext[1:-1] - r * (f_m[1:] - f_m[:-1])
    return n_new, m_new


def choose_dt(state: PlasmaState, mesh: Mesh, p: NondimParams,
              cfg: SchemeConfig) -> TimeStepBudget:
    """Stability budgets of the current state and the step to take.

    A configured dt_cap overrides the safety-scaled minimum verbatim (the
    run loop records a warning if it exceeds a raw budget).
    """
    e_pol = electron_flux_policy(cfg, p, mesh.dx)
    i_pol = ion_flux_policy(cfg, p, mesh.dx)
    dt_conv = convective_dt(
        e_pol, state.electrons.density, state.electrons.momentum,
        i_pol, state.ions.density, state.ions.momentum, mesh.dx,
    )
    budgets = []
    if state.nu_iz > 0.0:
        budgets.append(1.0 / state.nu_iz)
    u_i = velocities(state.ions.density, state.ions.momentum)
    nu_i_max = float(np.max(ion_collision_rate(u_i, p.kappa, p.macro_to_mfp)))
    rate = max(p.nu_e_bar, nu_i_max)
    if rate > 0.0:
        budgets.append(1.0 / rate)
    dt_source = min(budgets) if budgets else math.inf
    dt_plasma = p.inv_omega_pe
    if cfg.dt_cap is not None:
        dt_chosen = cfg.dt_cap
    else:
        dt_chosen = cfg.cfl_safety * min(dt_conv, dt_source, dt_plasma)
    return TimeStepBudget(dt_conv, dt_source, dt_plasma, dt_chosen)


def step_lie_classical(state: PlasmaState, mesh: Mesh, p: NondimParams,
                       cfg: SchemeConfig, dt: float) -> PlasmaState:
    """First-order Lie splitting: convection, Poisson, ionization, sources."""
    dx = mesh.dx
    e_pol = _full_state_policy(electron_flux_policy(cfg, p, dx))
    i_pol = ion_flux_policy(cfg, p, dx)

    ne_ext, me_ext = _species_ext(
        state.electrons.density, state.electrons.momentum, "electron",
        cfg, p, state.phi, state.nu_iz, dx,
    )
    ni_ext, mi_ext = _species_ext(
        state.ions.density, state.ions.momentum, "ion", cfg, p, state.phi, state.nu_iz, dx,
    )
    ne_s, me_s = convective_step(e_pol, ne_ext, me_ext, dt, dx)
    ni_s, mi_s = convective_step(i_pol, ni_ext, mi_ext, dt, dx)

    phi_new = solve_poisson(ne_s, ni_s, p.chi, dx)
    nu_iz = ionization_rate_I0(state.ions.density, ne_s, ni_s, dt)

    pe = _phi_ext(phi_new)
    nu_i = ion_collision_rate(velocities(ni_s, mi_s), p.kappa, p.macro_to_mfp)
    iz_gain = dt * nu_iz * ne_s
    ne_new = ne_s + iz_gain
    ni_new = ni_s + iz_gain
    me_new = me_s + dt * momentum_source(ne_s, me_s, "electron", pe[:-2], pe[2:], dx,
                                         p.nu_e_bar, p.eps)
    mi_new = mi_s + dt * momentum_source(ni_s, mi_s, "ion", pe[:-2], pe[2:], dx, nu_i)
    return PlasmaState(
        electrons=SpeciesState(ne_new, me_new),
        ions=SpeciesState(ni_new, mi_new),
        phi=phi_new,
        nu_iz=nu_iz,
        time=state.time + dt,
    )


def step_lie_modified(state: PlasmaState, mesh: Mesh, p: NondimParams,
                      cfg: SchemeConfig, dt: float) -> PlasmaState:
    """Modified Lie splitting with controlled numerical diffusion.

    Momenta and potential follow the classical splitting (standard
    dissipation). The densities are then rebuilt from the old time level
    with interface particle fluxes that combine the new momenta with the
    old densities and carry rescaled dissipation, so the electron density
    step stops smearing the sheath. Ionization closes the step.
    """
    dx = mesh.dx
    e_pol = electron_flux_policy(cfg, p, dx)
    i_pol = ion_flux_policy(cfg, p, dx)
    ne_old = state.electrons.density
    ni_old = state.ions.density

    # Steps 1-2: convective update and implicit potential, as in the classical scheme.
    ne_ext, me_ext = _species_ext(
        ne_old, state.electrons.momentum, "electron", cfg, p, state.phi, state.nu_iz, dx,
    )
    ni_ext, mi_ext = _species_ext(
        ni_old, state.ions.momentum, "ion", cfg, p, state.phi, state.nu_iz, dx,
    )
    ne_s, me_s = convective_step(_full_state_policy(e_pol), ne_ext, me_ext, dt, dx)
    ni_s, mi_s = convective_step(i_pol, ni_ext, mi_ext, dt, dx)
    phi_new = solve_poisson(ne_s, ni_s, p.chi, dx)

    # Step 3: momentum source terms with the new potential.
    pe = _phi_ext(phi_new)
    nu_i = ion_collision_rate(velocities(ni_s, mi_s), p.kappa, p.macro_to_mfp)
    me_new = me_s + dt * momentum_source(ne_s, me_s, "electron", pe[:-2], pe[2:], dx,
                                         p.nu_e_bar, p.eps)
    mi_new = mi_s + dt * momentum_source(ni_s, mi_s, "ion", pe[:-2], pe[2:], dx, nu_i)

    # Step 4: density convective step from the old densities using the new
    # momenta; ghosts are rebuilt from the mixed-time state (potential at n+1,
    # ionization rate lagged one step).
    ne_mix, me_mix = _species_ext(ne_old, me_new, "electron", cfg, p, phi_new,
                                  state.nu_iz, dx)
    ni_mix, mi_mix = _species_ext(ni_old, mi_new, "ion", cfg, p, phi_new,
                                  state.nu_iz, dx)
    f_e = interface_density_flux(e_pol, ne_mix[:-1], me_mix[:-1], ne_mix[1:], me_mix[1:])
    f_i = interface_density_flux(i_pol, ni_mix[:-1], mi_mix[:-1], ni_mix[1:], mi_mix[1:])
    r = dt / dx
    ne_ss = ne_old - r * (f_e[1:] - f_e[:-1])
    ni_ss = ni_old - r * (f_i[1:] - f_i[:-1])

    # Steps 5-6: ionization closure and density source terms.
    nu_iz = ionization_rate_I0(ni_old, ne_ss, ni_ss, dt)
    iz_gain = dt * nu_iz * ne_ss
    return PlasmaState(
        electrons=SpeciesState(ne_ss + iz_gain, me_new),
        ions=SpeciesState(ni_ss + iz_gain, mi_new),
        phi=phi_new,
        nu_iz=nu_iz,
        time=state.time + dt,
    )


def _source_increments(ne, me, ni, mi, nu_iz, phi_l, phi_r, p, dx):
    """Instantaneous source rates of both species at one RK stage."""
    nu_i = ion_collision_rate(velocities(ni, mi), p.kappa, p.macro_to_mfp)
    gain = nu_iz * ne
    d_me = momentum_source(ne, me, "electron", phi_l, phi_r, dx, p.nu_e_bar, p.eps)
    d_mi = momentum_source(ni, mi, "ion", phi_l, phi_r, dx, nu_i)
    return gain, d_me, gain.copy(), d_mi


def _rk2_half_source(ne, me, ni, mi, phi, p, dt, dx):
    """One RK2 half step of the source subsystem at frozen potential."""
    pe = _phi_ext(phi)
    phi_l, phi_r = pe[:-2], pe[2:]
    nu_0 = ionization_rate_I1(mi[0], mi[-1], ne, dx)
    d0 = _source_increments(ne, me, ni, mi, nu_0, phi_l, phi_r, p, dx)
    q = 0.25 * dt
    ne_1 = ne + q * d0[0]
    me_1 = me + q * d0[1]
    ni_1 = ni + q * d0[2]
    mi_1 = mi + q * d0[3]
    nu_1 = ionization_rate_I1(mi_1[0], mi_1[-1], ne_1, dx)
    d1 = _source_increments(ne_1, me_1, ni_1, mi_1, nu_1, phi_l, phi_r, p, dx)
    h = 0.5 * dt
    return ne + h * d1[0], me + h * d1[1], ni + h * d1[2], mi + h * d1[3], nu_1


def step_strang(state: PlasmaState, mesh: Mesh, p: NondimParams,
                cfg: SchemeConfig, dt: float) -> PlasmaState:
    """Strang splitting with RK2 source half steps and a MUSCL-Hancock core."""
    dx = mesh.dx
    e_pol = electron_flux_policy(cfg, p, dx)
    i_pol = ion_flux_policy(cfg, p, dx)

    ne_2, me_2, ni_2, mi_2, _ = _rk2_half_source(
        state.electrons.density, state.electrons.momentum,
        state.ions.density, state.ions.momentum, state.phi, p, dt, dx,
    )

    ne_ext, me_ext = _species_ext(ne_2, me_2, "electron", cfg, p, state.phi,
                                  state.nu_iz, dx)
    ni_ext, mi_ext = _species_ext(ni_2, mi_2, "ion", cfg, p, state.phi,
                                  state.nu_iz, dx)
    ne_3, me_3 = muscl_convective_step(e_pol, ne_ext, me_ext, dt, dx)
    ni_3, mi_3 = muscl_convective_step(i_pol, ni_ext, mi_ext, dt, dx)

    phi_new = solve_poisson(ne_3, ni_3, p.chi, dx)

    ne_4, me_4, ni_4, mi_4, nu_last = _rk2_half_source(
        ne_3, me_3, ni_3, mi_3, phi_new, p, dt, dx,
    )
    return PlasmaState(
        electrons=SpeciesState(ne_4, me_4),
        ions=SpeciesState(ni_4, mi_4),
        phi=phi_new,
        nu_iz=nu_last,
        time=state.time + dt,
    )


_STEPPERS = {
    "lie-classical": step_lie_classical,
    "lie-modified": step_lie_modified,
    "strang": step_strang,
}


def step(state: PlasmaState, mesh: Mesh, p: NondimParams, cfg: SchemeConfig,
         dt: float) -> PlasmaState:
    """Advance one step with the configured splitting."""
    return _STEPPERS[cfg.splitting](state, mesh, p, cfg, dt)


@dataclass
class RunResult:
    """Final state plus the trace a run leaves behind."""

    state: PlasmaState
    steps: int
    steady_residual: float
    steady_reached: bool
    budget: TimeStepBudget
    diagnostics_history: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def run(state: PlasmaState, mesh: Mesh, p: NondimParams, cfg: SchemeConfig,
        snapshot_sink=None) -> RunResult:
    """Advance to t_final or a detected steady state, collecting diagnostics.

    The potential is first re-solved from the initial densities so that
    every scheme (and the consistent boundary condition) starts from a
    field consistent with the state. Steady state is declared when the
    density residual max|dn|/dt stays below steady_tol for steady_window
    consecutive steps. Raises InstabilityError (with the last good state
    attached) if any field stops being finite.
    """
    from .diagnostics import compute_diagnostics

    cfg.validate()
    state = state.copy()
    state.phi = solve_poisson(state.electrons.density, state.ions.density, p.chi, mesh.dx)

    warnings_log: list[str] = []
    if not poisson_resolution_check(mesh.dx, p.chi):
        warnings_log.append(
            f"mesh does not resolve the Debye length: dx={mesh.dx:.3e} > "
            f"sqrt(chi)={math.sqrt(p.chi):.3e}"
        )

    budget = choose_dt(state, mesh, p, cfg)
    history: list = []
    residual = math.inf
    steady_run = 0
    steady = False
    cap_warned = False
    steps = 0

    while state.time + 1e-12 < cfg.t_final:
        budget = choose_dt(state, mesh, p, cfg)
        dt = budget.dt_chosen
        if cfg.dt_cap is not None and dt > budget.dt_min and not cap_warned:
            warnings_log.append(
                f"dt_cap={dt:.3e} exceeds the tightest stability budget "
                f"{budget.dt_min:.3e} at step {steps}"
            )
            cap_warned = True
        if state.time + dt > cfg.t_final:
            dt = cfg.t_final - state.time
        try:
            new_state = _STEPPERS[cfg.splitting](state, mesh, p, cfg, dt)
        except DegenerateStateError as exc:
            # A collapsed state (e.g. negative total density) is an instability.
            raise InstabilityError(steps, state.time, last_good=state) from exc
        if not state_is_finite(new_state):
            raise InstabilityError(steps, state.time, last_good=state)
        residual = max(
            float(np.max(np.abs(new_state.electrons.density - state.electrons.density))),
            float(np.max(np.abs(new_state.ions.density - state.ions.density))),
        ) / dt
        state = new_state
        steps += 1
        if cfg.snapshot_every and steps % cfg.snapshot_every == 0:
            if snapshot_sink is not None:
                snapshot_sink(state, steps)
            history.append(compute_diagnostics(state, mesh, p, residual, budget))
        if residual < cfg.steady_tol:
            steady_run += 1
            if steady_run >= cfg.steady_window:
                steady = True
                break
        else:
            steady_run = 0

    if snapshot_sink is not None:
        snapshot_sink(state, steps)
    history.append(compute_diagnostics(state, mesh, p, residual, budget))

    u_i = velocities(state.ions.density, state.ions.momentum)
    if min(abs(float(u_i[0])), abs(float(u_i[-1]))) < p.v_th_i:
        warnings_log.append(
            "ion flow subsonic at a boundary cell; the supersonic upwind ghost "
            "assumption is out of its regime"
        )

    return RunResult(
        state=state,
        steps=steps,
        steady_residual=residual,
        steady_reached=steady,
        budget=budget,
        diagnostics_history=history,
        warnings=warnings_log,
    )
