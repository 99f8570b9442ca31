"""Profile snapshots (CSV) and the machine-readable run summary (JSON).

Snapshots carry full double precision (17 significant digits) so that a
written state reads back bit-exactly from the ne/ni, flux_e/flux_i, and phi
columns; the velocity columns are derived conveniences.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

import numpy as np

from .mesh import Mesh, PlasmaState, SpeciesState, velocities

SNAPSHOT_COLUMNS = ("x", "ne", "ni", "ue", "ui", "flux_e", "flux_i", "phi")


def snapshot_text(state: PlasmaState, mesh: Mesh) -> str:
    """CSV body of one profile snapshot, rows ordered by increasing x."""
    u_e = velocities(state.electrons.density, state.electrons.momentum)
    u_i = velocities(state.ions.density, state.ions.momentum)
    cols = (
        mesh.centers,
        state.electrons.density,
        state.ions.density,
        u_e,
        u_i,
        state.electrons.momentum,
        state.ions.momentum,
        state.phi,
    )
    lines = [",".join(SNAPSHOT_COLUMNS)]
    for row in zip(*cols):
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def write_snapshot(state: PlasmaState, mesh: Mesh, path) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(snapshot_text(state, mesh))
    except OSError as exc:
        raise OSError(f"cannot write snapshot {path}: {exc}") from exc


def read_snapshot(path) -> dict[str, np.ndarray]:
    """Columns of a snapshot file keyed by header name."""
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise OSError(f"cannot read snapshot {path}: {exc}") from exc
    return {name: data[:, k] for k, name in enumerate(SNAPSHOT_COLUMNS)}


def state_from_snapshot(columns: dict[str, np.ndarray]) -> PlasmaState:
    """Rebuild the conserved state from snapshot columns (bit-exact round trip)."""
    return PlasmaState(
        electrons=SpeciesState(columns["ne"].copy(), columns["flux_e"].copy()),
        ions=SpeciesState(columns["ni"].copy(), columns["flux_i"].copy()),
        phi=columns["phi"].copy(),
    )


@dataclass
class RunSummary:
    """Structured description of one finished (or aborted) run."""

    scenario: str
    completed: bool
    step_count: int
    final_time: float
    steady_residual: float
    steady_reached: bool
    wall_clock_s: float
    theoretical_targets: dict
    diagnostics: dict
    dt_budget: dict
    checks: dict
    warnings: list
    overrides: list
    config_echo: str


def _clean(value):
    """JSON-safe conversion: arrays to lists, non-finite floats to None."""
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _clean(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return value


def summary_to_json(summary: RunSummary) -> str:
    return json.dumps(_clean(summary), indent=2)


def write_summary(summary: RunSummary, path) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(summary_to_json(summary))
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write summary {path}: {exc}") from exc
