"""Command-line interface: run a configuration, list presets, check a config.

Exit codes: 0 success, 2 configuration error, 3 instability detected.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .config import PRESET_NAMES, RunConfig, load_preset, parse_config
from .diagnostics import compute_diagnostics
from .errors import ConfigError, InstabilityError
from .integrators import RunResult, run
from .mesh import Mesh, init_uniform
from .output import RunSummary, write_snapshot, write_summary
from .params import theoretical_targets

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INSTABILITY = 3


def _resolve_config(spec: str, overrides) -> RunConfig:
    """Load a config from a path, or from the bundled presets by bare name."""
    path = Path(spec)
    if path.exists():
        return parse_config(path.read_text(), scenario=path.stem, overrides=overrides)
    if spec in PRESET_NAMES:
        return load_preset(spec, overrides=overrides)
    raise ConfigError(f"config {spec!r} is neither a file nor a preset name")


def _build_summary(cfg: RunConfig, result: RunResult, wall_clock: float,
                   completed: bool) -> RunSummary:
    targets = theoretical_targets(cfg.params)
    final_diag = result.diagnostics_history[-1] if result.diagnostics_history else None
    diag_dict = final_diag if final_diag is not None else {}
    checks = {}
    if final_diag is not None:
        checks = {
            "completed": completed,
            "steady_reached": result.steady_reached,
            "ambipolarity_error_le_0.05": final_diag.ambipolarity_err <= 0.05,
            "phi_peak_within_5pct": final_diag.phi_peak_rel_err <= 0.05,
        }
    return RunSummary(
        scenario=cfg.scenario,
        completed=completed,
        step_count=result.steps,
        final_time=result.state.time,
        steady_residual=result.steady_residual,
        steady_reached=result.steady_reached,
        wall_clock_s=wall_clock,
        theoretical_targets=vars(targets).copy(),
        diagnostics=diag_dict,
        dt_budget=result.budget,
        checks=checks,
        warnings=list(result.warnings),
        overrides=list(cfg.overrides),
        config_echo=cfg.raw_text,
    )


def _cmd_run(args) -> int:
    try:
        cfg = _resolve_config(args.config, tuple(args.override))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    mesh = Mesh.uniform(cfg.n_cells)
    state = init_uniform(mesh)

    def sink(snapshot_state, step_index):
        write_snapshot(snapshot_state, mesh, out_dir / f"profile_{step_index:08d}.csv")

    started = time.perf_counter()
    try:
        result = run(state, mesh, cfg.params, cfg.scheme,
                     snapshot_sink=sink if cfg.snapshot_every else None)
    except InstabilityError as exc:
        wall = time.perf_counter() - started
        print(f"instability: {exc}", file=sys.stderr)
        if exc.last_good is not None:
            write_snapshot(exc.last_good, mesh, out_dir / "profile_last_good.csv")
            diag = compute_diagnostics(exc.last_good, mesh, cfg.params)
            partial = RunResult(state=exc.last_good, steps=exc.step,
                                steady_residual=float("inf"), steady_reached=False,
                                budget=None, diagnostics_history=[diag],
                                warnings=[str(exc)])
            write_summary(_build_summary(cfg, partial, wall, completed=False),
                          out_dir / "summary.json")
        return EXIT_INSTABILITY

    wall = time.perf_counter() - started
    write_snapshot(result.state, mesh, out_dir / "profile_final.csv")
    write_summary(_build_summary(cfg, result, wall, completed=True),
                  out_dir / "summary.json")
    final = result.diagnostics_history[-1]
    print(
        f"{cfg.scenario}: {result.steps} steps to t={result.state.time:.4g} "
        f"(steady={result.steady_reached}, residual={result.steady_residual:.3e})"
    )
    print(
        f"  ambipolarity_err={final.ambipolarity_err:.4f} "
        f"phi_peak={final.phi_peak:.4f} (rel err {final.phi_peak_rel_err:.2%})"
    )
    for note in result.warnings:
        print(f"  warning: {note}")
    return EXIT_OK


def _cmd_presets(args) -> int:
    for name in PRESET_NAMES:
        print(name)
    return EXIT_OK


def _cmd_check_config(args) -> int:
    try:
        cfg = _resolve_config(args.config, tuple(args.override))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(
        f"ok: scenario={cfg.scenario} n_cells={cfg.n_cells} "
        f"splitting={cfg.scheme.splitting} electron_flux={cfg.scheme.electron_flux} "
        f"ion_flux={cfg.scheme.ion_flux} electron_bc={cfg.scheme.electron_bc}"
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sheathfv",
        description="1D two-fluid plasma sheath simulator (finite volume).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configuration or bundled preset")
    p_run.add_argument("--config", required=True,
                       help="path to a config file, or a bundled preset name")
    p_run.add_argument("--override", action="append", default=[],
                       metavar="SECTION.KEY=VALUE", help="override a config value")
    p_run.set_defaults(func=_cmd_run)

    p_presets = sub.add_parser("presets", help="preset utilities")
    p_presets.add_argument("action", choices=["list"])
    p_presets.set_defaults(func=_cmd_presets)

    p_check = sub.add_parser("check-config", help="parse and validate a config")
    p_check.add_argument("--config", required=True)
    p_check.add_argument("--override", action="append", default=[],
                         metavar="SECTION.KEY=VALUE")
    p_check.set_defaults(func=_cmd_check_config)

    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
