"""Run configuration: sectioned key=value files, bundled presets, validation.

The format is INI-style with exactly four sections. Unknown sections or
keys are rejected (fail-closed), so a typo cannot silently fall back to a
default. The four bundled presets mirror the reference experiments:
hydrogen_collisionless, hydrogen_collisional, argon_collisionless,
large_domain.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from importlib import resources

from .errors import ConfigError, ParameterDomainError
from .integrators import SchemeConfig
from .params import NondimParams

PRESET_NAMES = (
    "hydrogen_collisionless",
    "hydrogen_collisional",
    "argon_collisionless",
    "large_domain",
)

_FLOAT = float
_INT = int
_STR = str


def _optional_float(text: str):
    if text.strip().lower() in ("", "none"):
        return None
    return float(text)


# section -> key -> (caster, required, default)
_SCHEMA = {
    "plasma": {
        "eps": (_FLOAT, True, None),
        "kappa": (_FLOAT, True, None),
        "chi": (_FLOAT, True, None),
        "macro_to_mfp": (_FLOAT, False, 0.0),
        "sigma_ratio": (_FLOAT, False, 0.0),
    },
    "grid": {
        "n_cells": (_INT, True, None),
    },
    "scheme": {
        "splitting": (_STR, False, "lie-modified"),
        "electron_flux": (_STR, False, "controlled-rusanov"),
        "ion_flux": (_STR, False, "scaled-fixed-hll"),
        "electron_bc": (_STR, False, "consistent"),
        "limiter": (_STR, False, "minmod"),
        "cfl_safety": (_FLOAT, False, 0.9),
        "dt_cap": (_optional_float, False, None),
        "t_final": (_FLOAT, False, 4.0),
        "steady_tol": (_FLOAT, False, 1e-6),
        "steady_window": (_INT, False, 100),
        "ion_diffusion_tuning": (_FLOAT, False, 30.0),
        "electron_diffusion_scale": (_optional_float, False, None),
    },
    "output": {
        "dir": (_STR, False, "out"),
        "snapshot_every": (_INT, False, 0),
    },
}


@dataclass
class RunConfig:
    """Validated run description: parameters, scheme, grid, and output plan."""

    params: NondimParams
    scheme: SchemeConfig
    n_cells: int
    output_dir: str
    scenario: str
    raw_text: str
    overrides: tuple = ()

    @property
    def snapshot_every(self) -> int:
        return self.scheme.snapshot_every


def _apply_overrides(parser: configparser.ConfigParser, overrides) -> None:
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} must look like section.key=value")
        target, value = item.split("=", 1)
        if "." not in target:
            raise ConfigError(f"override {item!r} must look like section.key=value")
        section, key = target.split(".", 1)
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError(f"override targets unknown key {section}.{key}")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, key, value)


def parse_config(text: str, scenario: str = "custom", overrides=()) -> RunConfig:
    """Parse and validate a config; unknown keys and bad values are errors."""
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    _apply_overrides(parser, overrides)

    values: dict[str, dict] = {}
    for section, keys in _SCHEMA.items():
        values[section] = {}
        for key, (caster, required, default) in keys.items():
            if parser.has_option(section, key):
                raw = parser.get(section, key)
                try:
                    values[section][key] = caster(raw)
                except ValueError as exc:
                    raise ConfigError(f"bad value for {section}.{key}: {raw!r}") from exc
            elif required:
                raise ConfigError(f"missing required key {section}.{key}")
            else:
                values[section][key] = default

    try:
        params = NondimParams(
            eps=values["plasma"]["eps"],
            kappa=values["plasma"]["kappa"],
            chi=values["plasma"]["chi"],
            macro_to_mfp=values["plasma"]["macro_to_mfp"],
            sigma_ratio=values["plasma"]["sigma_ratio"],
        )
    except ParameterDomainError as exc:
        raise ConfigError(f"plasma parameters invalid: {exc}") from exc

    scheme = SchemeConfig(
        splitting=values["scheme"]["splitting"],
        electron_flux=values["scheme"]["electron_flux"],
        ion_flux=values["scheme"]["ion_flux"],
        electron_bc=values["scheme"]["electron_bc"],
        limiter=values["scheme"]["limiter"],
        cfl_safety=values["scheme"]["cfl_safety"],
        dt_cap=values["scheme"]["dt_cap"],
        t_final=values["scheme"]["t_final"],
        steady_tol=values["scheme"]["steady_tol"],
        steady_window=values["scheme"]["steady_window"],
        snapshot_every=values["output"]["snapshot_every"],
        ion_diffusion_tuning=values["scheme"]["ion_diffusion_tuning"],
        electron_diffusion_scale=values["scheme"]["electron_diffusion_scale"],
    )
    scheme.validate()

    n_cells = values["grid"]["n_cells"]
    if n_cells < 4:
        raise ConfigError("grid.n_cells must be >= 4")

    return RunConfig(
        params=params,
        scheme=scheme,
        n_cells=n_cells,
        output_dir=values["output"]["dir"],
        scenario=scenario,
        raw_text=text,
        overrides=tuple(overrides),
    )


def preset_text(name: str) -> str:
    """Raw text of a bundled preset."""
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    return resources.files("sheathfv").joinpath("presets", f"{name}.ini").read_text()


def load_preset(name: str, overrides=()) -> RunConfig:
    """Parse a bundled preset by name."""
    return parse_config(preset_text(name), scenario=name, overrides=overrides)
