# Copyright (c) 2026, nearfield-noise contributors
"""Run configuration: command-line flags, overridden by an optional YAML file.

Grids are given either as explicit lists or as "start:stop:count[:log|lin]"
strings. All quantities are SI except where the key name says otherwise
(frequencies in Hz, masses in amu, charge in units of e, moment in Bohr
magnetons).
"""

import logging
from dataclasses import dataclass, fields

import numpy as np

from nearfield.constants import TWO_PI
from nearfield.errors import ConfigError
from nearfield.settings_handler import SettingsHandler

logger = logging.getLogger(__name__)

COMMANDS = ("fig2", "fig4", "fig5", "fig6", "fig7", "spectrum", "rates", "transport")
FORMATS = ("csv", "json", "svg")


def parse_grid(value, name: str) -> tuple[float, ...]:
    if isinstance(value, str) and ":" in value:
        parts = value.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"{name}: expected 'start:stop:count[:log|lin]', got '{value}'")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ConfigError(f"{name}: cannot parse grid '{value}'") from None

        spacing = parts[3] if len(parts) == 4 else "log"
        if count < 1:
            raise ConfigError(f"{name}: grid needs at least one point")
        if spacing == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError(f"{name}: log grid needs positive bounds")
            grid = np.geomspace(start, stop, count)
        elif spacing == "lin":
            grid = np.linspace(start, stop, count)
        else:
            raise ConfigError(f"{name}: unknown spacing '{spacing}', expected log or lin")
    else:
        if isinstance(value, str):
            value = [v for v in value.split(",") if v.strip()]
        try:
            grid = [float(v) for v in np.atleast_1d(value)]
        except (TypeError, ValueError):
            raise ConfigError(f"{name}: cannot parse grid {value!r}") from None

    grid = tuple(float(v) for v in grid)
    if not grid:
        raise ConfigError(f"{name}: grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError(f"{name}: grid must be strictly increasing")
    return grid


def parse_formats(value) -> tuple[str, ...]:
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    formats = tuple(value)
    unknown = [f for f in formats if f not in FORMATS]
    if not formats or unknown:
        raise ConfigError(f"Output formats must be a non-empty subset of {FORMATS}, got {value!r}")
    return formats


def _vector(value, name: str) -> tuple[float, ...]:
    if isinstance(value, str):
        value = value.split(",")
    try:
        return tuple(float(v) for v in np.atleast_1d(value))
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: cannot parse vector {value!r}") from None


def _choice(options: tuple):
    def convert(value, name: str):
        if value not in options:
            raise ConfigError(f"{name}: expected one of {options}, got {value!r}")
        return value
    return convert


def _number(kind: type, minimum: float | None = None, strict: bool = False):
    def convert(value, name: str):
        try:
            number = kind(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name}: expected a number, got {value!r}") from None
        if minimum is not None and (number < minimum or (strict and number == minimum)):
            raise ConfigError(f"{name}: must be {'>' if strict else '>='} {minimum}, got {number}")
        return number
    return convert


def _text(value, name: str):
    if value is None:
        return None
    return str(value)


@dataclass(frozen=True)
class RunConfig:
    command: str
    out_dir: str = "results"
    formats: tuple = ("csv",)
    material: str = "copper"
    materials_file: str | None = None
    temperature: float = 300.0
    kind: str = "electric"
    path: str = "both"
    z_grid: tuple = tuple(np.geomspace(1e-7, 1e-4, 60))
    frequency_grid: tuple = tuple(np.geomspace(1e4, 1e7, 31))
    s_grid: tuple = tuple(np.linspace(0.0, 1e-5, 41))
    t_grid: tuple = tuple(np.linspace(0.0, 0.05, 11))
    z_height: float = 1e-6
    correlation_frequency: float = 3e7
    ion_mass_amu: float = 40.0
    ion_charge_e: float = 1.0
    trap_frequency: float = 1e6
    mu_bohr: float = 1.0
    larmor_frequencies: tuple = (1e6, 1e8)
    dim: int = 1
    family: str = "lorentzian"
    gamma: float = 100.0
    ell: float = 1e-6
    atom_mass_amu: float = 87.0
    force: tuple = (0.0,)
    dr0: float = 0.0
    dp0: float = 0.0
    particles: int = 10000
    seed: int = 1
    workers: int | None = None

    @property
    def omega_grid(self) -> np.ndarray:
        return TWO_PI * np.asarray(self.frequency_grid)


    def as_dict(self) -> dict:
        """Plain Python values, tuples as lists."""
        values = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = [v if isinstance(v, str) else float(v) for v in value]
            values[f.name] = value
        return values


    def replace(self, **changes) -> "RunConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return RunConfig(**values)



CONVERTERS = {
    "command": _choice(COMMANDS),
    "out_dir": _text,
    "formats": lambda value, name: parse_formats(value),
    "material": _text,
    "materials_file": _text,
    "temperature": _number(float, 0.0, strict=True),
    "kind": _choice(("electric", "magnetic")),
    "path": _choice(("exact", "asymptotic", "both")),
    "z_grid": parse_grid,
    "frequency_grid": parse_grid,
    "s_grid": parse_grid,
    "t_grid": parse_grid,
    "z_height": _number(float, 0.0, strict=True),
    "correlation_frequency": _number(float, 0.0, strict=True),
    "ion_mass_amu": _number(float, 0.0, strict=True),
    "ion_charge_e": _number(float),
    "trap_frequency": _number(float, 0.0, strict=True),
    "mu_bohr": _number(float, 0.0, strict=True),
    "larmor_frequencies": parse_grid,
    "dim": _choice((1, 2)),
    "family": _choice(("lorentzian", "gaussian")),
    "gamma": _number(float, 0.0),
    "ell": _number(float, 0.0, strict=True),
    "atom_mass_amu": _number(float, 0.0, strict=True),
    "force": _vector,
    "dr0": _number(float, 0.0),
    "dp0": _number(float, 0.0),
    "particles": _number(int, 1),
    "seed": _number(int, 0),
    "workers": lambda value, name: None if value is None else _number(int, 1)(value, name),
}


def build_config(args, config_file: str | None = None) -> RunConfig:
    """RunConfig from an argparse namespace; keys of the YAML file win."""
    values = {}
    for name in CONVERTERS:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value

    if config_file:
        overrides = SettingsHandler(config_file).read_all()
        unknown = sorted(set(overrides) - set(CONVERTERS))
        if unknown:
            raise ConfigError(f"{config_file}: unknown keys {', '.join(unknown)}")
        if overrides:
            logger.info(f"[Config] {len(overrides)} settings from {config_file}")
        values.update(overrides)

    if "command" not in values:
        raise ConfigError("No command given")

    converted = {name: CONVERTERS[name](value, name) for name, value in values.items()}
    return RunConfig(**converted)


def save_config(config: RunConfig, file_path: str) -> str:
    """Resolved config as YAML; passing it back through --config reproduces the run."""
    settings = SettingsHandler(file_path, create=True)
    for name, value in config.as_dict().items():
        settings.write_setting(value, name)
    return settings.get_path()
