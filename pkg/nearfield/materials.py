# Copyright (c) 2026, nearfield-noise contributors
"""Ohmic response of the metal and the thermal occupation factor.

Everything here is a pure function of its arguments, SI units, angular
frequencies. Negative frequencies are allowed wherever the physics is
defined there: material response follows the reality condition
eps(-w) = conj(eps(w)), the thermal factor carries the detailed-balance
asymmetry.
"""

import logging
import math
from dataclasses import dataclass
from os import path

from nearfield.constants import C, EPSILON_0, HBAR, K_B
from nearfield.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

DEFAULT_TABLE = path.join(path.dirname(path.dirname(path.abspath(__file__))), "data", "materials.txt")
MATERIAL_MODELS = ("ohmic",)
SKIN_DEPTH_CONVENTIONS = ("compact", "standard")

# handbook value, overridable from the material table
COPPER_RHO = 1.7e-8


@dataclass(frozen=True)
class Material:
    name: str
    rho: float
    model: str = "ohmic"

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"Material '{self.name}': specific resistance must be > 0, got {self.rho}")
        if self.model not in MATERIAL_MODELS:
            raise DomainError(f"Material '{self.name}': unknown permittivity model '{self.model}'")



@dataclass(frozen=True)
class ThermalEnvironment:
    temperature: float

    def __post_init__(self):
        if not self.temperature > 0:
            raise DomainError(f"Temperature must be > 0 K, got {self.temperature}")


COPPER = Material("copper", COPPER_RHO)
ROOM_TEMPERATURE = ThermalEnvironment(300.0)


def _check_frequency(omega: float) -> None:
    if omega == 0:
        raise DomainError("Static limit omega = 0 is not defined for an ohmic conductor")


def dielectric_function(material: Material, omega: float) -> complex:
    """Relative permittivity 1 + i/(eps0 rho omega), low-frequency ohmic limit.

    Odd imaginary part in omega, so Im(eps) * omega > 0 on both sides.
    """
    _check_frequency(omega)
    return complex(1.0, 1.0 / (EPSILON_0 * material.rho * omega))


def skin_depth(material: Material, omega: float, convention: str = "compact") -> float:
    """c * sqrt(eps0 rho / |omega|).

    The "compact" convention has no factor 2 under the root; "standard" gives
    the usual sqrt(2 rho / (mu0 |omega|)), larger by sqrt(2). The crossover
    z ~ delta of the asymptotic spectra moves accordingly.
    """
    _check_frequency(omega)
    if convention not in SKIN_DEPTH_CONVENTIONS:
        raise DomainError(f"Unknown skin depth convention '{convention}'")

    factor = 2.0 if convention == "standard" else 1.0
    return C * math.sqrt(factor * EPSILON_0 * material.rho / abs(omega))


def planck_factor(omega: float, env: ThermalEnvironment) -> float:
    """Theta(w, T) = hbar w / (1 - exp(-hbar w / kT)), with Theta(0, T) = kT."""
    kt = K_B * env.temperature
    if omega == 0:
        return kt

    y = HBAR * abs(omega) / kt
    denominator = -math.expm1(-y)
    if omega > 0:
        return HBAR * omega / denominator

    # emission side written without overflow for large hbar|w|/kT
    return HBAR * abs(omega) * math.exp(-y) / denominator


def load_material_table(table_path: str) -> dict[str, Material]:
    """Read `name.rho = <float>` (and optional `name.model = <model>`) lines."""
    fields: dict[str, dict] = {}
    try:
        with open(table_path, "r") as file:
            lines = file.readlines()
    except OSError as e:
        raise ConfigError(f"Cannot read material table {table_path}: {e}") from e

    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        key, sep, value = line.partition("=")
        name, dot, field = key.strip().rpartition(".")
        if not sep or not dot or not name or field not in ("rho", "model"):
            raise ConfigError(f"{table_path}:{number}: expected 'name.rho = <float>', got '{line}'")

        value = value.strip()
        if field == "rho":
            try:
                value = float(value)
            except ValueError:
                raise ConfigError(f"{table_path}:{number}: '{value}' is not a number") from None

        fields.setdefault(name, {})[field] = value

    table = {}
    for name, entry in fields.items():
        if "rho" not in entry:
            raise ConfigError(f"{table_path}: material '{name}' has no rho entry")
        try:
            table[name] = Material(name, entry["rho"], entry.get("model", "ohmic"))
        except DomainError as e:
            raise ConfigError(f"{table_path}: {e}") from e

    logger.debug(f"[Materials] {len(table)} entries read from {table_path}")
    return table


def get_material(name: str, table: dict[str, Material] | None = None) -> Material:
    if table is None:
        table = load_material_table(DEFAULT_TABLE) if path.isfile(DEFAULT_TABLE) else {"copper": COPPER}

    if name not in table:
        raise ConfigError(f"Unknown material '{name}', known: {', '.join(sorted(table))}")
    return table[name]
