# Copyright (c) 2026, nearfield-noise contributors
"""Heating of a trapped ion and spin-flip loss of a paramagnetic atom.

Both rates are Fermi golden rule expressions evaluated with a spectrum
provider. Sign convention: gamma_plus = gamma(+Omega) is the downward
(emission into the field) rate, gamma_minus = gamma(-Omega) the upward one,
so the heating rate out of the ground state is gamma_minus.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from nearfield.constants import HBAR
from nearfield.errors import DomainError
from nearfield.halfspace import HalfSpaceGeometry
from nearfield.providers import SpectrumProvider, force_provider
from nearfield.sweep import SweepRunner

logger = logging.getLogger(__name__)

Z_AXIS = (0.0, 0.0, 1.0)


def _unit_vector(axis, name: str) -> tuple[float, float, float]:
    vector = np.asarray(axis, dtype=float)
    if vector.shape != (3,) or abs(np.linalg.norm(vector) - 1.0) > 1e-9:
        raise DomainError(f"{name} must be a unit 3-vector, got {axis}")
    return tuple(float(v) for v in vector)


def _transverse_basis(axis) -> tuple[np.ndarray, np.ndarray]:
    axis = np.asarray(axis, dtype=float)
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    first = np.cross(axis, helper)
    first /= np.linalg.norm(first)
    return first, np.cross(axis, first)


@dataclass(frozen=True)
class IonTrapSpec:
    mass: float
    charge: float
    omega_trap: float
    geometry: HalfSpaceGeometry
    axis: tuple = Z_AXIS

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"Ion mass must be > 0, got {self.mass}")
        if not self.omega_trap > 0:
            raise DomainError(f"Trap frequency must be > 0, got {self.omega_trap}")
        object.__setattr__(self, "axis", _unit_vector(self.axis, "Trap axis"))


    def at_height(self, z: float) -> "IonTrapSpec":
        return IonTrapSpec(self.mass, self.charge, self.omega_trap, self.geometry.at_height(z), self.axis)



@dataclass(frozen=True)
class RatePair:
    gamma_plus: float
    gamma_minus: float

    def __post_init__(self):
        if self.gamma_plus < 0 or self.gamma_minus < 0:
            raise DomainError(f"Rates must be >= 0, got ({self.gamma_plus}, {self.gamma_minus})")


    @property
    def heating_rate(self) -> float:
        """Gamma_{0->1}."""
        return self.gamma_minus


    @property
    def relaxation_rate(self) -> float:
        return self.gamma_plus - self.gamma_minus



@dataclass(frozen=True)
class OscillatorState:
    rho00: float = 1.0
    mean_n: float = 0.0
    mean_b: complex = 0j

    def __post_init__(self):
        if not 0.0 <= self.rho00 <= 1.0:
            raise DomainError(f"Ground state population must lie in [0, 1], got {self.rho00}")
        if self.mean_n < 0:
            raise DomainError(f"Mean occupation must be >= 0, got {self.mean_n}")



@dataclass(frozen=True)
class SpinTrapSpec:
    mu: float
    larmor: float
    geometry: HalfSpaceGeometry
    quantization_axis: tuple = Z_AXIS
    matrix_elements: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"Magnetic moment must be > 0, got {self.mu}")
        if not self.larmor > 0:
            raise DomainError(f"Larmor frequency must be > 0, got {self.larmor}")
        object.__setattr__(self, "quantization_axis", _unit_vector(self.quantization_axis, "Quantization axis"))


    def at_height(self, z: float) -> "SpinTrapSpec":
        return SpinTrapSpec(self.mu, self.larmor, self.geometry.at_height(z), self.quantization_axis,
                            self.matrix_elements)



def ground_state_size(trap: IonTrapSpec) -> float:
    return math.sqrt(HBAR / (trap.mass * trap.omega_trap))


def heating_rates(trap: IonTrapSpec, spectrum: SpectrumProvider) -> RatePair:
    """gamma_pm = a^2 / hbar^2 * n.S_F(+-Omega).n, S_F = q^2 S_E for field providers."""
    provider = force_provider(spectrum, trap.charge)
    scale = ground_state_size(trap) ** 2 / HBAR ** 2

    gamma_plus = scale * provider(trap.omega_trap).project(trap.axis)
    gamma_minus = scale * provider(-trap.omega_trap).project(trap.axis)
    return RatePair(gamma_plus, gamma_minus)


def ground_state_lifetime(rates: RatePair) -> float:
    return 1.0 / rates.gamma_minus if rates.gamma_minus > 0 else math.inf


def evolve_oscillator(rates: RatePair, initial: OscillatorState, t: float,
                      omega_trap: float = 0.0) -> OscillatorState:
    """Closed-form solution of the population and amplitude equations.

    rho00 follows the two lowest levels only; <n> and <b> are exact for the
    whole ladder.
    """
    if t < 0:
        raise DomainError(f"Evolution time must be >= 0, got {t}")
    if t == 0:
        return initial

    gp, gm = rates.gamma_plus, rates.gamma_minus

    exchange = gp + gm
    if exchange > 0:
        rho_inf = gp / exchange
        rho00 = rho_inf + (initial.rho00 - rho_inf) * math.exp(-exchange * t)
    else:
        rho00 = initial.rho00

    g = gp - gm
    if g == 0:
        # equal rates: no restoring term, linear heating
        mean_n = initial.mean_n + gm * t
    else:
        mean_n = initial.mean_n * math.exp(-g * t) + gm * (-math.expm1(-g * t)) / g

    mean_b = initial.mean_b * np.exp(complex(-0.5 * g * t, -omega_trap * t))
    return OscillatorState(min(max(rho00, 0.0), 1.0), max(mean_n, 0.0), complex(mean_b))


def thermal_occupation(rates: RatePair) -> float:
    """Steady state gamma_- / (gamma_+ - gamma_-)."""
    if rates.gamma_plus <= rates.gamma_minus:
        return math.inf
    return rates.gamma_minus / (rates.gamma_plus - rates.gamma_minus)


def spin_flip_rate(spec: SpinTrapSpec, spectrum: SpectrumProvider) -> float:
    """Gamma = (1/hbar^2) sum <i|mu_a|f><f|mu_b|i> S_B^ab(omega_L).

    Default moment operator mu * sigma along the quantization axis, which
    reduces to mu^2 / hbar^2 times the transverse trace of S_B. Other
    transitions pass their own matrix elements <i|mu_a|f> in the spec.
    """
    if spectrum.kind != "magnetic":
        raise DomainError(f"Spin flips need a magnetic spectrum, got {spectrum.kind}")

    tensor = spectrum(spec.larmor)
    if spec.matrix_elements is None:
        return spec.mu ** 2 * tensor.transverse_trace(spec.quantization_axis) / HBAR ** 2

    elements = np.asarray(spec.matrix_elements, dtype=complex)
    if elements.shape != (3,):
        raise DomainError(f"Matrix elements must be a 3-vector, got shape {elements.shape}")
    return float(np.real(np.einsum("a,b,ab->", elements, elements.conj(), tensor.components))) / HBAR ** 2


def spin_half_matrix_elements(mu: float, axis=Z_AXIS) -> np.ndarray:
    """<up|mu sigma|down> for a spin 1/2 quantised along `axis`."""
    first, second = _transverse_basis(_unit_vector(axis, "Quantization axis"))
    return mu * (first - 1j * second)


def heating_rate_sweep(trap: IonTrapSpec, z_values: Sequence[float],
                       make_provider: Callable[[HalfSpaceGeometry], SpectrumProvider],
                       runner: SweepRunner | None = None) -> list[RatePair]:
    """heating_rates at each height, provider built per geometry."""
    def evaluate(z: float) -> RatePair:
        at_z = trap.at_height(z)
        return heating_rates(at_z, make_provider(at_z.geometry))

    return (runner or SweepRunner(1)).run(evaluate, z_values)


def spin_flip_sweep(spec: SpinTrapSpec, z_values: Sequence[float],
                    make_provider: Callable[[HalfSpaceGeometry], SpectrumProvider],
                    runner: SweepRunner | None = None) -> list[float]:
    def evaluate(z: float) -> float:
        at_z = spec.at_height(z)
        return spin_flip_rate(at_z, make_provider(at_z.geometry))

    return (runner or SweepRunner(1)).run(evaluate, z_values)
