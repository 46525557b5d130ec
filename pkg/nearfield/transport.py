# Copyright (c) 2026, nearfield-noise contributors
"""Coherence and momentum dynamics of guided atoms in a fluctuating potential.

White-noise scattering: every event kicks the momentum by q drawn from
S_V(q) / gamma, and the double Fourier transform

    W~(k, s) = int dr dp W(r, p) exp(i k.r - i p.s / hbar)

obeys a first-order equation in s that is solved along characteristics.
At k = 0 this is the spatially averaged coherence function Gamma(s; t).

Momentum variances are per Cartesian component unless trace=True.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import k0

from nearfield.constants import HBAR
from nearfield.errors import DomainError

logger = logging.getLogger(__name__)

FAMILIES = ("lorentzian", "gaussian")
DIMENSIONS = (1, 2)

TIME_INTEGRAL_TOL = 1e-9
TIME_INTEGRAL_LIMIT = 64


@dataclass(frozen=True)
class CorrelationModel:
    gamma: float
    ell: float
    family: str = "lorentzian"
    dim: int = 1

    def __post_init__(self):
        if self.gamma < 0:
            raise DomainError(f"Scattering rate must be >= 0, got {self.gamma}")
        if not self.ell > 0:
            raise DomainError(f"Correlation length must be > 0, got {self.ell}")
        if self.family not in FAMILIES:
            raise DomainError(f"Unknown correlation family '{self.family}', expected one of {FAMILIES}")
        if self.dim not in DIMENSIONS:
            raise DomainError(f"Dimension must be 1 or 2, got {self.dim}")



@dataclass(frozen=True)
class TransportParams:
    mass: float
    force: tuple = (0.0,)
    dim: int = 1

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"Mass must be > 0, got {self.mass}")
        if self.dim not in DIMENSIONS:
            raise DomainError(f"Dimension must be 1 or 2, got {self.dim}")

        force = np.atleast_1d(np.asarray(self.force, dtype=float))
        if force.size == 1 and self.dim == 2:
            force = np.array([force[0], 0.0])
        if force.shape != (self.dim,):
            raise DomainError(f"Force must have {self.dim} components, got {self.force}")
        object.__setattr__(self, "force", tuple(float(f) for f in force))


    @property
    def force_vector(self) -> np.ndarray:
        return np.array(self.force)



@dataclass(frozen=True)
class AnalyticState:
    initial: Callable
    model: CorrelationModel
    params: TransportParams
    t: float = 0.0


def _as_vector(value, dim: int) -> np.ndarray:
    """Scalars are taken along x; vectors must match the dimension."""
    vector = np.atleast_1d(np.asarray(value, dtype=float))
    if vector.size == 1:
        padded = np.zeros(dim)
        padded[0] = vector[0]
        return padded
    if vector.shape != (dim,):
        raise DomainError(f"Expected a {dim}-vector, got {value}")
    return vector


def correlation(model: CorrelationModel, s) -> np.ndarray | float:
    """Normalised C(|s|) of the potential; both families go as 1 - s^2/l^2 near 0."""
    x2 = (np.asarray(s, dtype=float) / model.ell) ** 2
    if model.family == "lorentzian":
        value = 1.0 / (1.0 + x2)
    else:
        value = np.exp(-x2)
    return float(value) if np.ndim(value) == 0 else value


def decoherence_rate(model: CorrelationModel, s) -> np.ndarray | float:
    """gamma(s) = gamma (1 - C(s)), zero at s = 0 and saturating at gamma."""
    return model.gamma * (1.0 - correlation(model, s))


def momentum_diffusion_coefficient(model: CorrelationModel) -> float:
    return HBAR ** 2 * model.gamma / model.ell ** 2



class KickKernel():
    """Momentum transfer density S_V(q), total weight gamma."""

    def __init__(self, model: CorrelationModel):
        self._model = model
        self._scale = HBAR / model.ell


    @property
    def model(self) -> CorrelationModel:
        return self._model


    @property
    def total_rate(self) -> float:
        return self._model.gamma


    def density(self, q) -> np.ndarray | float:
        """S_V at momentum transfer |q| (per unit q^D)."""
        model = self._model
        q = np.abs(np.asarray(q, dtype=float))
        b = self._scale

        if model.family == "lorentzian":
            if model.dim == 1:
                value = model.gamma / (2.0 * b) * np.exp(-q / b)
            else:
                with np.errstate(divide="ignore"):
                    value = model.gamma / (2.0 * math.pi * b * b) * k0(q / b)
        else:
            variance = 2.0 * b * b
            value = model.gamma * (2.0 * math.pi * variance) ** (-model.dim / 2.0) * np.exp(-q * q / (2.0 * variance))

        return float(value) if np.ndim(value) == 0 else value


    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """`count` kicks of shape (count, dim) drawn from S_V / gamma."""
        model = self._model
        b = self._scale

        if model.family == "gaussian":
            return rng.normal(0.0, math.sqrt(2.0) * b, size=(count, model.dim))
        if model.dim == 1:
            return rng.laplace(0.0, b, size=(count, 1))

        # 1/(1 + s^2/l^2) = int dt exp(-t) exp(-t s^2/l^2): exponential mixture of Gaussians
        mixing = rng.exponential(1.0, size=(count, 1))
        return rng.normal(0.0, 1.0, size=(count, 2)) * np.sqrt(2.0 * mixing) * b



def kick_kernel(model: CorrelationModel) -> KickKernel:
    return KickKernel(model)


def gaussian_initial(dr0: float, dp0: float, p_mean=0.0, dim: int = 1) -> Callable:
    """W~_0(k, s) of a Gaussian phase-space distribution centred at r = 0."""
    if dr0 < 0 or dp0 < 0:
        raise DomainError(f"Initial widths must be >= 0, got ({dr0}, {dp0})")
    p_mean = _as_vector(p_mean, dim)

    def initial(k, s) -> complex:
        k = _as_vector(k, dim)
        s = _as_vector(s, dim)
        exponent = -0.5 * dr0 ** 2 * (k @ k) - 0.5 * dp0 ** 2 * (s @ s) / HBAR ** 2
        return complex(np.exp(complex(exponent, -(p_mean @ s) / HBAR)))

    return initial


def _decay_exponent(model: CorrelationModel, s: np.ndarray, drift: np.ndarray, t: float) -> float:
    """gamma * int_0^t (1 - C(|s - drift t'|)) dt'."""
    if model.gamma == 0 or t == 0:
        return 0.0
    if not np.any(drift):
        return model.gamma * t * (1.0 - correlation(model, np.linalg.norm(s)))

    value = quad(lambda tp: 1.0 - correlation(model, np.linalg.norm(s - drift * tp)), 0.0, t,
                 epsabs=0.0, epsrel=TIME_INTEGRAL_TOL, limit=TIME_INTEGRAL_LIMIT)[0]
    return model.gamma * value


def propagate_analytic(state: AnalyticState, k, s, t: float) -> complex:
    """W~(k, s; t) from W~_0 along the characteristic s -> s - hbar k t / m.

    Includes the kinematic force phase exp(i F.k t^2 / 2m), which vanishes
    on the k = 0 slice.
    """
    if t < 0:
        raise DomainError(f"Time must be >= 0, got {t}")

    dim = state.params.dim
    k = _as_vector(k, dim)
    s = _as_vector(s, dim)
    force = state.params.force_vector
    mass = state.params.mass

    drift = HBAR * k / mass
    initial = state.initial(k, s - drift * t)
    phase = -(force @ s) * t / HBAR + (force @ k) * t * t / (2.0 * mass)
    return complex(initial * np.exp(complex(-_decay_exponent(state.model, s, drift, t), phase)))


def coherence_function(state: AnalyticState, s, t: float) -> complex:
    return propagate_analytic(state, 0.0, s, t)


def momentum_variance(model: CorrelationModel, params: TransportParams, dp0_sq: float, t: float,
                      trace: bool = False) -> float:
    """dp0^2 + 2 D_p t per component (D_p = hbar^2 gamma / l^2); trace sums components."""
    if t < 0:
        raise DomainError(f"Time must be >= 0, got {t}")
    value = dp0_sq + 2.0 * momentum_diffusion_coefficient(model) * t
    return value * params.dim if trace else value


def position_variance(model: CorrelationModel, params: TransportParams, dr0_sq: float, dp0_sq: float,
                      t: float) -> float:
    """dr0^2 + dp0^2 t^2 / m^2 + 2 D_p t^3 / (3 m^2), per component.

    The t^3 term is the variance of the flight distance of a momentum
    random walk; it takes over from the ballistic term at t ~ dp0^2 / D_p.
    """
    if t < 0:
        raise DomainError(f"Time must be >= 0, got {t}")
    m2 = params.mass ** 2
    heating = 2.0 * momentum_diffusion_coefficient(model) * t ** 3 / (3.0 * m2)
    return dr0_sq + dp0_sq * t * t / m2 + heating


def coherence_length(model: CorrelationModel, t: float) -> float:
    """l / sqrt(gamma t) once gamma t >= 1.

    Before that |Gamma / Gamma_0| >= exp(-gamma t) > 1/e at every separation,
    so there is no 1/e scale and the result is inf (as for gamma = 0).
    """
    if not t > 0:
        raise DomainError(f"Time must be > 0, got {t}")
    exposure = model.gamma * t
    if exposure < 1.0:
        return math.inf
    return model.ell / math.sqrt(exposure)


def measured_coherence_length(model: CorrelationModel, t: float) -> float:
    """Separation where gamma t (1 - C(s)) = 1, i.e. |Gamma / Gamma_0| = 1/e."""
    if not t > 0:
        raise DomainError(f"Time must be > 0, got {t}")
    exposure = model.gamma * t
    if exposure <= 1.0:
        return math.inf

    def excess(s: float) -> float:
        return exposure * (1.0 - correlation(model, s)) - 1.0

    upper = model.ell
    while excess(upper) <= 0:
        upper *= 2.0
    return brentq(excess, 0.0, upper, xtol=model.ell * 1e-12, rtol=1e-12)
