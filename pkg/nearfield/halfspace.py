# Copyright (c) 2026, nearfield-noise contributors
"""Thermal electric and magnetic near-field spectra above a flat metal.

Exact path: fluctuation-dissipation theorem applied to the reflected Green
tensor of the half-space,

    S^ii(z, w) = 2 Theta(w, T) / |w| * Im G^ii_refl(z, z; |w|)

with G written as an integral over the lateral wavenumber u. The
propagating window u < k0 is integrated over k_z, the evanescent range over
kappa = sqrt(u^2 - k0^2); both substitutions remove the 1/k_z branch point.

Asymptotic path: the closed-form near-field interpolation formulas. Their
geometry tensors are diag(1/2, 1/2, 1) for both fields, the z << delta
limit of the exact path (see derive_geometry_tensor).

The lateral direction of a two-point separation is x; tensor components
are always returned in (xx, yy, zz) order.
"""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from nearfield.constants import C, EPSILON_0, K_B, MU_0, TWO_PI
from nearfield.errors import DomainError
from nearfield.materials import (COPPER, Material, ThermalEnvironment, dielectric_function,
                                 planck_factor, skin_depth)
from nearfield.quadrature import SPECTRUM_TOL, integrate_bessel_weighted, integrate_finite, integrate_semi_infinite

logger = logging.getLogger(__name__)

KINDS = ("electric", "magnetic")
UNITS = {
    "electric": "(V/m)^2 s",
    "magnetic": "T^2 s",
    "force": "N^2 s",
}

ELECTRIC_GEOMETRY_TENSOR = np.diag([0.5, 0.5, 1.0])
MAGNETIC_GEOMETRY_TENSOR = np.diag([0.5, 0.5, 1.0])
GEOMETRY_TENSORS = {
    "electric": ELECTRIC_GEOMETRY_TENSOR,
    "magnetic": MAGNETIC_GEOMETRY_TENSOR,
}

# asymptotic formulas are trusted for z < REGIME_FRACTION * wavelength
REGIME_FRACTION = 0.1
ASYMPTOTIC_BRANCHES = ("interpolation", "extreme", "skin")


@dataclass(frozen=True)
class HalfSpaceGeometry:
    z: float
    material: Material = COPPER
    env: ThermalEnvironment = ThermalEnvironment(300.0)

    def __post_init__(self):
        if not self.z > 0:
            raise DomainError(f"Height above the surface must be > 0, got {self.z}")


    def at_height(self, z: float) -> "HalfSpaceGeometry":
        return HalfSpaceGeometry(z, self.material, self.env)



@dataclass(frozen=True)
class SpectrumTensor:
    components: np.ndarray
    omega: float
    kind: str

    @property
    def units(self) -> str:
        return UNITS[self.kind]


    def diagonal(self) -> np.ndarray:
        return np.diag(self.components).copy()


    def project(self, axis) -> float:
        """n . S . n for a unit vector n."""
        axis = np.asarray(axis, dtype=float)
        return float(axis @ self.components @ axis)


    def transverse_trace(self, axis) -> float:
        """Sum over two unit vectors orthogonal to `axis` (= Tr S - n.S.n)."""
        return float(np.trace(self.components)) - self.project(axis)


    def scaled(self, factor: float, kind: str | None = None) -> "SpectrumTensor":
        return SpectrumTensor(self.components * factor, self.omega, kind or self.kind)



@dataclass(frozen=True)
class CorrelationCurve:
    s_values: np.ndarray
    c_values: np.ndarray
    kind: str = "magnetic"

    def component(self, name: str) -> np.ndarray:
        return self.c_values[:, ("xx", "yy", "zz").index(name)]



def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise DomainError(f"Unknown field kind '{kind}', expected one of {KINDS}")


def _branch_sqrt(value: complex) -> complex:
    root = cmath.sqrt(value)
    return -root if root.imag < 0 else root


def _reflection(kz: complex, k0: float, eps: complex) -> tuple[complex, complex]:
    """(r_s, r_p) for a given vacuum longitudinal wavenumber kz.

    Each coefficient is taken from whichever of two equivalent forms keeps
    its small imaginary part free of cancellation.
    """
    kz_metal = _branch_sqrt((eps - 1.0) * k0 * k0 + kz * kz)

    total = kz + kz_metal
    r_s = (1.0 - eps) * k0 * k0 / (total * total)
    if abs(r_s) > 0.5:
        r_s = -1.0 + 2.0 * kz / total

    denominator = eps * kz + kz_metal
    r_p = (eps * kz - kz_metal) / denominator
    if abs(r_p) > 0.5:
        r_p = 1.0 - 2.0 * kz_metal / denominator

    return r_s, r_p


def fresnel_coefficients(u: float, omega: float, eps: complex) -> tuple[complex, complex]:
    """s and p reflection coefficients of the half-space for lateral wavenumber u."""
    if u < 0:
        raise DomainError(f"Transverse wavenumber must be >= 0, got {u}")

    k0 = abs(omega) / C
    kz = _branch_sqrt(complex(k0 * k0 - u * u, 0.0))
    return _reflection(kz, k0, complex(eps))


def _weights(kind: str, kz: complex, k0: float, eps: complex) -> tuple[complex, complex, complex]:
    """Angular-spectrum weights (a, b, c) of the xx/yy and zz kernels.

    xx = (a + b) J0 + (a - b) J2, yy = (a + b) J0 - (a - b) J2, zz = 2 c J0
    """
    r_s, r_p = _reflection(kz, k0, eps)
    if kind == "magnetic":
        r_s, r_p = r_p, r_s

    lateral = k0 * k0 - kz * kz
    return k0 * k0 * r_s, -kz * kz * r_p, lateral * r_p


def _prefactor(kind: str) -> float:
    return 1.0 / EPSILON_0 if kind == "electric" else MU_0


def _propagating_part(kind: str, k0: float, eps: complex, z: float, s: float, order: int, piece: str,
                      tol: float) -> float:
    """Re of the integral over kz in [0, k0] of weight * exp(2i kz z) * J_order."""
    def weight(kz: float) -> complex:
        a, b, c = _weights(kind, complex(kz, 0.0), k0, eps)
        value = {"sum": a + b, "difference": a - b, "normal": c}[piece]
        if s > 0 or order != 0:
            value *= jv(order, s * math.sqrt(max(k0 * k0 - kz * kz, 0.0)))
        return value

    return integrate_finite(weight, 0.0, k0, tol, frequency=2.0 * z).value.real


def _evanescent_part(kind: str, k0: float, eps: complex, z: float, s: float, order: int,
                     piece: str, delta: float, tol: float) -> float:
    """Integral over kappa of Im(weight(i kappa)) * exp(-2 kappa z) * J_order."""
    def envelope(kappa: float) -> float:
        a, b, c = _weights(kind, complex(0.0, kappa), k0, eps)
        value = {"sum": a + b, "difference": a - b, "normal": c}[piece]
        return value.imag * math.exp(-2.0 * kappa * z)

    decay_scale = 1.0 / (2.0 * z)
    if s == 0 and order == 0:
        result = integrate_semi_infinite(envelope, decay_scale, tol, points=(k0, 1.0 / delta))
    else:
        result = integrate_bessel_weighted(envelope, order, s, decay_scale, tol, cutoff=k0)
    return result.value


def reflected_green_tensor(geom: HalfSpaceGeometry, omega: float, kind: str, s: float = 0.0,
                           tol: float = SPECTRUM_TOL) -> np.ndarray:
    """Im of the diagonal reflected Green tensor (xx, yy, zz) at |omega|.

    Two points at height z, separated by s along x. Electric tensor maps a
    dipole moment to E, magnetic one maps a magnetic moment to B.
    """
    _check_kind(kind)
    if omega == 0:
        raise DomainError("Exact spectra need omega != 0")
    if s < 0:
        raise DomainError(f"Lateral separation must be >= 0, got {s}")

    omega = abs(omega)
    k0 = omega / C
    eps = dielectric_function(geom.material, omega)
    delta = skin_depth(geom.material, omega)

    def part(piece: str, order: int) -> float:
        if order != 0 and s == 0:
            return 0.0
        return (_propagating_part(kind, k0, eps, geom.z, s, order, piece, tol)
                + _evanescent_part(kind, k0, eps, geom.z, s, order, piece, delta, tol))

    isotropic = part("sum", 0)
    anisotropic = part("difference", 2)
    normal = part("normal", 0)

    prefactor = _prefactor(kind) / (8.0 * math.pi)
    return prefactor * np.array([isotropic + anisotropic, isotropic - anisotropic, 2.0 * normal])


def free_space_green_tensor(omega: float, kind: str) -> float:
    """Im G of vacuum at coincident points, per Cartesian component."""
    k0 = abs(omega) / C
    return _prefactor(kind) * k0 ** 3 / (6.0 * math.pi)


def exact_spectrum(geom: HalfSpaceGeometry, omega: float, kind: str, include_free_space: bool = False,
                   tol: float = SPECTRUM_TOL) -> SpectrumTensor:
    im_green = reflected_green_tensor(geom, omega, kind, tol=tol)
    if include_free_space:
        im_green = im_green + free_space_green_tensor(omega, kind)

    factor = 2.0 * planck_factor(omega, geom.env) / abs(omega)
    return SpectrumTensor(np.diag(factor * im_green), omega, kind)


def electric_spectrum_exact(geom: HalfSpaceGeometry, omega: float, include_free_space: bool = False,
                            tol: float = SPECTRUM_TOL) -> SpectrumTensor:
    return exact_spectrum(geom, omega, "electric", include_free_space, tol)


def magnetic_spectrum_exact(geom: HalfSpaceGeometry, omega: float, include_free_space: bool = False,
                            tol: float = SPECTRUM_TOL) -> SpectrumTensor:
    return exact_spectrum(geom, omega, "magnetic", include_free_space, tol)


def _warn_regime(geom: HalfSpaceGeometry, omega: float, kind: str) -> None:
    wavelength = TWO_PI * C / abs(omega)
    if geom.z >= REGIME_FRACTION * wavelength:
        logger.warning(f"[Halfspace] {kind} asymptotic formula used at z={geom.z:.3e} m, "
                       f"not small against the wavelength {wavelength:.3e} m")


def electric_spectrum_asymptotic(geom: HalfSpaceGeometry, omega: float,
                                 branch: str = "interpolation") -> SpectrumTensor:
    """Theta rho / (4 pi z^3) * (s^ij + delta^ij z / delta(w)).

    branch="extreme" keeps only the s^ij term, branch="skin" only the
    delta^ij z/delta term.
    """
    if branch not in ASYMPTOTIC_BRANCHES:
        raise DomainError(f"Unknown branch '{branch}'")
    _warn_regime(geom, omega, "electric")

    z = geom.z
    tensor = np.zeros((3, 3))
    if branch in ("interpolation", "extreme"):
        tensor += ELECTRIC_GEOMETRY_TENSOR
    if branch in ("interpolation", "skin"):
        tensor += np.eye(3) * z / skin_depth(geom.material, omega)

    prefactor = planck_factor(omega, geom.env) * geom.material.rho / (4.0 * math.pi * z ** 3)
    return SpectrumTensor(prefactor * tensor, omega, "electric")


def magnetic_spectrum_asymptotic(geom: HalfSpaceGeometry, omega: float) -> SpectrumTensor:
    """Theta s^ab / (16 pi eps0^2 c^4 rho z) / (1 + 2 z^3 / (3 delta^3))."""
    _warn_regime(geom, omega, "magnetic")

    z = geom.z
    rho = geom.material.rho
    delta = skin_depth(geom.material, omega)
    crossover = 1.0 / (1.0 + 2.0 * z ** 3 / (3.0 * delta ** 3))

    prefactor = planck_factor(omega, geom.env) / (16.0 * math.pi * EPSILON_0 ** 2 * C ** 4 * rho * z)
    return SpectrumTensor(prefactor * crossover * MAGNETIC_GEOMETRY_TENSOR, omega, "magnetic")


def spectrum(geom: HalfSpaceGeometry, omega: float, kind: str, path: str = "exact") -> SpectrumTensor:
    _check_kind(kind)
    if path == "exact":
        return exact_spectrum(geom, omega, kind, False, SPECTRUM_TOL)
    if path == "asymptotic":
        if kind == "electric":
            return electric_spectrum_asymptotic(geom, omega)
        return magnetic_spectrum_asymptotic(geom, omega)
    raise DomainError(f"Unknown spectrum path '{path}', expected exact or asymptotic")


def derive_geometry_tensor(kind: str, material: Material = COPPER, omega: float = TWO_PI * 1e6,
                           depth_ratio: float = 1e-3) -> np.ndarray:
    """s tensor read off the exact path at z = depth_ratio * delta(w)."""
    _check_kind(kind)
    env = ThermalEnvironment(300.0)
    z = depth_ratio * skin_depth(material, omega)
    exact = exact_spectrum(HalfSpaceGeometry(z, material, env), omega, kind, False, SPECTRUM_TOL)

    theta = planck_factor(omega, env)
    if kind == "electric":
        prefactor = theta * material.rho / (4.0 * math.pi * z ** 3)
    else:
        prefactor = theta / (16.0 * math.pi * EPSILON_0 ** 2 * C ** 4 * material.rho * z)
    return exact.components / prefactor


def blackbody_spectrum(omega: float, env: ThermalEnvironment, kind: str = "electric") -> float:
    """Free-space Planck spectrum per Cartesian component, hbar w^3 / (3 pi eps0 c^3 (1 - e^-x))."""
    _check_kind(kind)
    value = planck_factor(omega, env) * omega ** 2 / (3.0 * math.pi * EPSILON_0 * C ** 3)
    return value if kind == "electric" else value / C ** 2


def johnson_noise_spectrum(charge: float, z: float, resistance: float, env: ThermalEnvironment) -> float:
    """Nyquist force spectrum q^2 kT R / z^2 (high-temperature form)."""
    if not z > 0:
        raise DomainError(f"Distance must be > 0, got {z}")
    if resistance < 0:
        raise DomainError(f"Resistance must be >= 0, got {resistance}")
    return charge ** 2 * K_B * env.temperature * resistance / z ** 2


def effective_resistance(material: Material, omega: float) -> float:
    """3 rho / (4 pi delta(w)): resistance that makes the Johnson formula
    reproduce the trace of the skin branch of the electric spectrum."""
    return 3.0 * material.rho / (4.0 * math.pi * skin_depth(material, omega))


def lateral_correlation(geom: HalfSpaceGeometry, omega: float, kind: str, s: float,
                        tol: float = SPECTRUM_TOL) -> np.ndarray:
    """Normalised cross spectrum C^ii(s) = S^ii(z, s) / S^ii(z, 0), (xx, yy, zz)."""
    if s < 0:
        raise DomainError(f"Lateral separation must be >= 0, got {s}")
    if s == 0:
        return np.ones(3)

    coincident = reflected_green_tensor(geom, omega, kind, 0.0, tol)
    return reflected_green_tensor(geom, omega, kind, s, tol) / coincident


def correlation_curve(geom: HalfSpaceGeometry, omega: float, kind: str, s_values,
                      tol: float = SPECTRUM_TOL) -> CorrelationCurve:
    s_values = np.asarray(s_values, dtype=float)
    coincident = reflected_green_tensor(geom, omega, kind, 0.0, tol)

    rows = []
    for s in s_values:
        if s == 0:
            rows.append(np.ones(3))
        else:
            rows.append(reflected_green_tensor(geom, omega, kind, float(s), tol) / coincident)
    return CorrelationCurve(s_values, np.array(rows), kind)


def lateral_correlation_asymptotic(z: float, s: float, kind: str) -> np.ndarray:
    """Short-distance (z << delta) closed forms of the normalised correlations."""
    _check_kind(kind)
    if s < 0:
        raise DomainError(f"Lateral separation must be >= 0, got {s}")
    if s == 0:
        return np.ones(3)

    a = 2.0 * z
    r = math.hypot(a, s)
    if kind == "magnetic":
        j2 = (r - a) ** 2 / (s * s * r)
        return np.array([a * (1.0 / r - j2), a * (1.0 / r + j2), a / r])

    return np.array([a ** 3 * (a * a - 2.0 * s * s) / r ** 5,
                     a ** 3 / r ** 3,
                     a ** 3 * (2.0 * a * a - s * s) / (2.0 * r ** 5)])
