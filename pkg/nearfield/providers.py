# Copyright (c) 2026, nearfield-noise contributors
"""Spectrum providers: callables omega -> SpectrumTensor.

Rates never care where a spectrum comes from; they ask a provider. The
providers hold only immutable inputs so one instance can be shared between
sweep workers.
"""

from typing import Callable

import numpy as np

from nearfield.errors import DomainError
from nearfield.halfspace import (KINDS, HalfSpaceGeometry, SpectrumTensor, blackbody_spectrum,
                                 electric_spectrum_asymptotic, magnetic_spectrum_asymptotic,
                                 johnson_noise_spectrum, exact_spectrum)
from nearfield.materials import ThermalEnvironment
from nearfield.quadrature import SPECTRUM_TOL


class SpectrumProvider():
    def __init__(self, label: str, kind: str, evaluate: Callable[[float], SpectrumTensor]):
        self._label = label
        self._kind = kind
        self._evaluate = evaluate


    @property
    def label(self) -> str:
        return self._label


    @property
    def kind(self) -> str:
        return self._kind


    def __call__(self, omega: float) -> SpectrumTensor:
        return self._evaluate(omega)


    def __repr__(self) -> str:
        return f"SpectrumProvider({self._label}, {self._kind})"



def exact_provider(geom: HalfSpaceGeometry, kind: str, include_free_space: bool = False,
                   tol: float = SPECTRUM_TOL) -> SpectrumProvider:
    if kind not in KINDS:
        raise DomainError(f"Unknown field kind '{kind}'")
    return SpectrumProvider("exact", kind,
                            lambda omega: exact_spectrum(geom, omega, kind, include_free_space, tol))


def asymptotic_provider(geom: HalfSpaceGeometry, kind: str) -> SpectrumProvider:
    if kind == "electric":
        return SpectrumProvider("asymptotic", kind, lambda omega: electric_spectrum_asymptotic(geom, omega))
    if kind == "magnetic":
        return SpectrumProvider("asymptotic", kind, lambda omega: magnetic_spectrum_asymptotic(geom, omega))
    raise DomainError(f"Unknown field kind '{kind}'")


def blackbody_provider(env: ThermalEnvironment, kind: str = "electric") -> SpectrumProvider:
    def evaluate(omega: float) -> SpectrumTensor:
        return SpectrumTensor(np.eye(3) * blackbody_spectrum(omega, env, kind), omega, kind)

    if kind not in KINDS:
        raise DomainError(f"Unknown field kind '{kind}'")
    return SpectrumProvider("blackbody", kind, evaluate)


def johnson_provider(charge: float, z: float, resistance: float, env: ThermalEnvironment) -> SpectrumProvider:
    """Isotropic force spectrum of the Nyquist formula, frequency independent."""
    value = johnson_noise_spectrum(charge, z, resistance, env)
    return SpectrumProvider("johnson", "force", lambda omega: SpectrumTensor(np.eye(3) * value, omega, "force"))


def force_provider(provider: SpectrumProvider, charge: float) -> SpectrumProvider:
    """F = qE: electric field spectrum scaled by q^2."""
    if provider.kind == "force":
        return provider
    if provider.kind != "electric":
        raise DomainError(f"A {provider.kind} spectrum does not exert a force on a charge")

    return SpectrumProvider(provider.label, "force",
                            lambda omega: provider(omega).scaled(charge * charge, "force"))


def constant_provider(components, kind: str, label: str = "constant") -> SpectrumProvider:
    """Fixed tensor at every frequency (isotropic checks, injected spectra)."""
    components = np.array(components, dtype=float)
    if components.shape != (3, 3):
        raise DomainError(f"Spectrum tensor must be 3x3, got shape {components.shape}")
    return SpectrumProvider(label, kind, lambda omega: SpectrumTensor(components, omega, kind))
