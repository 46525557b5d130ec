# Copyright (c) 2026, nearfield-noise contributors
"""Wigner function of a 1D density matrix given in mixed coordinates.

rho(r; s) = <r + s/2 | rho | r - s/2>, and

    W(r, p) = 1 / (2 pi hbar) * int ds rho(r; s) exp(-i p s / hbar)

evaluated with the trapezoidal rule on a symmetric s grid.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from nearfield.constants import HBAR
from nearfield.errors import DomainError, WignerError

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class WignerGrid:
    r_values: np.ndarray
    p_values: np.ndarray
    values: np.ndarray

    def position_marginal(self) -> np.ndarray:
        """int W dp on the p grid (trapezoidal)."""
        return np.trapezoid(self.values, self.p_values, axis=1)


    def momentum_marginal(self) -> np.ndarray:
        return np.trapezoid(self.values, self.r_values, axis=0)



def wigner_transform(rho: Callable, r_values, p_values, s_max: float, n_s: int = 401,
                     tol: float = HERMITIAN_TOL) -> WignerGrid:
    """W on the (r, p) grid; rho(r, s) must accept broadcast numpy arrays."""
    if not s_max > 0:
        raise DomainError(f"s_max must be > 0, got {s_max}")
    if n_s < 3:
        raise DomainError(f"Need at least 3 separation points, got {n_s}")
    if n_s % 2 == 0:
        n_s += 1

    r_values = np.atleast_1d(np.asarray(r_values, dtype=float))
    p_values = np.atleast_1d(np.asarray(p_values, dtype=float))
    s_values = np.linspace(-s_max, s_max, n_s)

    samples = np.asarray(rho(r_values[:, None], s_values[None, :]), dtype=complex)
    samples = np.broadcast_to(samples, (r_values.size, n_s))

    # s grid is symmetric, so reversing it maps s -> -s
    mismatch = np.max(np.abs(samples - np.conj(samples[:, ::-1])))
    scale = max(np.max(np.abs(samples)), 1e-300)
    if mismatch > tol * scale:
        raise WignerError(f"Density matrix is not Hermitian: |rho(r;s) - rho*(r;-s)| up to {mismatch:.3e}")

    weights = np.full(n_s, s_values[1] - s_values[0])
    weights[[0, -1]] *= 0.5
    kernel = np.exp(-1j * np.outer(s_values, p_values) / HBAR) * weights[:, None]

    values = (samples @ kernel) / (2.0 * math.pi * HBAR)
    return WignerGrid(r_values, p_values, values.real)


def gaussian_state(width: float, p_mean: float = 0.0) -> Callable:
    """Pure Gaussian packet with position spread `width`, momentum spread hbar / (2 width)."""
    if not width > 0:
        raise DomainError(f"Width must be > 0, got {width}")
    norm = 1.0 / math.sqrt(2.0 * math.pi * width ** 2)

    def rho(r, s):
        envelope = np.exp(-(r * r + s * s / 4.0) / (2.0 * width ** 2))
        return norm * envelope * np.exp(1j * p_mean * s / HBAR)

    return rho


def mixed_state(position_width: float, momentum_width: float) -> Callable:
    """Gaussian mixture of plane waves: momentum spread set directly by momentum_width."""
    if not position_width > 0 or not momentum_width > 0:
        raise DomainError("Widths must be > 0")
    norm = 1.0 / math.sqrt(2.0 * math.pi * position_width ** 2)

    def rho(r, s):
        return norm * np.exp(-r * r / (2.0 * position_width ** 2)
                             - momentum_width ** 2 * s * s / (2.0 * HBAR ** 2)) + 0j

    return rho
