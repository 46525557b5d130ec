# Copyright (c) 2026, nearfield-noise contributors
"""Integration on (0, inf) for the transverse-wavenumber integrals of the
half-space spectra.

Panels on (0, K * decay_scale] are integrated with QUADPACK (scipy quad)
and bisected until every panel carries its share of the tolerance; the
remainder is mapped onto (0, 1] with u = K * decay_scale / t. Bessel
weighted integrals are summed panel by panel between the asymptotic zeros
u = k * pi / s and the partial sums are accelerated with Wynn's epsilon
algorithm.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import jv

from nearfield.errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
SPECTRUM_TOL = 1e-6
TAIL_FACTOR = 20.0

QUAD_LIMIT = 200
MAX_BISECTIONS = 12
MAX_EVALUATIONS = 2_000_000
MAX_BESSEL_PANELS = 20_000
QUIET_PANELS = 8


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    error_estimate: float
    evaluations: int


def _quad(function: Callable, a: float, b: float, tol: float, abs_floor: float, **kwargs) -> tuple[float, float, int]:
    result = quad(function, a, b, epsabs=abs_floor, epsrel=tol, limit=QUAD_LIMIT, full_output=1, **kwargs)
    value, error, info = result[0], result[1], result[2]
    return value, abs(error), int(info.get("neval", 0)) if isinstance(info, dict) else 0


def _is_complex(integrand: Callable, point: float) -> bool:
    return bool(np.iscomplexobj(integrand(point)))


def _tail_function(integrand: Callable, start: float) -> Callable:
    def mapped(t: float) -> float:
        if t <= 0.0:
            return 0.0
        u = start / t
        if not math.isfinite(u):
            # t underflows towards 0; the integrand has decayed
            return 0.0
        value = integrand(u)
        return value * (u / t) if value != 0 else 0.0
    return mapped


def _panel_edges(upper: float, decay_scale: float, points) -> list[float]:
    # geometric panels resolve features well below the decay scale
    edges = {0.0, upper}
    edge = decay_scale
    while edge > decay_scale * 2.0**-12:
        edges.add(edge)
        edge /= 2.0

    edge = decay_scale
    while edge < upper:
        edges.add(edge)
        edge *= 2.0

    for point in points or ():
        if 0.0 < point < upper:
            edges.add(float(point))

    return sorted(e for e in edges if e <= upper)


def _integrate_real(integrand: Callable, decay_scale: float, tol: float, abs_floor: float,
                    points, tail_factor: float) -> QuadratureResult:
    upper = tail_factor * decay_scale
    edges = _panel_edges(upper, decay_scale, points)
    panels = [(a, b, 0) for a, b in zip(edges[:-1], edges[1:])]

    tail_value, tail_error, evaluations = _quad(_tail_function(integrand, upper), 0.0, 1.0, tol, abs_floor)
    if not math.isfinite(tail_value):
        raise QuadratureError("Integrand is not finite on the tail", tail_value, tail_error, evaluations)
    results: dict[tuple[float, float], tuple[float, float]] = {}

    while True:
        for a, b, _ in panels:
            if (a, b) not in results:
                value, error, neval = _quad(integrand, a, b, tol, abs_floor)
                results[(a, b)] = (value, error)
                evaluations += neval

        total = tail_value + sum(results[(a, b)][0] for a, b, _ in panels)
        error = tail_error + sum(results[(a, b)][1] for a, b, _ in panels)
        # relative to the L1 norm so sign changes do not stall refinement
        magnitude = abs(tail_value) + sum(abs(results[(a, b)][0]) for a, b, _ in panels)
        target = max(tol * magnitude, abs_floor)
        if error <= target:
            return QuadratureResult(total, error, max(evaluations, 1))

        share = target / (len(panels) + 1)
        refined = []
        split = False
        for a, b, depth in panels:
            if results[(a, b)][1] > share and depth < MAX_BISECTIONS:
                middle = 0.5 * (a + b)
                refined += [(a, middle, depth + 1), (middle, b, depth + 1)]
                split = True
            else:
                refined.append((a, b, depth))

        if not split or evaluations > MAX_EVALUATIONS:
            raise QuadratureError("Semi-infinite integral did not converge", total, error, evaluations)
        panels = refined


def integrate_semi_infinite(integrand: Callable, decay_scale: float, tol: float = DEFAULT_TOL,
                            abs_floor: float = 0.0, points=None,
                            tail_factor: float = TAIL_FACTOR) -> QuadratureResult:
    """Integral of `integrand` over (0, inf).

    decay_scale is the wavenumber over which the integrand dies off (1/(2z)
    for the exp(-2uz) kernels); points are interior features worth a panel
    edge (1/delta, the light cone, ...). Complex integrands are split into
    real and imaginary parts.
    """
    if not decay_scale > 0:
        raise DomainError(f"decay_scale must be > 0, got {decay_scale}")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")

    if not _is_complex(integrand, decay_scale):
        return _integrate_real(integrand, decay_scale, tol, abs_floor, points, tail_factor)

    real = _integrate_real(lambda u: integrand(u).real, decay_scale, tol, abs_floor, points, tail_factor)
    imag = _integrate_real(lambda u: integrand(u).imag, decay_scale, tol, abs_floor, points, tail_factor)
    return QuadratureResult(complex(real.value, imag.value),
                            math.hypot(real.error_estimate, imag.error_estimate),
                            real.evaluations + imag.evaluations)


def _checked_quad(function: Callable, a: float, b: float, tol: float, abs_floor: float,
                  **kwargs) -> tuple[float, float, int]:
    value, error, evaluations = _quad(function, a, b, tol, abs_floor, **kwargs)
    if not math.isfinite(value) or error > max(tol * abs(value), abs_floor):
        raise QuadratureError(f"Integral over [{a:.3e}, {b:.3e}] did not converge", value, error, evaluations)
    return value, error, evaluations


def integrate_finite(integrand: Callable, a: float, b: float, tol: float = DEFAULT_TOL,
                     abs_floor: float = 0.0, frequency: float = 0.0) -> QuadratureResult:
    """Integral of integrand(x) * exp(i * frequency * x) over [a, b].

    Many oscillations go through QUADPACK's cos/sin weights. The result is
    complex unless the integrand is real and frequency is 0. Accuracy is
    judged against the scale (b - a) * max|integrand| as well as the value,
    so integrals that cancel to nearly zero do not stall.
    """
    if not b > a:
        raise DomainError(f"Need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")

    samples = [abs(integrand(x)) for x in (a, 0.5 * (a + b), b)]
    if not all(math.isfinite(sample) for sample in samples):
        raise QuadratureError("Integrand is not finite on the interval", math.nan, math.inf, 3)
    abs_floor = max(abs_floor, tol * (b - a) * max(samples))

    if abs(frequency) * (b - a) < 1e-3:
        def phased(x: float) -> complex:
            return complex(integrand(x)) * complex(math.cos(frequency * x), math.sin(frequency * x))

        if frequency == 0 and not _is_complex(integrand, a):
            value, error, evaluations = _checked_quad(integrand, a, b, tol, abs_floor)
            return QuadratureResult(value, error, max(evaluations, 1))

        real = _checked_quad(lambda x: phased(x).real, a, b, tol, abs_floor)
        imag = _checked_quad(lambda x: phased(x).imag, a, b, tol, abs_floor)
    else:
        # Re/Im of (f_r + i f_i)(cos + i sin)
        def f_real(x: float) -> float:
            return complex(integrand(x)).real

        def f_imag(x: float) -> float:
            return complex(integrand(x)).imag

        parts = [_checked_quad(function, a, b, tol, abs_floor, weight=weight, wvar=frequency)
                 for function, weight in ((f_real, "cos"), (f_imag, "sin"), (f_real, "sin"), (f_imag, "cos"))]
        real = (parts[0][0] - parts[1][0], parts[0][1] + parts[1][1], parts[0][2] + parts[1][2])
        imag = (parts[2][0] + parts[3][0], parts[2][1] + parts[3][1], parts[2][2] + parts[3][2])

    return QuadratureResult(complex(real[0], imag[0]), math.hypot(real[1], imag[1]),
                            max(real[2] + imag[2], 1))


def wynn_epsilon(partial_sums) -> float:
    """Limit estimate of a sequence of partial sums (even epsilon columns)."""
    current = np.asarray(partial_sums, dtype=float)
    best = current[-1]
    previous = np.zeros(len(current) + 1)

    for column in range(1, len(partial_sums)):
        difference = current[1:] - current[:-1]
        if np.any(np.abs(difference) <= 1e-300):
            break
        following = previous[1:len(current)] + 1.0 / difference
        previous, current = current, following
        if column % 2 == 0 and np.isfinite(current[-1]):
            best = current[-1]

    return float(best)


def _bessel_real(envelope: Callable, order: int, s: float, decay_scale: float, tol: float,
                 abs_floor: float, cutoff: float, tail_factor: float) -> QuadratureResult:
    def weighted(u: float) -> float:
        return envelope(u) * jv(order, s * math.sqrt(u * u + cutoff * cutoff))

    spacing = math.pi / s
    upper = tail_factor * decay_scale
    if upper < 2.0 * spacing:
        # less than two oscillations where the envelope lives
        zeros = [spacing * k for k in range(1, 3)]
        return _integrate_real(weighted, decay_scale, tol, abs_floor, zeros, tail_factor)

    partial_sums = []
    total, error, magnitude, evaluations = 0.0, 0.0, 0.0, 0
    quiet = 0
    value = 0.0
    for k in range(MAX_BESSEL_PANELS):
        value, panel_error, neval = _quad(weighted, k * spacing, (k + 1) * spacing, tol, abs_floor)
        total += value
        error += panel_error
        magnitude += abs(value)
        evaluations += neval
        partial_sums.append(total)

        if (k + 1) * spacing < upper:
            continue
        quiet = quiet + 1 if abs(value) <= max(tol * magnitude, abs_floor) else 0
        if quiet >= QUIET_PANELS:
            break
    else:
        raise QuadratureError("Bessel-weighted integral: panel budget exhausted", total, error, evaluations)

    extrapolated = wynn_epsilon(partial_sums[-2 * QUIET_PANELS:])
    if not math.isfinite(extrapolated) or abs(extrapolated - total) > abs(value) * QUIET_PANELS:
        extrapolated = total
    error += abs(extrapolated - total) + abs(value)
    if error > max(tol * magnitude, abs_floor) * 10.0:
        raise QuadratureError("Bessel-weighted integral did not converge", extrapolated, error, evaluations)

    return QuadratureResult(extrapolated, error, max(evaluations, 1))


def integrate_bessel_weighted(envelope: Callable, order: int, s: float, decay_scale: float,
                              tol: float = DEFAULT_TOL, abs_floor: float = 0.0, cutoff: float = 0.0,
                              tail_factor: float = TAIL_FACTOR) -> QuadratureResult:
    """Integral of envelope(u) * J_order(s * sqrt(u^2 + cutoff^2)) over (0, inf).

    cutoff = 0 is the plain Hankel-type integral; a nonzero cutoff lets
    evanescent integrals run over the decay constant kappa while the Bessel
    function still sees the lateral wavenumber sqrt(kappa^2 + k0^2).
    """
    if order not in (0, 1, 2):
        raise DomainError(f"Bessel order must be 0, 1 or 2, got {order}")
    if s < 0:
        raise DomainError(f"Lateral separation must be >= 0, got {s}")

    if s == 0:
        if order == 0:
            return integrate_semi_infinite(envelope, decay_scale, tol, abs_floor, tail_factor=tail_factor)
        return QuadratureResult(0.0, 0.0, 1)

    if not decay_scale > 0:
        raise DomainError(f"decay_scale must be > 0, got {decay_scale}")

    if not _is_complex(envelope, decay_scale):
        return _bessel_real(envelope, order, s, decay_scale, tol, abs_floor, cutoff, tail_factor)

    real = _bessel_real(lambda u: envelope(u).real, order, s, decay_scale, tol, abs_floor, cutoff, tail_factor)
    imag = _bessel_real(lambda u: envelope(u).imag, order, s, decay_scale, tol, abs_floor, cutoff, tail_factor)
    return QuadratureResult(complex(real.value, imag.value),
                            math.hypot(real.error_estimate, imag.error_estimate),
                            real.evaluations + imag.evaluations)
