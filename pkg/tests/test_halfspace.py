#!/usr/bin/env python3
"""
Unit tests for nearfield.halfspace

Tests the Fresnel coefficients, the closed-form near-field spectra, the
quadrature path and the lateral correlations of copper at room temperature.
"""

import math
import os
import sys
import unittest
from unittest.mock import patch

import numpy as np
from scipy.integrate import quad

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from nearfield.constants import C, ELEMENTARY_CHARGE, EPSILON_0, HBAR, K_B, TWO_PI
from nearfield.errors import DomainError, QuadratureError
from nearfield.halfspace import (HalfSpaceGeometry, SpectrumTensor, blackbody_spectrum, correlation_curve,
                                 derive_geometry_tensor, effective_resistance, electric_spectrum_asymptotic,
                                 electric_spectrum_exact, exact_spectrum, fresnel_coefficients,
                                 johnson_noise_spectrum, lateral_correlation, lateral_correlation_asymptotic,
                                 magnetic_spectrum_asymptotic, magnetic_spectrum_exact, spectrum)
from nearfield.materials import COPPER, Material, ThermalEnvironment, planck_factor, skin_depth

MHZ = TWO_PI * 1e6
ROOM = ThermalEnvironment(300.0)


def log_slope(function, z1: float, z2: float) -> float:
    return math.log(function(z2) / function(z1)) / math.log(z2 / z1)


class TestFresnel(unittest.TestCase):
    """Test cases for the reflection coefficients."""

    def test_vacuum(self):
        """Test that eps = 1 reflects nothing."""
        k0 = MHZ / C
        for u in (0.3 * k0, 3.0 * k0):
            r_s, r_p = fresnel_coefficients(u, MHZ, 1.0 + 0j)
            self.assertAlmostEqual(abs(r_s), 0.0, places=14)
            self.assertAlmostEqual(abs(r_p), 0.0, places=14)

    def test_perfect_conductor(self):
        """Test the large-eps limit (-1, +1)."""
        r_s, r_p = fresnel_coefficients(0.5 * MHZ / C, MHZ, complex(1.0, 1e12))
        self.assertAlmostEqual(r_s.real, -1.0, delta=1e-3)
        self.assertAlmostEqual(r_p.real, 1.0, delta=1e-3)

    def test_textbook_form(self):
        """Test agreement with (kz - kz') / (kz + kz') style expressions."""
        eps = complex(2.0, 1.0)
        k0 = MHZ / C
        for u in (0.3 * k0, 3.0 * k0):
            kz = np.sqrt(complex(k0 * k0 - u * u))
            kz = -kz if kz.imag < 0 else kz
            kz_metal = np.sqrt(eps * k0 * k0 - u * u)
            kz_metal = -kz_metal if kz_metal.imag < 0 else kz_metal

            r_s, r_p = fresnel_coefficients(u, MHZ, eps)
            self.assertAlmostEqual(abs(r_s - (kz - kz_metal) / (kz + kz_metal)), 0.0, places=12)
            self.assertAlmostEqual(abs(r_p - (eps * kz - kz_metal) / (eps * kz + kz_metal)), 0.0, places=12)

    def test_negative_wavenumber(self):
        """Test that u < 0 is rejected."""
        with self.assertRaises(DomainError):
            fresnel_coefficients(-1.0, MHZ, 2.0 + 0j)


class TestSpectrumTensor(unittest.TestCase):
    """Test cases for the SpectrumTensor helpers."""

    def test_projection(self):
        """Test projections and the transverse trace."""
        tensor = SpectrumTensor(np.diag([1.0, 2.0, 4.0]), MHZ, "magnetic")
        self.assertEqual(tensor.project((0.0, 0.0, 1.0)), 4.0)
        self.assertEqual(tensor.transverse_trace((0.0, 0.0, 1.0)), 3.0)
        self.assertEqual(tensor.transverse_trace((1.0, 0.0, 0.0)), 6.0)
        self.assertEqual(tensor.units, "T^2 s")
        self.assertEqual(list(tensor.diagonal()), [1.0, 2.0, 4.0])

    def test_scaled(self):
        """Test scaling into a force spectrum."""
        tensor = SpectrumTensor(np.eye(3), MHZ, "electric").scaled(4.0, "force")
        self.assertEqual(tensor.kind, "force")
        self.assertEqual(tensor.project((1.0, 0.0, 0.0)), 4.0)


class TestAsymptoticSpectra(unittest.TestCase):
    """Test cases for the closed-form near-field spectra."""

    def test_invalid_height(self):
        """Test that z <= 0 is rejected."""
        with self.assertRaises(DomainError):
            HalfSpaceGeometry(0.0)

    def test_electric_extreme_near_field(self):
        """Test the 1/z^3 slope for z in [0.1, 1] um."""
        def szz(z):
            return electric_spectrum_asymptotic(HalfSpaceGeometry(z), MHZ).components[2, 2]

        self.assertAlmostEqual(log_slope(szz, 1e-7, 1e-6), -3.0, delta=0.05)

    def test_electric_skin_regime(self):
        """Test the 1/z^2 slope for delta << z << wavelength."""
        def szz(z):
            return electric_spectrum_asymptotic(HalfSpaceGeometry(z), MHZ).components[2, 2]

        self.assertAlmostEqual(log_slope(szz, 1e-2, 1e-1), -2.0, delta=0.1)

    def test_magnetic_slopes(self):
        """Test the 1/z slope below and the 1/z^4 slope above the skin depth."""
        def szz(z):
            return magnetic_spectrum_asymptotic(HalfSpaceGeometry(z), MHZ).components[2, 2]

        self.assertAlmostEqual(log_slope(szz, 1e-7, 1e-6), -1.0, delta=0.05)
        self.assertAlmostEqual(log_slope(szz, 1e-2, 1e-1), -4.0, delta=0.1)

    def test_geometry_tensor(self):
        """Test that both closed forms carry diag(1/2, 1/2, 1) in the extreme near field."""
        geom = HalfSpaceGeometry(1e-7)
        electric = electric_spectrum_asymptotic(geom, MHZ, "extreme").components
        magnetic = magnetic_spectrum_asymptotic(geom, MHZ).components
        for tensor in (electric, magnetic):
            self.assertAlmostEqual(tensor[0, 0] / tensor[2, 2], 0.5, places=3)
            self.assertEqual(tensor[0, 0], tensor[1, 1])
            self.assertEqual(tensor[0, 1], 0.0)

    def test_branches_add_up(self):
        """Test interpolation = extreme + skin."""
        geom = HalfSpaceGeometry(5e-6)
        total = electric_spectrum_asymptotic(geom, MHZ).components
        parts = (electric_spectrum_asymptotic(geom, MHZ, "extreme").components
                 + electric_spectrum_asymptotic(geom, MHZ, "skin").components)
        self.assertTrue(np.allclose(total, parts, rtol=1e-12, atol=0.0))

        with self.assertRaises(DomainError):
            electric_spectrum_asymptotic(geom, MHZ, "other")

    def test_detailed_balance(self):
        """Test S(w) / S(-w) = exp(hbar w / kT) on a 20 point grid."""
        for z in (1e-7, 1e-6, 1e-5, 1e-4):
            geom = HalfSpaceGeometry(z)
            for frequency in (1e4, 1e5, 1e6, 1e7, 1e8):
                omega = TWO_PI * frequency
                expected = math.exp(HBAR * omega / (K_B * 300.0))
                for evaluate in (electric_spectrum_asymptotic, magnetic_spectrum_asymptotic):
                    ratio = evaluate(geom, omega).components[2, 2] / evaluate(geom, -omega).components[2, 2]
                    self.assertAlmostEqual(ratio / expected, 1.0, delta=1e-12)

    def test_magnetic_resistivity_scaling(self):
        """Test S_B ~ 1/rho in the extreme near field."""
        geom = HalfSpaceGeometry(1e-7)
        doubled = HalfSpaceGeometry(1e-7, Material("doubled", 2.0 * COPPER.rho))
        ratio = (magnetic_spectrum_asymptotic(doubled, MHZ).components[2, 2]
                 / magnetic_spectrum_asymptotic(geom, MHZ).components[2, 2])
        self.assertAlmostEqual(ratio, 0.5, delta=1e-6)

    def test_magnetic_flatness(self):
        """Test max/min <= 1.1 over 10 kHz to 10 MHz at 1 um."""
        geom = HalfSpaceGeometry(1e-6)
        values = [magnetic_spectrum_asymptotic(geom, TWO_PI * f).components[2, 2]
                  for f in np.geomspace(1e4, 1e7, 13)]
        self.assertLessEqual(max(values) / min(values), 1.1)

    def test_regime_warning(self):
        """Test the warning when z is not small against the wavelength."""
        with self.assertLogs("nearfield.halfspace", level="WARNING"):
            electric_spectrum_asymptotic(HalfSpaceGeometry(0.1), TWO_PI * 1e9)

    def test_spectrum_dispatch(self):
        """Test spectrum() path selection."""
        geom = HalfSpaceGeometry(1e-6)
        direct = magnetic_spectrum_asymptotic(geom, MHZ).components
        self.assertTrue(np.array_equal(spectrum(geom, MHZ, "magnetic", "asymptotic").components, direct))

        with self.assertRaises(DomainError):
            spectrum(geom, MHZ, "magnetic", "other")
        with self.assertRaises(DomainError):
            spectrum(geom, MHZ, "gravitational", "asymptotic")


class TestReferenceSpectra(unittest.TestCase):
    """Test cases for blackbody, Johnson noise and the effective resistance."""

    def test_blackbody_low_frequency(self):
        """Test the Rayleigh-Jeans limit kT w^2 / (3 pi eps0 c^3)."""
        omega = TWO_PI
        expected = K_B * 300.0 * omega ** 2 / (3.0 * math.pi * EPSILON_0 * C ** 3)
        self.assertAlmostEqual(blackbody_spectrum(omega, ROOM) / expected, 1.0, delta=1e-6)
        self.assertAlmostEqual(blackbody_spectrum(omega, ROOM, "magnetic") * C ** 2 / expected, 1.0, delta=1e-6)

    def test_near_field_dominates_blackbody(self):
        """Test that the near field beats free space by orders of magnitude at 1 um."""
        near = electric_spectrum_asymptotic(HalfSpaceGeometry(1e-6), MHZ).components[2, 2]
        self.assertGreater(near / blackbody_spectrum(MHZ, ROOM), 1e3)

    def test_johnson(self):
        """Test the Nyquist formula and its 1/z^2 scaling."""
        value = johnson_noise_spectrum(ELEMENTARY_CHARGE, 1e-6, 1.0, ROOM)
        self.assertAlmostEqual(value / (ELEMENTARY_CHARGE ** 2 * K_B * 300.0 / 1e-12), 1.0, delta=1e-12)
        self.assertAlmostEqual(johnson_noise_spectrum(ELEMENTARY_CHARGE, 2e-6, 1.0, ROOM) / value, 0.25,
                               delta=1e-12)
        self.assertEqual(johnson_noise_spectrum(ELEMENTARY_CHARGE, 1e-6, 0.0, ROOM), 0.0)

        with self.assertRaises(DomainError):
            johnson_noise_spectrum(ELEMENTARY_CHARGE, 0.0, 1.0, ROOM)
        with self.assertRaises(DomainError):
            johnson_noise_spectrum(ELEMENTARY_CHARGE, 1e-6, -1.0, ROOM)

    def test_effective_resistance_identity(self):
        """Test that Johnson noise with R_eff reproduces the skin branch of q^2 S_E."""
        for z, frequency in ((1e-4, 1e6), (3e-5, 3e7), (1e-3, 1e5)):
            omega = TWO_PI * frequency
            geom = HalfSpaceGeometry(z)
            skin = electric_spectrum_asymptotic(geom, omega, "skin")
            theta = planck_factor(omega, ROOM)

            force_trace = ELEMENTARY_CHARGE ** 2 * np.trace(skin.components) * K_B * 300.0 / theta
            johnson = johnson_noise_spectrum(ELEMENTARY_CHARGE, z, effective_resistance(COPPER, omega), ROOM)
            self.assertAlmostEqual(johnson / force_trace, 1.0, delta=1e-10)

    def test_effective_resistance_scaling(self):
        """Test R_eff ~ sqrt(omega) and sqrt(rho)."""
        self.assertAlmostEqual(effective_resistance(COPPER, 4 * MHZ) / effective_resistance(COPPER, MHZ), 2.0,
                               places=12)
        heavy = Material("heavy", 4.0 * COPPER.rho)
        self.assertAlmostEqual(effective_resistance(heavy, MHZ) / effective_resistance(COPPER, MHZ), 2.0,
                               places=12)


class TestExactSpectra(unittest.TestCase):
    """Test cases for the quadrature path."""

    def test_invalid_frequency(self):
        """Test that omega = 0 is rejected."""
        with self.assertRaises(DomainError):
            electric_spectrum_exact(HalfSpaceGeometry(1e-6), 0.0)

    def test_geometry_tensors(self):
        """Test that the exact path reproduces diag(1/2, 1/2, 1) well below the skin depth."""
        for kind in ("electric", "magnetic"):
            tensor = derive_geometry_tensor(kind)
            self.assertAlmostEqual(tensor[0, 0], 0.5, delta=0.01)
            self.assertAlmostEqual(tensor[1, 1], 0.5, delta=0.01)
            self.assertAlmostEqual(tensor[2, 2], 1.0, delta=0.02)

    def test_detailed_balance(self):
        """Test S(w) / S(-w) = exp(hbar w / kT) on the quadrature path."""
        for z, frequency in ((1e-6, 1e6), (1e-5, 3e7)):
            omega = TWO_PI * frequency
            geom = HalfSpaceGeometry(z)
            expected = math.exp(HBAR * omega / (K_B * 300.0))
            for kind in ("electric", "magnetic"):
                ratio = (exact_spectrum(geom, omega, kind).components[2, 2]
                         / exact_spectrum(geom, -omega, kind).components[2, 2])
                self.assertAlmostEqual(ratio / expected, 1.0, delta=1e-5)

    def test_lateral_isotropy(self):
        """Test Sxx = Syy with vanishing off-diagonal entries."""
        tensor = magnetic_spectrum_exact(HalfSpaceGeometry(1e-6), MHZ).components
        self.assertEqual(tensor[0, 0], tensor[1, 1])
        self.assertEqual(tensor[0, 2], 0.0)

    def test_electric_scaling(self):
        """Test S_E(z) / S_E(2z): 8 below and 4 well above the skin depth."""
        def ratio(z):
            near = electric_spectrum_exact(HalfSpaceGeometry(z), MHZ).diagonal()
            far = electric_spectrum_exact(HalfSpaceGeometry(2.0 * z), MHZ).diagonal()
            return near / far

        for value in ratio(1e-7):
            self.assertAlmostEqual(value / 8.0, 1.0, delta=0.02)

        delta = skin_depth(COPPER, MHZ)
        for value in ratio(50.0 * delta):
            self.assertAlmostEqual(value / 4.0, 1.0, delta=0.05)

    def test_magnetic_scaling(self):
        """Test S_B(z) / S_B(2z) -> 2 below the skin depth."""
        near = magnetic_spectrum_exact(HalfSpaceGeometry(1e-7), MHZ).components[2, 2]
        far = magnetic_spectrum_exact(HalfSpaceGeometry(2e-7), MHZ).components[2, 2]
        self.assertAlmostEqual(near / far / 2.0, 1.0, delta=0.02)

    def test_anchor_points(self):
        """Test agreement with the closed forms at 1 um (1 MHz electric, 30 MHz magnetic)."""
        geom = HalfSpaceGeometry(1e-6)
        exact = electric_spectrum_exact(geom, MHZ).diagonal()
        closed = electric_spectrum_asymptotic(geom, MHZ).diagonal()
        for ratio in exact / closed:
            self.assertAlmostEqual(ratio, 1.0, delta=0.25)

        exact = magnetic_spectrum_exact(geom, 30 * MHZ).diagonal()
        closed = magnetic_spectrum_asymptotic(geom, 30 * MHZ).diagonal()
        for ratio in exact / closed:
            self.assertAlmostEqual(ratio, 1.0, delta=0.25)

    def test_extreme_near_field_agreement(self):
        """Test exact/closed-form agreement within 25% for 0.1 um <= z <= delta/10."""
        for frequency in (1e6, 3e7, 1e8):
            omega = TWO_PI * frequency
            delta = skin_depth(COPPER, omega)
            for z in (1e-7, 0.1 * delta):
                geom = HalfSpaceGeometry(z)
                pairs = ((electric_spectrum_exact(geom, omega), electric_spectrum_asymptotic(geom, omega)),
                         (magnetic_spectrum_exact(geom, omega), magnetic_spectrum_asymptotic(geom, omega)))
                for exact, closed in pairs:
                    for ratio in exact.diagonal() / closed.diagonal():
                        self.assertAlmostEqual(ratio, 1.0, delta=0.25)

    def test_crossover(self):
        """Test the exact path at z = delta against the two closed-form branches."""
        delta = skin_depth(COPPER, MHZ)
        geom = HalfSpaceGeometry(delta)

        exact = electric_spectrum_exact(geom, MHZ).diagonal()
        extreme = electric_spectrum_asymptotic(geom, MHZ, "extreme").diagonal()
        interpolation = electric_spectrum_asymptotic(geom, MHZ).diagonal()
        self.assertTrue(np.all(exact > extreme))
        self.assertTrue(np.all(exact < interpolation))

    def test_crossover_ratios(self):
        """Test exact/closed-form ratios through the crossover, the same at 1, 30 and 100 MHz."""
        # z / delta: (electric xx, magnetic zz)
        expected = {0.1: (0.834, 0.864), 1.0 / 3.0: (0.62, 0.644), 1.0: (0.464, 0.483)}
        for frequency in (1e6, 3e7, 1e8):
            omega = TWO_PI * frequency
            delta = skin_depth(COPPER, omega)
            for fraction, (electric, magnetic) in expected.items():
                geom = HalfSpaceGeometry(fraction * delta)
                ratio = (electric_spectrum_exact(geom, omega).components[0, 0]
                         / electric_spectrum_asymptotic(geom, omega).components[0, 0])
                self.assertAlmostEqual(ratio, electric, delta=0.02, msg=f"electric {frequency:.0e} Hz z/delta={fraction:.2f}")

                ratio = (magnetic_spectrum_exact(geom, omega).components[2, 2]
                         / magnetic_spectrum_asymptotic(geom, omega).components[2, 2])
                self.assertAlmostEqual(ratio, magnetic, delta=0.02, msg=f"magnetic {frequency:.0e} Hz z/delta={fraction:.2f}")

    def test_decreasing_with_height(self):
        """Test that every diagonal component falls strictly with z on both paths."""
        heights = (1e-7, 3e-7, 1e-6, 3e-6, 1e-5, 3e-5, 1e-4)
        paths = (
            ("electric exact", lambda geom: electric_spectrum_exact(geom, MHZ)),
            ("electric asymptotic", lambda geom: electric_spectrum_asymptotic(geom, MHZ)),
            ("magnetic exact", lambda geom: magnetic_spectrum_exact(geom, MHZ)),
            ("magnetic asymptotic", lambda geom: magnetic_spectrum_asymptotic(geom, MHZ)),
        )
        for name, evaluate in paths:
            values = np.array([evaluate(HalfSpaceGeometry(z)).diagonal() for z in heights])
            self.assertTrue(np.all(np.diff(values, axis=0) < 0), name)

    def test_far_from_the_skin_depth(self):
        """Test the limits z >> delta: electric ratio near 1/sqrt(2), magnetic near 2 sqrt(2)."""
        geom = HalfSpaceGeometry(30.0 * skin_depth(COPPER, MHZ))

        exact = electric_spectrum_exact(geom, MHZ).diagonal()
        closed = electric_spectrum_asymptotic(geom, MHZ).diagonal()
        for ratio in exact / closed:
            self.assertGreater(ratio, 0.6)
            self.assertLess(ratio, 0.75)
        # the skin term is isotropic
        self.assertAlmostEqual(exact[0] / exact[2], 1.0, delta=0.1)

        ratio = (magnetic_spectrum_exact(geom, MHZ).components[2, 2]
                 / magnetic_spectrum_asymptotic(geom, MHZ).components[2, 2])
        self.assertGreater(ratio, 2.2)
        self.assertLess(ratio, 3.3)

    def test_free_space_limit(self):
        """Test that reflected plus vacuum field approaches the blackbody far from the surface."""
        omega = TWO_PI * 1e9
        wavelength = TWO_PI * C / omega
        geom = HalfSpaceGeometry(100.0 * wavelength)
        total = exact_spectrum(geom, omega, "electric", include_free_space=True).diagonal()
        for value in total:
            self.assertAlmostEqual(value / blackbody_spectrum(omega, ROOM), 1.0, delta=0.05)

    def test_propagating_window_failure(self):
        """Test that an unconverged propagating-wave integral raises QuadratureError."""
        def unconverged(function, a, b, **kwargs):
            result = quad(function, a, b, **kwargs)
            if "weight" in kwargs:
                return (result[0], 1.0) + tuple(result[2:])
            return result

        # 2 z k0 ~ 4 at 1 MHz, so the window goes through the cos/sin weights
        geom = HalfSpaceGeometry(100.0)
        with patch("nearfield.quadrature.quad", unconverged):
            with self.assertRaises(QuadratureError) as context:
                electric_spectrum_exact(geom, MHZ)
        self.assertGreaterEqual(context.exception.error_estimate, 1.0)

    def test_tolerance_reaches_propagating_window(self):
        """Test that a tighter tol changes nothing beyond the looser tolerance."""
        geom = HalfSpaceGeometry(100.0)
        loose = electric_spectrum_exact(geom, MHZ, tol=1e-6).diagonal()
        tight = electric_spectrum_exact(geom, MHZ, tol=1e-9).diagonal()
        for a, b in zip(loose, tight):
            self.assertAlmostEqual(a / b, 1.0, delta=1e-4)


class TestLateralCorrelation(unittest.TestCase):
    """Test cases for the normalised cross spectra."""

    def test_coincident_points(self):
        """Test C(0) = 1 on both paths."""
        geom = HalfSpaceGeometry(1e-6)
        self.assertEqual(list(lateral_correlation(geom, 30 * MHZ, "magnetic", 0.0)), [1.0, 1.0, 1.0])
        self.assertEqual(list(lateral_correlation_asymptotic(1e-6, 0.0, "electric")), [1.0, 1.0, 1.0])

        with self.assertRaises(DomainError):
            lateral_correlation(geom, 30 * MHZ, "magnetic", -1e-6)

    def test_asymptotic_forms(self):
        """Test a few values of the closed-form correlations."""
        z = 1e-6
        magnetic = lateral_correlation_asymptotic(z, 2.0 * math.sqrt(3.0) * z, "magnetic")
        self.assertAlmostEqual(magnetic[2], 0.5, places=12)

        electric = lateral_correlation_asymptotic(z, 2.0 * z, "electric")
        self.assertAlmostEqual(electric[0], -4.0 / 8.0 ** 1.5, places=12)
        self.assertAlmostEqual(electric[1], 8.0 ** -0.5, places=12)

    def test_asymptotic_tail(self):
        """Test the algebraic 1/s tail of the magnetic zz correlation."""
        z = 1e-6

        def czz(s):
            return lateral_correlation_asymptotic(z, s, "magnetic")[2]

        self.assertAlmostEqual(log_slope(czz, 5 * z, 50 * z), -1.0, delta=0.05)

    def test_exact_matches_closed_form_near_the_surface(self):
        """Test exact correlations against the closed forms at z << delta."""
        z = 1e-7
        geom = HalfSpaceGeometry(z)
        for kind in ("electric", "magnetic"):
            exact = lateral_correlation(geom, MHZ, kind, 2.0 * z)
            closed = lateral_correlation_asymptotic(z, 2.0 * z, kind)
            self.assertTrue(np.allclose(exact, closed, atol=0.05, rtol=0.0), f"{kind}: {exact} vs {closed}")

    def test_half_width(self):
        """Test that the magnetic zz correlation halves between 0.3 z and 5 z at 30 MHz."""
        z = 1e-6
        curve = correlation_curve(HalfSpaceGeometry(z), 30 * MHZ, "magnetic", [0.0, 0.3 * z, 5 * z, 50 * z])
        czz = curve.component("zz")

        self.assertEqual(czz[0], 1.0)
        self.assertGreater(czz[1], 0.5)
        self.assertLess(czz[2], 0.5)
        # algebraic, not exponential, tail
        self.assertLess(abs(czz[3]), abs(czz[2]))
        self.assertGreater(abs(czz[3]), 1e-8)


if __name__ == "__main__":
    unittest.main(verbosity=2)
