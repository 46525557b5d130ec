#!/usr/bin/env python3
"""
Unit tests for nearfield.ensemble

Compares the Monte Carlo jump process against the analytic transport
results and checks the sampler validation.
"""

import math
import os
import sys
import unittest

import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from nearfield.constants import AMU, HBAR
from nearfield.ensemble import gaussian_sampler, simulate_ensemble
from nearfield.errors import DomainError, SamplerError
from nearfield.sweep import SweepRunner
from nearfield.transport import (AnalyticState, CorrelationModel, TransportParams, coherence_function,
                                 gaussian_initial, momentum_diffusion_coefficient)

GAMMA = 100.0
ELL = 1e-6
MASS = 87 * AMU


def all_models():
    for family in ("lorentzian", "gaussian"):
        for dim in (1, 2):
            yield CorrelationModel(GAMMA, ELL, family, dim)


class TestEnsembleAgainstAnalytic(unittest.TestCase):
    """Test cases comparing the jump process with the analytic solution."""

    def test_coherence(self):
        """Test the coherence ratio against exp(-gamma t (1 - C(s))) within 3 standard errors."""
        s_values = (0.5 * ELL, ELL, 5.0 * ELL)
        t_grid = (1.0 / GAMMA, 5.0 / GAMMA)
        n = 10000

        for seed, model in enumerate(all_models()):
            params = TransportParams(MASS, dim=model.dim)
            run = simulate_ensemble(model, params, n, seed, t_grid, s_values=s_values)
            state = AnalyticState(gaussian_initial(0.0, 0.0, dim=model.dim), model, params)

            for i, t in enumerate(t_grid):
                for j, s in enumerate(s_values):
                    expected = coherence_function(state, s, t)
                    # 20 batch means; floor at the single-draw spread
                    sigma = max(run.estimates.coherence_stderr[i, j], math.sqrt((1.0 - abs(expected) ** 2) / n))
                    measured = run.estimates.coherence[i, j]
                    self.assertLess(abs(measured - expected), 3.0 * sigma,
                                    f"{model.family} {model.dim}D at s={s:.1e}, t={t:.1e}")

    def test_momentum_diffusion(self):
        """Test that dp^2 grows with slope 2 D_p per component."""
        t_grid = np.array([1.0, 5.0, 10.0, 20.0]) / GAMMA
        for seed, model in enumerate(all_models()):
            run = simulate_ensemble(model, TransportParams(MASS, dim=model.dim), 10000, 100 + seed, t_grid)
            slope = np.polyfit(t_grid, run.estimates.dp2, 1)[0]
            expected = 2.0 * momentum_diffusion_coefficient(model)
            self.assertAlmostEqual(slope / expected, 1.0, delta=0.1, msg=f"{model.family} {model.dim}D")

    def test_position_spreading(self):
        """Test dr^2 ~ t^3 for a cold start."""
        model = CorrelationModel(GAMMA, ELL)
        t_grid = np.array([5.0, 20.0]) / GAMMA
        run = simulate_ensemble(model, TransportParams(MASS), 10000, 3, t_grid)

        dr2 = run.estimates.dr2
        slope = math.log(dr2[1] / dr2[0]) / math.log(t_grid[1] / t_grid[0])
        self.assertAlmostEqual(slope, 3.0, delta=0.15)

    def test_ballistic_spreading(self):
        """Test dr^2 ~ t^2 without scattering."""
        model = CorrelationModel(0.0, ELL)
        t_grid = np.array([1e-3, 1e-2])
        sampler = gaussian_sampler(0.0, 10.0 * HBAR / ELL)
        run = simulate_ensemble(model, TransportParams(MASS), 2000, 4, t_grid, sampler)

        dr2 = run.estimates.dr2
        self.assertAlmostEqual(math.log(dr2[1] / dr2[0]) / math.log(10.0), 2.0, delta=0.05)
        self.assertTrue(np.allclose(run.estimates.coherence, 1.0))

    def test_mean_momentum_under_force(self):
        """Test <p> = F t within 3 standard errors."""
        force = 1e-24
        model = CorrelationModel(GAMMA, ELL)
        t_grid = np.array([2.0, 10.0]) / GAMMA
        run = simulate_ensemble(model, TransportParams(MASS, force), 5000, 5, t_grid)

        for i, t in enumerate(t_grid):
            mean = run.estimates.mean_momentum[i, 0]
            stderr = run.estimates.stderr_mean_momentum[i, 0]
            self.assertLess(abs(mean - force * t), 3.0 * stderr)

    def test_initial_slice(self):
        """Test that t = 0 gives unit coherence and zero spread for a cold start."""
        run = simulate_ensemble(CorrelationModel(GAMMA, ELL), TransportParams(MASS), 500, 6,
                                [0.0, 1.0 / GAMMA], s_values=(ELL,))
        self.assertEqual(run.estimates.coherence[0, 0], 1.0)
        self.assertEqual(run.estimates.dp2[0], 0.0)
        self.assertEqual(len(run.trajectory), 2)
        self.assertEqual(run.initial.size, 500)


class TestEnsembleDeterminism(unittest.TestCase):
    """Test cases for seeding and block scheduling."""

    def test_same_seed(self):
        """Test that equal seeds give identical ensembles on any worker count."""
        model = CorrelationModel(GAMMA, ELL, "gaussian", 2)
        params = TransportParams(MASS, dim=2)
        t_grid = [1.0 / GAMMA, 3.0 / GAMMA]

        serial = simulate_ensemble(model, params, 2500, 42, t_grid, runner=SweepRunner(1))
        parallel = simulate_ensemble(model, params, 2500, 42, t_grid, runner=SweepRunner(4))
        self.assertTrue(np.array_equal(serial.trajectory[-1].momenta, parallel.trajectory[-1].momenta))
        self.assertTrue(np.array_equal(serial.trajectory[-1].positions, parallel.trajectory[-1].positions))

        other = simulate_ensemble(model, params, 2500, 43, t_grid)
        self.assertFalse(np.array_equal(serial.trajectory[-1].momenta, other.trajectory[-1].momenta))

    def test_galilean_boost(self):
        """Test that a mean momentum shifts <p> and leaves the coherence ratio unchanged."""
        model = CorrelationModel(GAMMA, ELL)
        params = TransportParams(MASS)
        boost = 10.0 * HBAR / ELL
        t_grid = [1.0 / GAMMA]

        rest = simulate_ensemble(model, params, 1000, 8, t_grid, gaussian_sampler(0.0, 0.0), (ELL,))
        moving = simulate_ensemble(model, params, 1000, 8, t_grid, gaussian_sampler(0.0, 0.0, boost), (ELL,))

        self.assertAlmostEqual(abs(moving.estimates.coherence[0, 0] - rest.estimates.coherence[0, 0]), 0.0,
                               places=9)
        self.assertAlmostEqual(moving.estimates.dp2[0] / rest.estimates.dp2[0], 1.0, delta=1e-6)
        shift = moving.estimates.mean_momentum[0, 0] - rest.estimates.mean_momentum[0, 0]
        self.assertAlmostEqual(shift / boost, 1.0, delta=1e-9)


class TestEnsembleValidation(unittest.TestCase):
    """Test cases for argument and sampler validation."""

    def setUp(self):
        self.model = CorrelationModel(GAMMA, ELL)
        self.params = TransportParams(MASS)

    def test_invalid_arguments(self):
        """Test particle counts, dimension mismatches and time grids."""
        with self.assertRaises(DomainError):
            simulate_ensemble(self.model, self.params, 0, 1, [1.0])
        with self.assertRaises(DomainError):
            simulate_ensemble(self.model, TransportParams(MASS, dim=2), 10, 1, [1.0])
        with self.assertRaises(DomainError):
            simulate_ensemble(self.model, self.params, 10, 1, [2.0, 1.0])
        with self.assertRaises(DomainError):
            simulate_ensemble(self.model, self.params, 10, 1, [])

    def test_sampler_widths(self):
        """Test that negative widths are rejected."""
        with self.assertRaises(SamplerError):
            gaussian_sampler(-1.0, 0.0)

    def test_sampler_dimension(self):
        """Test a 1D sampler used for a 2D run."""
        model = CorrelationModel(GAMMA, ELL, dim=2)
        with self.assertRaises(SamplerError):
            simulate_ensemble(model, TransportParams(MASS, dim=2), 10, 1, [0.01], gaussian_sampler(0.0, 0.0))

    def test_not_callable(self):
        """Test that a non-callable sampler is rejected."""
        with self.assertRaises(SamplerError):
            simulate_ensemble(self.model, self.params, 10, 1, [0.01], 5)

    def test_wrong_shape(self):
        """Test a sampler returning arrays of the wrong shape."""
        def sampler(rng, count, dim):
            return np.zeros(count), np.zeros(count)

        with self.assertRaises(SamplerError):
            simulate_ensemble(self.model, self.params, 10, 1, [0.01], sampler)

    def test_non_finite(self):
        """Test a sampler returning NaN momenta."""
        def sampler(rng, count, dim):
            return np.zeros((count, dim)), np.full((count, dim), np.nan)

        with self.assertRaises(SamplerError):
            simulate_ensemble(self.model, self.params, 10, 1, [0.01], sampler)

    def test_sampler_failure(self):
        """Test that exceptions inside the sampler become SamplerError."""
        def sampler(rng, count, dim):
            raise ValueError("bad draw")

        with self.assertRaises(SamplerError):
            simulate_ensemble(self.model, self.params, 10, 1, [0.01], sampler)


if __name__ == "__main__":
    unittest.main(verbosity=2)
