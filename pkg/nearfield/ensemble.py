# Copyright (c) 2026, nearfield-noise contributors
"""Monte Carlo jump process for the white-noise transport equation.

Each particle flies ballistically under the external force; scattering
events arrive as a Poisson process of rate gamma and kick the momentum by
q ~ S_V(q) / gamma. Particles are simulated in fixed blocks, each block
with its own child of SeedSequence(seed), so results do not depend on how
blocks are scheduled.

The coherence estimator averages exp(-i (p(t) - p(0)).s / hbar) over
particles. Given the initial state the kicks are independent of it, so its
expectation is exactly Gamma(s; t) / Gamma_0(s) of the k = 0 solution.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from nearfield.constants import HBAR
from nearfield.errors import DomainError, SamplerError
from nearfield.sweep import SweepRunner
from nearfield.transport import CorrelationModel, TransportParams, kick_kernel

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1000
BATCHES = 20


@dataclass
class Ensemble:
    positions: np.ndarray
    momenta: np.ndarray
    rng_seed: int
    time: float = 0.0

    @property
    def size(self) -> int:
        return self.positions.shape[0]



@dataclass(frozen=True)
class EnsembleEstimates:
    t_grid: np.ndarray
    s_values: np.ndarray
    coherence: np.ndarray
    coherence_stderr: np.ndarray
    dp2: np.ndarray
    dr2: np.ndarray
    stderr_dp2: np.ndarray
    stderr_dr2: np.ndarray
    mean_momentum: np.ndarray
    stderr_mean_momentum: np.ndarray



@dataclass(frozen=True)
class EnsembleRun:
    initial: Ensemble
    trajectory: list
    estimates: EnsembleEstimates


def gaussian_sampler(dr0: float, dp0: float, p_mean=0.0, dim: int = 1) -> Callable:
    """Independent normal positions (width dr0) and momenta (width dp0 around p_mean)."""
    if dr0 < 0 or dp0 < 0:
        raise SamplerError(f"Initial widths must be >= 0, got ({dr0}, {dp0})")
    p_mean = np.broadcast_to(np.asarray(p_mean, dtype=float), (dim,)).copy()

    def sample(rng: np.random.Generator, count: int, dimension: int) -> tuple[np.ndarray, np.ndarray]:
        if dimension != dim:
            raise SamplerError(f"Sampler built for dim={dim}, asked for dim={dimension}")
        positions = rng.normal(0.0, 1.0, size=(count, dim)) * dr0
        momenta = p_mean + rng.normal(0.0, 1.0, size=(count, dim)) * dp0
        return positions, momenta

    return sample


def _draw_initial(sampler: Callable, rng: np.random.Generator, count: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    if not callable(sampler):
        raise SamplerError(f"Initial sampler must be callable, got {type(sampler).__name__}")

    try:
        positions, momenta = sampler(rng, count, dim)
    except SamplerError:
        raise
    except (TypeError, ValueError) as e:
        raise SamplerError(f"Initial sampler failed: {e}") from e

    positions = np.asarray(positions, dtype=float)
    momenta = np.asarray(momenta, dtype=float)
    for name, array in (("positions", positions), ("momenta", momenta)):
        if array.shape != (count, dim):
            raise SamplerError(f"Initial sampler returned {name} of shape {array.shape}, expected {(count, dim)}")
        if not np.all(np.isfinite(array)):
            raise SamplerError(f"Initial sampler returned non-finite {name}")
    return positions, momenta


def _simulate_block(model: CorrelationModel, params: TransportParams, sampler: Callable,
                    seed: np.random.SeedSequence, count: int, t_grid: np.ndarray) -> tuple:
    """Positions and momenta of one block at every grid time, shape (T, count, dim)."""
    rng = np.random.default_rng(seed)
    dim = params.dim
    mass = params.mass
    force = params.force_vector

    x0, p0 = _draw_initial(sampler, rng, count, dim)

    t_max = float(t_grid[-1])
    jumps = rng.poisson(model.gamma * t_max, size=count) if model.gamma > 0 else np.zeros(count, dtype=int)
    owners = np.repeat(np.arange(count), jumps)
    jump_times = rng.uniform(0.0, t_max, size=owners.size)
    kicks = kick_kernel(model).sample(rng, owners.size)

    positions = np.empty((len(t_grid), count, dim))
    momenta = np.empty((len(t_grid), count, dim))
    for i, t in enumerate(t_grid):
        happened = jump_times <= t
        who = owners[happened]
        lever = (t - jump_times[happened]) / mass

        kick_sum = np.empty((count, dim))
        kick_flight = np.empty((count, dim))
        for d in range(dim):
            kick_sum[:, d] = np.bincount(who, weights=kicks[happened, d], minlength=count)
            kick_flight[:, d] = np.bincount(who, weights=kicks[happened, d] * lever, minlength=count)

        momenta[i] = p0 + force * t + kick_sum
        positions[i] = x0 + p0 * t / mass + force * t * t / (2.0 * mass) + kick_flight

    return x0, p0, positions, momenta


def _batch_stderr(per_particle: np.ndarray, batches: int, statistic: Callable) -> np.ndarray:
    """Standard error of `statistic` from contiguous batch estimates."""
    if batches < 2:
        return np.full(statistic(per_particle).shape, np.nan)
    estimates = np.array([statistic(chunk) for chunk in np.array_split(per_particle, batches)])
    return estimates.std(axis=0, ddof=1) / math.sqrt(batches)


def _component_variance(values: np.ndarray) -> np.ndarray:
    """Per-component sample variance averaged over components, values (N, dim)."""
    return np.asarray(np.var(values, axis=0, ddof=1).mean() if values.shape[0] > 1 else 0.0)


def estimate(initial: Ensemble, trajectory: Sequence[Ensemble], s_values, batches: int = BATCHES) -> EnsembleEstimates:
    """Coherence ratio, momentum and position variances with batch-means errors.

    Separations are taken along x.
    """
    s_values = np.atleast_1d(np.asarray(s_values, dtype=float))
    batches = min(batches, initial.size)
    t_grid = np.array([snapshot.time for snapshot in trajectory])

    coherence, coherence_stderr = [], []
    dp2, dr2, stderr_dp2, stderr_dr2 = [], [], [], []
    mean_p, stderr_p = [], []
    for snapshot in trajectory:
        transfer = snapshot.momenta[:, 0] - initial.momenta[:, 0]
        phases = np.exp(-1j * np.outer(transfer, s_values) / HBAR)

        coherence.append(phases.mean(axis=0))
        real = _batch_stderr(phases.real, batches, lambda chunk: chunk.mean(axis=0))
        imag = _batch_stderr(phases.imag, batches, lambda chunk: chunk.mean(axis=0))
        coherence_stderr.append(np.hypot(real, imag))

        dp2.append(_component_variance(snapshot.momenta))
        dr2.append(_component_variance(snapshot.positions))
        stderr_dp2.append(_batch_stderr(snapshot.momenta, batches, _component_variance))
        stderr_dr2.append(_batch_stderr(snapshot.positions, batches, _component_variance))

        mean_p.append(snapshot.momenta.mean(axis=0))
        stderr_p.append(_batch_stderr(snapshot.momenta, batches, lambda chunk: chunk.mean(axis=0)))

    return EnsembleEstimates(t_grid, s_values, np.array(coherence), np.array(coherence_stderr),
                             np.array(dp2, dtype=float), np.array(dr2, dtype=float),
                             np.array(stderr_dp2, dtype=float), np.array(stderr_dr2, dtype=float),
                             np.array(mean_p), np.array(stderr_p))


def simulate_ensemble(model: CorrelationModel, params: TransportParams, n_particles: int, seed: int,
                      t_grid, initial_sampler: Callable | None = None, s_values=(0.0,),
                      batches: int = BATCHES, runner: SweepRunner | None = None) -> EnsembleRun:
    if n_particles < 1:
        raise DomainError(f"Need at least one particle, got {n_particles}")
    if model.dim != params.dim:
        raise DomainError(f"Model is {model.dim}D but transport parameters are {params.dim}D")

    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t_grid.size == 0 or t_grid[0] < 0 or np.any(np.diff(t_grid) <= 0):
        raise DomainError("Time grid must be non-empty, non-negative and strictly increasing")

    sampler = initial_sampler or gaussian_sampler(0.0, 0.0, dim=params.dim)
    sizes = [BLOCK_SIZE] * (n_particles // BLOCK_SIZE)
    if n_particles % BLOCK_SIZE:
        sizes.append(n_particles % BLOCK_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    logger.debug(f"[Ensemble] {n_particles} particles in {len(sizes)} blocks, "
                 f"{model.family} {model.dim}D, gamma={model.gamma:.3e}")

    blocks = (runner or SweepRunner(1)).run(
        lambda job: _simulate_block(model, params, sampler, job[0], job[1], t_grid),
        list(zip(seeds, sizes)))

    x0 = np.concatenate([block[0] for block in blocks])
    p0 = np.concatenate([block[1] for block in blocks])
    positions = np.concatenate([block[2] for block in blocks], axis=1)
    momenta = np.concatenate([block[3] for block in blocks], axis=1)

    initial = Ensemble(x0, p0, seed, 0.0)
    trajectory = [Ensemble(positions[i], momenta[i], seed, float(t)) for i, t in enumerate(t_grid)]
    return EnsembleRun(initial, trajectory, estimate(initial, trajectory, s_values, batches))
