"""Shot-level Monte Carlo simulation of the measurement protocol.

Each shot draws a pure state from the spectral ensemble of the initial
density matrix, then alternates the unitary evolution exp(-i H tau) with
a binary Born-rule measurement of the probe projector.  A shot that ever
finds the probe outside |phi>_X is discarded on the spot and never
evolved again.  Surviving counts per step estimate the exact success
probability P(n), and the surviving target states average into an
estimate of the exact conditional state.

Every shot owns an independent RNG stream derived from (seed, shot
index), so results are reproducible bit for bit and independent of
execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import DensityMatrix, ProbeSpec, _target_factors
from .exceptions import DimensionMismatch
from .linalg import Operator, matrix_exponential


@dataclass(frozen=True)
class ShotConfig:
    """Shot count, RNG seed (64-bit unsigned) and number of protocol steps."""

    shots: int
    seed: int
    n_steps: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.n_steps < 0:
            raise ValueError("n_steps must be nonnegative")


@dataclass(frozen=True)
class ShotSummary:
    """Survivor counts per step, their frequencies, and the averaged
    target state over the trajectories that survived every measurement
    (None when no shot survived)."""

    successes_at_step: np.ndarray
    frequency: np.ndarray
    final_state_estimate: DensityMatrix | None


def _shot_uniforms(seed: int, shots: int, per_shot: int) -> np.ndarray:
    draws = np.empty((shots, per_shot))
    for i in range(shots):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        draws[i] = rng.random(per_shot)
    return draws


def run_shots(
    rho_tot: DensityMatrix,
    h_tot: Operator,
    tau: float,
    probe: ProbeSpec,
    cfg: ShotConfig,
) -> ShotSummary:
    """Run ``cfg.shots`` independent trajectories of the protocol.

    Step n of the returned summary counts the shots whose first n+1
    measurements (the conditioning one at n = 0 included) all found the
    probe in |phi>_X, so ``frequency[n]`` estimates the exact P(n).
    """
    if rho_tot.dim != probe.dim_total or h_tot.dim != probe.dim_total:
        raise DimensionMismatch(
            f"state/Hamiltonian dimensions ({rho_tot.dim}, {h_tot.dim}) do not "
            f"match probe split {probe.dim_x} x {probe.dim_a}"
        )
    u = matrix_exponential(h_tot, tau).entries
    weights, ensemble = np.linalg.eigh(rho_tot.entries)
    weights = np.clip(weights, 0.0, None)
    cum = np.cumsum(weights / weights.sum())
    cum[-1] = 1.0

    phi = probe.phi_x
    dim_x, dim_a = probe.dim_x, probe.dim_a
    shots, n_steps = cfg.shots, cfg.n_steps
    draws = _shot_uniforms(cfg.seed, shots, n_steps + 2)

    idx = np.searchsorted(cum, draws[:, 0], side="right")
    psi = ensemble.T[idx]
    alive = np.arange(shots)
    successes = np.zeros(n_steps + 1, dtype=np.int64)
    chi = None
    for n in range(n_steps + 1):
        if n > 0:
            full = np.einsum("x,sa->sxa", phi, chi).reshape(alive.size, -1)
            psi = full @ u.T
        amp = np.einsum(
            "x,sxa->sa", phi.conj(), psi.reshape(alive.size, dim_x, dim_a)
        )
        prob = np.einsum("sa,sa->s", amp, amp.conj()).real
        ok = draws[alive, n + 1] < prob
        alive = alive[ok]
        successes[n] = alive.size
        if alive.size == 0:
            break
        chi = amp[ok] / np.sqrt(prob[ok])[:, None]

    frequency = successes / float(shots)
    estimate = None
    if successes[n_steps] > 0:
        mean = np.einsum("sa,sb->ab", chi, chi.conj()) / chi.shape[0]
        mean = (mean + mean.conj().T) / 2.0
        factors = _target_factors(h_tot.factors, dim_x, dim_a)
        estimate = DensityMatrix(Operator(mean, factors))
    successes.setflags(write=False)
    frequency.setflags(write=False)
    return ShotSummary(successes, frequency, estimate)
