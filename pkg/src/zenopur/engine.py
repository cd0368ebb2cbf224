"""Measurement-driven purification protocol on a probe + target split.

The total space is X (x) A, where X is the probe that gets measured and A
is the target to be purified.  One protocol step evolves the total state
for a time ``tau`` and then projects the probe back onto its prepared
state ``|phi>_X``.  Conditioned on always finding the probe unchanged,
the target evolves under the projected operator

    V = <phi|_X exp(-i H tau) |phi>_X,

a non-normal contraction on A whose dominant eigenvector is the state the
protocol selects.  ``run_protocol`` iterates the exact density-matrix
recursion; ``spectral_report`` and ``efficiency_check`` analyze V itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionMismatch,
    NoDominantEigenvalue,
    ZeroProbability,
)
from .linalg import Eigensystem, Operator, eig_general, matrix_exponential

P0_FLOOR = 1e-14
SURVIVAL_FLOOR = 1e-300
DOMINANCE_TOL = 1e-9
STATE_TOL = 1e-10


@dataclass(frozen=True)
class ProbeSpec:
    """Probe state and the dimension split of the total space.

    ``phi_x`` is the pure probe state on the X factor (unit norm within
    1e-12), ``dim_x`` and ``dim_a`` the probe and target dimensions.
    """

    phi_x: np.ndarray
    dim_x: int
    dim_a: int

    def __post_init__(self):
        phi = np.array(self.phi_x, dtype=complex).reshape(-1)
        if self.dim_x < 1 or self.dim_a < 1:
            raise ValueError("dimensions must be positive")
        if phi.shape[0] != self.dim_x:
            raise DimensionMismatch(
                f"probe vector has length {phi.shape[0]}, expected {self.dim_x}"
            )
        norm = np.linalg.norm(phi)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"probe state norm {norm!r} is not 1")
        phi.setflags(write=False)
        object.__setattr__(self, "phi_x", phi)

    @property
    def dim_total(self) -> int:
        return self.dim_x * self.dim_a


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix wrapper.

    Construction checks Hermiticity, positive semidefiniteness and unit
    trace, all within ``STATE_TOL``.
    """

    op: Operator

    def __post_init__(self):
        m = self.op.entries
        if np.max(np.abs(m - m.conj().T)) > STATE_TOL:
            raise ValueError("density matrix is not Hermitian")
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        if evals.min() < -STATE_TOL:
            raise ValueError(
                f"density matrix has negative eigenvalue {evals.min():.3e}"
            )
        if abs(np.trace(m).real - 1.0) > STATE_TOL:
            raise ValueError(f"density matrix trace {np.trace(m)!r} is not 1")

    @classmethod
    def pure(cls, vec: np.ndarray, factors: tuple[int, ...] = None) -> "DensityMatrix":
        """Density matrix |vec><vec| of a normalized pure state."""
        v = np.asarray(vec, dtype=complex).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        v = v / n
        return cls(Operator(np.outer(v, v.conj()), factors))

    @property
    def entries(self) -> np.ndarray:
        return self.op.entries

    @property
    def dim(self) -> int:
        return self.op.dim


@dataclass(frozen=True)
class SpectralReport:
    """Spectral diagnostics of a projected evolution operator.

    ``dominant_index`` points at the top of the magnitude-sorted spectrum
    and is None only when the whole spectrum vanishes.  ``dominant_unique``
    is False whenever the two largest magnitudes agree within
    ``DOMINANCE_TOL``.  ``asymptotic_state`` is the unit right eigenvector
    of the dominant eigenvalue (present only when dominance is unique),
    and ``yield_coefficient`` is <v0| rho |v0> with the matching left
    eigenvector, the prefactor of the large-N success probability
    P(N) ~ |lambda0|^(2N) <v0|rho|v0> (present when an initial state was
    supplied).
    """

    eigensystem: Eigensystem
    dominant_index: int | None
    dominant_unique: bool
    gap_ratio: float
    asymptotic_state: np.ndarray | None = None
    yield_coefficient: float | None = None


@dataclass(frozen=True)
class ProtocolStep:
    """State of the protocol after n successful probe measurements."""

    n: int
    state: DensityMatrix
    success_prob: float
    fidelity: float | None = None


@dataclass(frozen=True)
class ProtocolTrace:
    """Protocol history for n = 0 .. n_steps, step 0 being the prepared state."""

    steps: list[ProtocolStep] = field(default_factory=list)

    def success_probabilities(self) -> np.ndarray:
        return np.array([s.success_prob for s in self.steps])

    def fidelities(self) -> np.ndarray:
        """Fidelity column as floats, NaN where no target was supplied."""
        return np.array(
            [math.nan if s.fidelity is None else s.fidelity for s in self.steps]
        )


def build_projector(probe: ProbeSpec) -> Operator:
    """Rank-``dim_a`` projector |phi><phi|_X (x) 1_A on the total space."""
    phi = probe.phi_x
    p_x = np.outer(phi, phi.conj())
    full = np.kron(p_x, np.eye(probe.dim_a, dtype=complex))
    return Operator(full, (probe.dim_x, probe.dim_a))


def _target_factors(factors: tuple[int, ...], dim_x: int, dim_a: int) -> tuple[int, ...]:
    """Factor signature for the A space, reusing the tail of the total split."""
    prefix = 1
    idx = 0
    while idx < len(factors) and prefix < dim_x:
        prefix *= factors[idx]
        idx += 1
    rest = factors[idx:]
    if prefix == dim_x and math.prod(rest) == dim_a and rest:
        return rest
    return (dim_a,)


def projected_evolution(h_tot: Operator, tau: float, probe: ProbeSpec) -> Operator:
    """Projected evolution operator V = <phi|_X exp(-i H tau) |phi>_X.

    V acts on the target space A alone and is a contraction: every
    singular value is at most 1, so eigenvalue magnitudes never exceed 1.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if h_tot.dim != probe.dim_total:
        raise DimensionMismatch(
            f"Hamiltonian dimension {h_tot.dim} does not match probe split "
            f"{probe.dim_x} x {probe.dim_a}"
        )
    u = matrix_exponential(h_tot, tau)
    blocks = u.entries.reshape(probe.dim_x, probe.dim_a, probe.dim_x, probe.dim_a)
    phi = probe.phi_x
    v = np.einsum("i,iajb,j->ab", phi.conj(), blocks, phi)
    return Operator(v, _target_factors(h_tot.factors, probe.dim_x, probe.dim_a))


def condition_on_probe(
    rho_tot: DensityMatrix, probe: ProbeSpec
) -> tuple[DensityMatrix, float]:
    """Target state conditioned on finding the probe in |phi>_X.

    Returns the normalized conditional state on A and the probability
    p0 = Tr[<phi|rho_tot|phi>] of that outcome at step zero.

    Raises
    ------
    ZeroProbability
        If p0 falls below ``P0_FLOOR``.
    """
    if rho_tot.dim != probe.dim_total:
        raise DimensionMismatch(
            f"state dimension {rho_tot.dim} does not match probe split "
            f"{probe.dim_x} x {probe.dim_a}"
        )
    blocks = rho_tot.entries.reshape(
        probe.dim_x, probe.dim_a, probe.dim_x, probe.dim_a
    )
    phi = probe.phi_x
    raw = np.einsum("i,iajb,j->ab", phi.conj(), blocks, phi)
    p0 = float(np.trace(raw).real)
    if p0 < P0_FLOOR:
        raise ZeroProbability(f"probe outcome probability {p0:.3e} vanishes")
    factors = _target_factors(rho_tot.op.factors, probe.dim_x, probe.dim_a)
    raw = (raw + raw.conj().T) / 2.0
    return DensityMatrix(Operator(raw / p0, factors)), p0


def fidelity(rho: DensityMatrix, target: np.ndarray) -> float:
    """Fidelity <target| rho |target> against a normalized pure state."""
    t = np.asarray(target, dtype=complex).reshape(-1)
    if t.shape[0] != rho.dim:
        raise DimensionMismatch(
            f"target has length {t.shape[0]}, state has dimension {rho.dim}"
        )
    norm = np.linalg.norm(t)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"target norm {norm!r} is not 1")
    val = float(np.real(t.conj() @ rho.entries @ t))
    return min(max(val, 0.0), 1.0)


def run_protocol(
    rho_tot: DensityMatrix,
    h_tot: Operator,
    tau: float,
    probe: ProbeSpec,
    n_steps: int,
    target: np.ndarray | None = None,
) -> ProtocolTrace:
    """Iterate the conditional protocol for n = 0 .. n_steps.

    Step n holds the target state after n successful probe measurements,

        rho_A(n) = V^n rho_A V^dag^n / Tr[...],

    and the cumulative success probability P(n) = p0 * Tr[V^n rho_A V^dag^n],
    with the step-zero convention P(0) = p0.  The success probability is
    non-increasing in n.

    Raises
    ------
    ZeroProbability
        If the initial probe outcome has vanishing probability, or the
        survival probability underflows ``SURVIVAL_FLOOR``.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    v_op = projected_evolution(h_tot, tau, probe)
    rho_a, p0 = condition_on_probe(rho_tot, probe)
    v = v_op.entries
    factors = v_op.factors
    sigma = rho_a.entries.copy()
    steps = []
    for n in range(n_steps + 1):
        if n > 0:
            sigma = v @ sigma @ v.conj().T
            sigma = (sigma + sigma.conj().T) / 2.0
        q = float(np.trace(sigma).real)
        p_n = p0 * q
        if p_n < SURVIVAL_FLOOR:
            raise ZeroProbability(
                f"survival probability underflowed at step {n}"
            )
        state = DensityMatrix(Operator(sigma / q, factors))
        fid = None if target is None else fidelity(state, target)
        steps.append(ProtocolStep(n=n, state=state, success_prob=p_n, fidelity=fid))
    return ProtocolTrace(steps)


def spectral_report(
    v: Operator, rho_a: DensityMatrix | None = None
) -> SpectralReport:
    """Spectral diagnostics of V: dominance, gap ratio, asymptotic state.

    The gap ratio is |lambda1| / |lambda0| for the two largest magnitudes
    (0 for a one-dimensional space, NaN if the whole spectrum vanishes).
    Purification is efficient when |lambda0| is close to 1 and the gap
    ratio is well below 1.
    """
    if rho_a is not None and rho_a.dim != v.dim:
        raise DimensionMismatch(
            f"state dimension {rho_a.dim} does not match operator {v.dim}"
        )
    es = eig_general(v)
    mags = np.abs(es.eigenvalues)
    if mags[0] == 0.0:
        return SpectralReport(
            eigensystem=es,
            dominant_index=None,
            dominant_unique=False,
            gap_ratio=math.nan,
        )
    if mags.shape[0] == 1:
        unique = True
        gap = 0.0
    else:
        unique = bool(mags[0] - mags[1] > DOMINANCE_TOL)
        gap = float(mags[1] / mags[0])
    asymptotic = es.right_vectors[:, 0] if unique else None
    coeff = None
    if rho_a is not None:
        l0 = es.left_vectors[0]
        coeff = float(np.real(l0 @ rho_a.entries @ l0.conj()))
    return SpectralReport(
        eigensystem=es,
        dominant_index=0,
        dominant_unique=unique,
        gap_ratio=gap,
        asymptotic_state=asymptotic,
        yield_coefficient=coeff,
    )


def efficiency_check(report: SpectralReport) -> tuple[bool, float]:
    """Whether the dominant eigenvalue sits on the unit circle, plus the gap.

    Returns ``(unit_modulus, gap_ratio)`` where ``unit_modulus`` is True
    iff ``| |lambda0| - 1 | <= DOMINANCE_TOL``.

    Raises
    ------
    NoDominantEigenvalue
        If the report carries no dominant eigenvalue at all.
    """
    if report.dominant_index is None:
        raise NoDominantEigenvalue("spectrum has no nonzero eigenvalue")
    lam0 = report.eigensystem.eigenvalues[report.dominant_index]
    unit = bool(abs(abs(lam0) - 1.0) <= DOMINANCE_TOL)
    return unit, report.gap_ratio
