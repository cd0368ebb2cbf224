"""Dense complex linear algebra on small tensor-product spaces.

All operators are plain dense matrices carrying an explicit tuple of
subsystem dimensions (``factors``).  Composite basis indices are row
major, so under a split ``(da, db)`` the product state ``(i_a, i_b)``
sits at index ``i_a * db + i_b``.  This is enough bookkeeping for the
few-qubit systems targeted here without pulling in a tensor library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import ConvergenceFailure, NonHermitianInput

HERMITICITY_TOL = 1e-10
CONDITION_LIMIT = 1e8
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class Operator:
    """Square complex matrix on a tensor product of subsystems.

    Parameters
    ----------
    entries : array_like
        Square complex matrix.  Copied and frozen at construction.
    factors : tuple of int, optional
        Subsystem dimensions in tensor order.  Their product must equal
        the matrix dimension.  Defaults to the single factor ``(dim,)``.
    """

    entries: np.ndarray
    factors: tuple[int, ...] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("entries must be a square matrix")
        if not np.all(np.isfinite(entries.real)) or not np.all(np.isfinite(entries.imag)):
            raise ValueError("entries must be finite")
        dim = entries.shape[0]
        factors = self.factors
        if factors is None:
            factors = (dim,)
        factors = tuple(int(f) for f in factors)
        if any(f < 1 for f in factors) or math.prod(factors) != dim:
            raise ValueError(
                f"factors {factors} do not multiply to dimension {dim}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "Operator":
        """Hermitian adjoint with the same factor signature."""
        return Operator(self.entries.conj().T, self.factors)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ValueError("operator dimensions differ")
        return Operator(self.entries @ other.entries, self.factors)


@dataclass(frozen=True)
class Eigensystem:
    """Full eigendecomposition of a general (possibly non-normal) matrix.

    ``eigenvalues`` are sorted by descending magnitude, ties broken by
    descending real part and then descending imaginary part.  Columns of
    ``right_vectors`` are unit-norm right eigenvectors in the same order.
    Rows of ``left_vectors`` are the matching left eigenvectors, scaled so
    that ``left_vectors @ right_vectors`` is the identity whenever the
    matrix is diagonalizable; for a defective matrix the rows are only a
    best effort and ``diagonalizable`` is False.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    diagonalizable: bool

    def __post_init__(self):
        n = self.eigenvalues.shape[0]
        if self.right_vectors.shape != (n, n) or self.left_vectors.shape != (n, n):
            raise ValueError("eigenvector matrices must be square of matching size")


def identity(factors: tuple[int, ...]) -> Operator:
    """identity operator for the given factor signature."""
    return Operator(np.eye(math.prod(factors), dtype=complex), tuple(factors))


def kron(a: Operator, b: Operator) -> Operator:
    """Tensor product ``a (x) b`` with concatenated factor signatures."""
    return Operator(np.kron(a.entries, b.entries), a.factors + b.factors)


def matrix_exponential(h: Operator, t: float) -> Operator:
    """Unitary propagator ``exp(-i h t)`` of a Hermitian generator.

    The generator is diagonalized once with a Hermitian eigensolver and
    the exponential is assembled from its spectrum, which keeps the
    result unitary to machine precision for any ``t``.

    Raises
    ------
    NonHermitianInput
        If ``max |h - h^dag|`` exceeds ``HERMITICITY_TOL``.
    """
    m = h.entries
    defect = np.max(np.abs(m - m.conj().T))
    if defect > HERMITICITY_TOL:
        raise NonHermitianInput(
            f"generator deviates from Hermiticity by {defect:.3e}"
        )
    w, vecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    u = (vecs * np.exp(-1j * w * float(t))) @ vecs.conj().T
    return Operator(u, h.factors)


def eig_general(v: Operator) -> Eigensystem:
    """Eigendecomposition of a general complex matrix.

    Eigenvalues are sorted by descending magnitude with deterministic
    tie-breaking (descending real part, then descending imaginary part).
    Right eigenvectors are normalized to unit Euclidean norm.  Left
    eigenvectors are taken as the rows of the inverse of the right
    eigenvector matrix, which makes the pairing exactly biorthonormal.
    When that matrix is ill conditioned (condition number beyond
    ``CONDITION_LIMIT``, which in particular captures eigenvalues that
    collide within ``DEGENERACY_TOL`` without independent eigenvectors)
    the matrix is reported as non-diagonalizable and the left vectors
    fall back to the solver output, rescaled per pair where possible.

    Raises
    ------
    ConvergenceFailure
        If the underlying QZ/QR iteration does not converge.
    """
    try:
        w, vl, vr = scipy.linalg.eig(v.entries, left=True, right=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.lexsort((-w.imag, -w.real, -np.abs(w)))
    w = w[order]
    vr = vr[:, order]
    vl = vl[:, order]
    vr = vr / np.linalg.norm(vr, axis=0)
    cond = np.linalg.cond(vr)
    diagonalizable = bool(np.isfinite(cond) and cond <= CONDITION_LIMIT)
    if diagonalizable:
        left = np.linalg.inv(vr)
    else:
        left = vl.conj().T
        overlaps = np.einsum("ij,ji->i", left, vr)
        safe = np.abs(overlaps) > np.sqrt(np.finfo(float).eps)
        left[safe] = left[safe] / overlaps[safe, None]
    return Eigensystem(w, vr, left, diagonalizable)
