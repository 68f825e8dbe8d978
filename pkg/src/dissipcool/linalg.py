"""Dense complex linear algebra kernels shared by every module.

Operators are plain ``numpy.ndarray`` of dtype complex128 in row-major logical
indexing; ``ComplexMatrix`` is an alias for readability in signatures.  All
functions are pure and safe to call concurrently.

Conventions:
    * Hermitian eigenvalues are returned ascending, so index 0 is the ground
      state.
    * Eigenvector global phases are fixed by making the largest-magnitude
      component real and positive, for reproducibility.  Within a degenerate
      eigenvalue block the basis choice is still arbitrary; callers must not
      depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian

ComplexMatrix = np.ndarray

# Invariant tolerances for density matrices.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-9


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product, (a ⊗ b)[i*p+k, j*q+l] = a[i,j] * b[k,l] for b of shape (p, q)."""
    return np.kron(np.asarray(a), np.asarray(b))


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def hermiticity_defect(a: ComplexMatrix) -> float:
    """Largest entrywise deviation |a - a†|."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def require_hermitian(a: ComplexMatrix, tol: float = HERMITICITY_TOL) -> ComplexMatrix:
    """Return ``a`` as a complex array, raising NotHermitian beyond ``tol``.

    The tolerance is scaled by max(1, largest |entry|) so that matrices with
    large energy scales are not rejected for pure roundoff.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if hermiticity_defect(a) > tol * scale:
        raise NotHermitian(
            f"matrix is not Hermitian: max |a - a†| = {hermiticity_defect(a):.3e}"
        )
    return a


def fix_phases(vectors: ComplexMatrix) -> ComplexMatrix:
    """Rotate each column so its largest-magnitude component is real positive."""
    v = np.array(vectors, dtype=complex, copy=True)
    for k in range(v.shape[1]):
        idx = int(np.argmax(np.abs(v[:, k])))
        pivot = v[idx, k]
        if abs(pivot) > 0:
            v[:, k] *= np.conj(pivot) / abs(pivot)
    return v


def hermitian_eigen(a: ComplexMatrix, tol: float = HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues real ascending and
    eigenvectors as orthonormal, phase-fixed columns satisfying
    ``a @ v_k = w_k * v_k``.

    Raises:
        NotHermitian: if ``a`` deviates from its adjoint beyond ``tol``.
    """
    a = require_hermitian(a, tol)
    w, v = np.linalg.eigh(a)
    return w, fix_phases(v)


def smallest_singular_pairs(a: ComplexMatrix, count: int):
    """The ``count`` smallest singular values of a square matrix, ascending.

    Returns a list of ``(sigma, v)`` pairs where ``v`` is the unit-norm right
    singular vector, so ``norm(a @ v) == sigma``.  Used to extract (near-)null
    vectors of Liouvillians.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not 1 <= count <= a.shape[0]:
        raise ValueError(f"count must be in [1, {a.shape[0]}], got {count}")
    _, s, vh = np.linalg.svd(a)
    pairs = []
    for k in range(count):
        idx = a.shape[0] - 1 - k
        pairs.append((float(s[idx]), vh[idx].conj()))
    return pairs


@dataclass(frozen=True)
class DensityMatrix:
    """Validated Hermitian, unit-trace, positive-semidefinite state.

    Construction checks the three invariants (hermiticity 1e-10, trace 1e-9,
    smallest eigenvalue >= -1e-9) and raises ValueError on violation.
    """

    matrix: ComplexMatrix

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
        defect = hermiticity_defect(m)
        if defect > HERMITICITY_TOL:
            raise ValueError(f"density matrix not Hermitian: defect {defect:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} deviates from 1 beyond {TRACE_TOL}")
        w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        if w[0] < -POSITIVITY_TOL:
            raise ValueError(f"density matrix not positive semidefinite: min eig {w[0]:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, ket: np.ndarray) -> "DensityMatrix":
        """|psi><psi| from a (not necessarily normalized) state vector."""
        ket = np.asarray(ket, dtype=complex).ravel()
        nrm = np.linalg.norm(ket)
        if nrm == 0:
            raise ValueError("cannot build a state from the zero vector")
        ket = ket / nrm
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def expectation(self, op: ComplexMatrix) -> complex:
        return complex(np.trace(np.asarray(op) @ self.matrix))
