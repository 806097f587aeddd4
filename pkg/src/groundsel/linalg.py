"""Dense symmetric matrix helpers shared by the selection machinery.

Conventions used throughout the package:

* matrices are plain ``numpy`` arrays, validated and symmetrized at entry
  points via :func:`sym_matrix`;
* index sets are sorted, duplicate-free integer arrays produced by
  :func:`clean_indices`, always interpreted against an ambient dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def sym_matrix(a, *, name: str = "matrix") -> np.ndarray:
    """Validate a square array of finite reals and return (M + M.T) / 2.

    Asymmetry is folded away rather than rejected so that callers can
    pass matrices that are symmetric only up to roundoff.
    """
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return (m + m.T) / 2.0


def square_matrix(a, *, name: str = "matrix") -> np.ndarray:
    """Validate a square array of finite reals without symmetrizing."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m.copy()


def clean_indices(indices, n: int) -> np.ndarray:
    """Sorted unique index array checked against ambient dimension ``n``."""
    idx = np.asarray(list(indices), dtype=int).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"index out of range for ambient dimension {n}")
    return np.unique(idx)


def complement(indices, n: int) -> np.ndarray:
    """Indices of ``range(n)`` not present in ``indices``, sorted."""
    mask = np.ones(n, dtype=bool)
    mask[clean_indices(indices, n)] = False
    return np.flatnonzero(mask)


def submatrix(A: np.ndarray, keep) -> np.ndarray:
    """Principal submatrix on the kept index set.

    Raises on an empty kept set: eigenvalue queries on a 0x0 block are
    a caller-side decision, never an implicit one.
    """
    A = np.asarray(A, dtype=float)
    idx = clean_indices(keep, A.shape[0])
    if idx.size == 0:
        raise ValueError("empty submatrix")
    return A[np.ix_(idx, idx)]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order with the matching orthonormal basis."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "basis", np.asarray(self.basis, dtype=float))

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])


def eig_sym(A) -> Spectrum:
    """Full symmetric eigendecomposition, eigenvalues descending."""
    A = sym_matrix(A)
    vals, vecs = np.linalg.eigh(A)
    return Spectrum(vals[::-1].copy(), vecs[:, ::-1].copy())


def lambda_min(A) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    return float(np.linalg.eigvalsh(sym_matrix(A))[0])


def eps_pd(A) -> float:
    """Scale-aware tolerance under which eigenvalues count as nonnegative."""
    A = np.asarray(A, dtype=float)
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    return 1e-9 * (1.0 + scale)


def add_alpha_diag(A: np.ndarray, marked, alpha: float) -> np.ndarray:
    """A + alpha * D where D is the 0/1 diagonal indicator of ``marked``."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    A = sym_matrix(A)
    out = A.copy()
    idx = clean_indices(marked, A.shape[0])
    out[idx, idx] += alpha
    return out


def inv_trace(A) -> float:
    """Trace of the inverse of a positive definite matrix.

    Computed as the sum of reciprocal eigenvalues; raises if any
    eigenvalue is not strictly positive beyond the PD tolerance.
    """
    A = sym_matrix(A)
    vals = np.linalg.eigvalsh(A)
    if vals[0] <= eps_pd(A):
        raise ValueError("inverse trace undefined: matrix is not positive definite")
    return float(np.sum(1.0 / vals))


def log_det(A) -> float:
    """Log-determinant of a positive definite matrix via its spectrum."""
    A = sym_matrix(A)
    vals = np.linalg.eigvalsh(A)
    if vals[0] <= eps_pd(A):
        raise ValueError("log-determinant undefined: matrix is not positive definite")
    return float(np.sum(np.log(vals)))


def merikoski_bound(A) -> float:
    """Lower bound on the smallest eigenvalue of a positive definite
    matrix: ((n-1)/trace(A))^(n-1) * det(A).

    Evaluated in log space so large dimensions do not underflow the
    determinant.  For n = 1 the bound equals det(A) = A[0,0] itself.
    """
    A = sym_matrix(A)
    n = A.shape[0]
    sign, logdet = np.linalg.slogdet(A)
    if sign <= 0:
        raise ValueError("bound requires a positive definite matrix")
    if n == 1:
        return float(np.exp(logdet))
    tr = float(np.trace(A))
    if tr <= 0:
        raise ValueError("bound requires a positive trace")
    return float(np.exp((n - 1) * (np.log(n - 1.0) - np.log(tr)) + logdet))


def symmetrize_lyapunov(A, d) -> np.ndarray:
    """Return A.T @ D + D @ A for a positive diagonal weighting ``d``.

    The result is symmetric, and restriction commutes with the
    construction: the principal submatrix on any kept set equals the
    same expression built from the restricted A and d.
    """
    A = square_matrix(A, name="A")
    d = np.asarray(d, dtype=float).ravel()
    if d.size != A.shape[0]:
        raise ValueError("diagonal weight length must match matrix dimension")
    if not np.all(np.isfinite(d)) or np.any(d <= 0):
        raise ValueError("diagonal weights must be positive and finite")
    return A.T * d[np.newaxis, :] + d[:, np.newaxis] * A


def read_matrix_text(path) -> np.ndarray:
    """Read a dense matrix from whitespace-separated rows."""
    try:
        m = np.loadtxt(path, ndmin=2)
    except Exception as exc:
        raise ValueError(f"could not parse matrix file {path}: {exc}") from exc
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix file {path} is not square: shape {m.shape}")
    return m


def write_matrix_text(A: np.ndarray, path) -> None:
    np.savetxt(path, np.asarray(A, dtype=float))
