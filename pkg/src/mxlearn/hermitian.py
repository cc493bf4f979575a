"""Complex Hermitian matrix algebra.

All routines operate on square complex numpy arrays. Matrices are kept
Hermitian by construction: :func:`hermitize` symmetrizes its input via
``(A + A^H) / 2``, which also zeroes the imaginary parts of the diagonal.
Rates are in natural logarithm units (nats) throughout the package.
"""

from typing import NamedTuple

import numpy as np

from .errors import InvalidInput, NotPositiveDefinite


class EigenDecomposition(NamedTuple):
    """Spectral factorization A = U diag(w) U^H with eigenvalues ascending."""

    eigenvalues: np.ndarray  # (m,) real, ascending
    vectors: np.ndarray      # (m, m) complex unitary, columns are eigenvectors


def hermitize(a) -> np.ndarray:
    """Return the Hermitian part (A + A^H)/2 of a square complex matrix.

    Raises InvalidInput on non-square shapes or non-finite entries.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise InvalidInput("matrix has non-finite entries")
    return (a + a.conj().T) / 2


def _check_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise InvalidInput("matrix has non-finite entries")
    return a


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = _check_square(a)
    w, u = np.linalg.eigh(a)
    return EigenDecomposition(w, u)


def expm_hermitian(y) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix, U diag(exp w) U^H. PSD."""
    w, u = eig_hermitian(y)
    return hermitize((u * np.exp(w)) @ u.conj().T)


def logdet_psd(a) -> float:
    """log det of a positive definite Hermitian matrix (natural log).

    Raises NotPositiveDefinite when the smallest eigenvalue does not clear
    1e-14 times the spectral norm.
    """
    w, _ = eig_hermitian(a)
    bound = 1e-14 * max(abs(w[0]), abs(w[-1]))
    if w[0] <= bound:
        raise NotPositiveDefinite(
            f"min eigenvalue {w[0]:.3e} below positive-definiteness bound {bound:.3e}"
        )
    return float(np.sum(np.log(w)))


def norm(a, kind: str) -> float:
    """Matrix norm from the eigenvalue vector.

    kind: 'nuclear' (sum |w|), 'frobenius' (sqrt sum w^2), 'spectral' (max |w|).
    """
    a = _check_square(a)
    if kind == "frobenius":
        return float(np.linalg.norm(a))
    w = np.linalg.eigvalsh(a)
    if kind == "nuclear":
        return float(np.sum(np.abs(w)))
    if kind == "spectral":
        return float(np.max(np.abs(w)))
    raise InvalidInput(f"unknown norm kind {kind!r}")


def tangent_project(x) -> np.ndarray:
    """Orthogonal projection onto the traceless subspace: X - (tr X / m) I."""
    x = _check_square(x)
    m = x.shape[0]
    return x - (np.trace(x) / m) * np.eye(m)
