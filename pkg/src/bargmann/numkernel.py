"""Dense complex matrix kernel: chained trace products, norms, Hermitian eigensystems.

Matrices are plain ``numpy`` arrays of ``complex128`` (row-major).  Every entry
point validates shape and finiteness, so the higher layers can assume clean
inputs.  Dimensions of a few hundred are the intended operating range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import HermiticityError, NumericError, ShapeError

__all__ = [
    "EigenSystem",
    "as_complex_matrix",
    "chain_product_trace",
    "hermitian_eig",
    "hs_norm_sq",
]


def as_complex_matrix(a: "np.ndarray | Iterable") -> np.ndarray:
    """Coerce input to a square complex128 matrix, rejecting NaN/Inf entries.

    Parameters
    ----------
    a : array_like
        Square matrix data.

    Returns
    -------
    np.ndarray
        A ``(d, d)`` complex array (a copy only if coercion required one).
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ShapeError("matrix dimension must be positive")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ShapeError("matrix entries must be finite (no NaN/Inf)")
    return m


def chain_product_trace(matrices: Sequence[np.ndarray]) -> complex:
    """Trace of the ordered product ``M1 @ M2 @ ... @ Mk``.

    The product accumulates left-to-right with no reordering, so the result
    is reproducible bit-for-bit for a fixed input order.

    Parameters
    ----------
    matrices : sequence of array_like
        One or more square matrices of identical dimension.

    Returns
    -------
    complex
        ``tr(M1 M2 ... Mk)``.
    """
    ms = [as_complex_matrix(m) for m in matrices]
    if not ms:
        raise ValueError("chain_product_trace requires at least one matrix")
    dim = ms[0].shape[0]
    for i, m in enumerate(ms[1:], start=2):
        if m.shape[0] != dim:
            raise ShapeError(
                f"matrix {i} has dimension {m.shape[0]}, expected {dim}"
            )
    acc = ms[0]
    for m in ms[1:]:
        acc = acc @ m
    value = complex(np.trace(acc))
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise NumericError("trace of chained product is not finite")
    return value


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm ``tr(A† A)``.

    Equal to the sum of squared moduli of the entries; always nonnegative.
    """
    m = as_complex_matrix(a)
    return float(np.sum(np.abs(m) ** 2))


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition of a Hermitian matrix.

    Attributes
    ----------
    eigenvalues : np.ndarray
        Real eigenvalues, ascending.
    eigenvectors : np.ndarray
        Unitary matrix whose columns are the matching orthonormal
        eigenvectors, so ``V @ diag(w) @ V†`` reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(w) V†``."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(a: np.ndarray, herm_tol: float = 1e-12) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : array_like
        Square matrix; must satisfy ``max |A - A†| <= herm_tol`` entrywise.
    herm_tol : float
        Largest tolerated entrywise deviation from Hermiticity.

    Returns
    -------
    EigenSystem
        Ascending eigenvalues with orthonormal eigenvector columns.
    """
    m = as_complex_matrix(a)
    dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if dev > herm_tol:
        raise HermiticityError(
            f"matrix is not Hermitian: max |A - A†| = {dev:.3e} > {herm_tol:.3e}"
        )
    # Symmetrize the sub-tolerance residue so eigh sees an exactly Hermitian input.
    sym = (m + m.conj().T) / 2.0
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericError(f"Hermitian eigensolver failed to converge: {exc}") from exc
    return EigenSystem(eigenvalues=w, eigenvectors=v)
