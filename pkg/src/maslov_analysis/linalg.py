"""Numerical linear algebra helpers shared across modules."""

from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg

from .errors import SymmetryError, ValidationError


def symmetric_entries(matrix, tol: float) -> np.ndarray:
    """Check a square matrix for symmetry and return (M + M^T) / 2.

    Raises:
        ValidationError: If the matrix is not square
        SymmetryError: If |M - M^T| exceeds tol times the largest entry
    """
    entries = np.array(matrix, dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValidationError(
            "square_matrix", f"form must be a square matrix, got shape {entries.shape}"
        )
    if entries.size == 0:
        return entries
    scale = float(np.max(np.abs(entries)))
    asymmetry = float(np.max(np.abs(entries - entries.T)))
    if asymmetry > tol * max(scale, 1e-300):
        raise SymmetryError(
            "form_symmetry",
            f"max|M - M^T| = {asymmetry:.3e} exceeds {tol:.1e} * {scale:.3e}",
            {"asymmetry": asymmetry, "scale": scale},
        )
    return (entries + entries.T) / 2.0


def singular_values(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros(0)
    return linalg.svd(matrix, compute_uv=False)


def numerical_rank(matrix: np.ndarray, tol: float) -> int:
    """Count singular values above tol times the largest one."""
    s = singular_values(np.atleast_2d(matrix))
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def kernel_basis(matrix: np.ndarray, tol: float, scale: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of the numerical kernel.

    Singular values at or below ``tol * scale`` count as zero; ``scale``
    defaults to the largest singular value.
    """
    matrix = np.atleast_2d(matrix)
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=matrix.dtype)
    _, s, vh = linalg.svd(matrix)
    if scale is None:
        scale = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * scale))
    return vh[rank:].conj().T


def smallest_right_singular(matrix: np.ndarray, count: int) -> np.ndarray:
    """The ``count`` right singular vectors of the smallest singular values."""
    n = matrix.shape[1]
    if count <= 0:
        return np.zeros((n, 0), dtype=matrix.dtype)
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=matrix.dtype)[:, :count]
    _, _, vh = linalg.svd(matrix)
    return vh[n - count:].conj().T


def kernel_chain(
    nilpotent: np.ndarray, tol: float, scale: Optional[float] = None
) -> Tuple[List[int], List[np.ndarray]]:
    """Dimensions and bases of Ker N, Ker N^2, ... until they stabilize.

    Each step solves for Ker((I - P) N) with P the projector on the previous
    kernel, so every rank decision is taken at the scale of N itself rather
    than of a high power of N.
    """
    n = nilpotent.shape[0]
    if scale is None:
        scale = float(np.linalg.norm(nilpotent, 2)) if n else 0.0
    basis = np.zeros((n, 0), dtype=nilpotent.dtype)
    dims: List[int] = []
    bases: List[np.ndarray] = []
    while True:
        reduced = nilpotent - basis @ (basis.conj().T @ nilpotent)
        _, s, vh = linalg.svd(reduced)
        nullity = int(np.sum(s <= tol * scale))
        if dims and nullity <= dims[-1]:
            break
        basis = vh[n - nullity:].conj().T
        dims.append(nullity)
        bases.append(basis)
        if nullity == n:
            break
    return dims, bases


def g_orthogonal_complement(gram: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Orthonormal basis of {x : g(w, x) = 0 for all columns w of basis}.

    The restriction of g to span(basis) must be nondegenerate, so the
    complement has dimension n - k.
    """
    n = gram.shape[0]
    k = basis.shape[1]
    if k == 0:
        return np.eye(n)
    return smallest_right_singular(basis.T @ gram, n - k)


def restrict_operator(operator: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix of an operator on an invariant subspace in the given basis."""
    if basis.shape[1] == 0:
        return np.zeros((0, 0))
    coords, *_ = np.linalg.lstsq(basis, operator @ basis, rcond=None)
    return coords


def orthonormal_columns(frame: np.ndarray) -> np.ndarray:
    """Orthonormalize the columns of a (stack of) full-rank frame(s)."""
    q, _ = np.linalg.qr(frame)
    return q


def canonical_omega(n: int) -> np.ndarray:
    """Matrix of omega((v, a), (w, b)) = b.v - a.w on R^n x R^n."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])
