"""Symmetric bilinear forms: inertia, signature and restriction."""

from typing import Sequence, Union

import numpy as np
from scipy import linalg

from .config import DEFAULT_TOLERANCES
from .errors import ValidationError
from .linalg import numerical_rank, symmetric_entries
from .models import BilinearForm, Inertia

FormLike = Union[BilinearForm, np.ndarray, Sequence[Sequence[float]]]


def as_form(matrix: FormLike, tol: float = DEFAULT_TOLERANCES.tol_sym) -> BilinearForm:
    """Check a matrix for squareness and symmetry and store it symmetrized.

    Args:
        matrix: Square matrix or an existing BilinearForm
        tol: Relative symmetry tolerance

    Returns:
        BilinearForm with entries (M + M^T) / 2

    Raises:
        ValidationError: If the matrix is not square
        SymmetryError: If |M - M^T| exceeds tol times the largest entry
    """
    if isinstance(matrix, BilinearForm):
        return matrix
    entries = symmetric_entries(matrix, tol)
    if entries.shape[0] == 0:
        raise ValidationError("square_matrix", "form must be a non-empty square matrix")
    return BilinearForm(entries)


def inertia(form: FormLike, tol: float = DEFAULT_TOLERANCES.tol_inertia) -> Inertia:
    """Sylvester inertia (n_plus, n_minus, nullity).

    Eigenvalues within tol times the largest absolute eigenvalue count as
    zero. When every eigenvalue is below tol the scale is taken as 1.
    """
    form = as_form(form)
    eigenvalues = linalg.eigvalsh(form.entries)
    scale = float(np.max(np.abs(eigenvalues)))
    if scale < tol:
        scale = 1.0
    band = tol * scale
    return Inertia(
        n_plus=int(np.sum(eigenvalues > band)),
        n_minus=int(np.sum(eigenvalues < -band)),
        nullity=int(np.sum(np.abs(eigenvalues) <= band)),
    )


def signature(form: FormLike, tol: float = DEFAULT_TOLERANCES.tol_inertia) -> int:
    """n_plus - n_minus."""
    return inertia(form, tol).signature


def is_nondegenerate(form: FormLike, tol: float = DEFAULT_TOLERANCES.tol_inertia) -> bool:
    return inertia(form, tol).nullity == 0


def restrict(
    form: FormLike,
    basis: Union[np.ndarray, Sequence[Sequence[float]]],
    tol_rank: float = DEFAULT_TOLERANCES.tol_rank,
) -> BilinearForm:
    """Restriction of a form to the span of the given vectors.

    Args:
        form: The form on R^n
        basis: Either an n x k matrix whose columns are the vectors, or a
            list of k vectors of length n

    Returns:
        k x k form with entries form(b_i, b_j)

    Raises:
        ValidationError: If the vectors are linearly dependent
    """
    form = as_form(form)
    columns = _as_columns(basis, form.dim)
    if columns.shape[1] == 0:
        return BilinearForm(np.zeros((0, 0)))
    if numerical_rank(columns, tol_rank) < columns.shape[1]:
        raise ValidationError(
            "basis_rank", f"{columns.shape[1]} basis vectors are linearly dependent"
        )
    gram = columns.T @ form.entries @ columns
    return BilinearForm((gram + gram.T) / 2.0)


def sip_matrix(n: int) -> BilinearForm:
    """Standard involutory permutation: ones on the anti-diagonal."""
    if n < 1:
        raise ValidationError("sip_size", f"sip matrix needs n >= 1, got {n}")
    return BilinearForm(np.fliplr(np.eye(n)))


def _as_columns(basis, dim: int) -> np.ndarray:
    array = np.array(basis, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1) if array.size == dim else array.reshape(1, -1)
    if array.shape[0] == dim:
        return array
    if array.shape[1] == dim:
        return array.T
    raise ValidationError(
        "basis_shape", f"basis of shape {array.shape} does not fit dimension {dim}"
    )
