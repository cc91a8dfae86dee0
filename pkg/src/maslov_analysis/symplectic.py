"""Constant coefficient symplectic systems z' = X z.

A coefficient X = [[a, b], [c, -a^T]] with b nonsingular and b^-1 a
symmetric is conjugate to a second order system v'' = A v with
g = b^-1 and A = b (a^T b^-1 a + c); conjugate instants, the Maslov index
and the Conley-Zehnder index carry over unchanged.
"""

from typing import Optional, Tuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ClassificationError, SymmetryError, ValidationError
from .jordan import make_system
from .linalg import numerical_rank
from .models import GSymmetricSystem, SymplecticCoefficient

REDUCIBLE = "reducible"
DEGENERATE_CONTINUUM = "degenerate_continuum"
UNSUPPORTED = "unsupported"


def validate_coefficient(
    coefficient: SymplecticCoefficient, tolerances: Optional[Tolerances] = None
) -> SymplecticCoefficient:
    """Check block shapes and the symmetry of the b and c blocks."""
    tol = tolerances or DEFAULT_TOLERANCES
    n = coefficient.dim
    for name in ("block_a", "block_b", "block_c"):
        block = getattr(coefficient, name)
        if block.ndim != 2 or block.shape != (n, n):
            raise ValidationError(
                "dimension_match", f"{name} has shape {block.shape}, expected ({n}, {n})"
            )
        if not np.all(np.isfinite(block)):
            raise ValidationError("finite_entries", f"{name} has non-finite entries")
    for name in ("block_b", "block_c"):
        block = getattr(coefficient, name)
        asymmetry = float(np.max(np.abs(block - block.T)))
        scale = max(float(np.max(np.abs(block))), 1e-300)
        if asymmetry > tol.tol_sym * scale:
            raise SymmetryError(
                f"{name}_symmetry",
                f"max|M - M^T| = {asymmetry:.3e} exceeds {tol.tol_sym:.1e} * {scale:.3e}",
                {"asymmetry": asymmetry},
            )
    return coefficient


def continuum_kernel_dim(
    coefficient: SymplecticCoefficient, tolerances: Optional[Tolerances] = None
) -> int:
    """dim(Ker a^T intersected with Ker b), via the stacked matrix [a^T; b]."""
    tol = tolerances or DEFAULT_TOLERANCES
    stacked = np.vstack([coefficient.block_a.T, coefficient.block_b])
    return coefficient.dim - numerical_rank(stacked, tol.tol_rank)


def classify(
    coefficient: SymplecticCoefficient, tolerances: Optional[Tolerances] = None
) -> str:
    """One of ``reducible``, ``degenerate_continuum`` or ``unsupported``.

    A common kernel of a^T and b makes every instant conjugate; that test
    runs first. Otherwise the system reduces when b is nonsingular and
    b^-1 a is symmetric.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    validate_coefficient(coefficient, tol)
    if continuum_kernel_dim(coefficient, tol) > 0:
        return DEGENERATE_CONTINUUM
    b = coefficient.block_b
    if numerical_rank(b, tol.tol_rank) < coefficient.dim:
        return UNSUPPORTED
    product = np.linalg.solve(b, coefficient.block_a)
    scale = max(float(np.max(np.abs(product))), 1.0)
    if float(np.max(np.abs(product - product.T))) > tol.tol_sym * scale:
        return UNSUPPORTED
    return REDUCIBLE


def reduce(
    coefficient: SymplecticCoefficient, T: float, tolerances: Optional[Tolerances] = None
) -> GSymmetricSystem:
    """The second order system with the same conjugate instants and indices.

    Raises:
        ClassificationError: If the coefficient is not reducible
    """
    tol = tolerances or DEFAULT_TOLERANCES
    kind = classify(coefficient, tol)
    if kind == DEGENERATE_CONTINUUM:
        raise ClassificationError(
            DEGENERATE_CONTINUUM,
            "every instant conjugate: Ker(a^T) and Ker(b) intersect",
            {"kernel_dim": continuum_kernel_dim(coefficient, tol)},
        )
    if kind != REDUCIBLE:
        raise ClassificationError(
            "reducible", "b must be nonsingular with b^-1 a symmetric; use the oracle"
        )
    a, b, c = coefficient.block_a, coefficient.block_b, coefficient.block_c
    g = np.linalg.inv(b)
    g = (g + g.T) / 2.0
    A = b @ (a.T @ g @ a + c)
    return make_system(g, A, T, tol)


def second_order_form(
    coefficient: SymplecticCoefficient, tolerances: Optional[Tolerances] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Damping D and stiffness K with v'' + D v' + K v = 0.

    D = b a^T b^-1 - a and K = -(b c + b a^T b^-1 a). The momentum is
    recovered as alpha = b^-1 (v' - a v).

    Raises:
        ValidationError: If b is singular
    """
    tol = tolerances or DEFAULT_TOLERANCES
    a, b, c = coefficient.block_a, coefficient.block_b, coefficient.block_c
    if numerical_rank(b, tol.tol_rank) < coefficient.dim:
        raise ValidationError("b_nonsingular", "second order form needs a nonsingular b block")
    a_t_b_inv = a.T @ np.linalg.inv(b)
    damping = b @ a_t_b_inv - a
    stiffness = -(b @ c + b @ a_t_b_inv @ a)
    return damping, stiffness
