"""Structure constant algebra for Lie algebras with a bi-invariant metric h.

The basis is h-orthonormal with h(X_i, X_i) = epsilon_i. Lowering the
upper index, c_ijk = epsilon_k C^k_ij, turns bi-invariance of h into total
antisymmetry of c.
"""

import itertools
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    AntisymmetryError,
    BiInvarianceError,
    IdentityRefusal,
    JacobiIdentityError,
    ValidationError,
)
from ..linalg import kernel_basis, smallest_right_singular
from .models import LieAlgebraSpec

# relative band for the eigenvalue spray of a defective ad
_SPRAY = 1e-6
# up to this dimension the four index identities follow from the Jacobi identity
IDENTITIES_AUTOMATIC_DIM = 5


def _scale(structure: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(structure))) if structure.size else 0.0)


def adjoint_matrices(spec: LieAlgebraSpec) -> np.ndarray:
    """Stack of ad(X_i); entry [i, k, j] = C^k_ij."""
    return np.transpose(spec.structure, (1, 0, 2))


def validate_algebra(
    spec: LieAlgebraSpec, tolerances: Optional[Tolerances] = None
) -> LieAlgebraSpec:
    """Check antisymmetry, the Jacobi identity and bi-invariance of h.

    Raises:
        ValidationError: Malformed structure array or metric signs
        AntisymmetryError: C^k_ij != -C^k_ji
        JacobiIdentityError: [ad_i, ad_j] != sum_k C^k_ij ad_k, or the
            lowered form sum_m epsilon_m (C^m_ij C^m_kl + C^m_jk C^m_il
            + C^m_ki C^m_jl) does not vanish
        BiInvarianceError: h(ad_X Y, Z) + h(Y, ad_X Z) != 0
    """
    tol = tolerances or DEFAULT_TOLERANCES
    C = spec.structure
    n = C.shape[0] if C.ndim else 0
    if C.ndim != 3 or C.shape != (n, n, n) or n == 0:
        raise ValidationError("structure_shape", f"structure must be n x n x n, got {C.shape}")
    if len(spec.metric_signs) != n or any(s not in (1, -1) for s in spec.metric_signs):
        raise ValidationError(
            "metric_signs", f"metric_signs must be {n} entries of +1 or -1, got {spec.metric_signs}"
        )
    scale = _scale(C)

    asymmetry = float(np.max(np.abs(C + np.transpose(C, (0, 2, 1)))))
    if asymmetry > tol.tol_sym * scale:
        raise AntisymmetryError(
            "antisymmetry", f"max|C^k_ij + C^k_ji| = {asymmetry:.3e}", {"residual": asymmetry}
        )

    ad = adjoint_matrices(spec)
    commutators = np.einsum("iab,jbc->ijac", ad, ad) - np.einsum("jab,ibc->ijac", ad, ad)
    expected = np.einsum("kij,kac->ijac", C, ad)
    jacobi = float(np.max(np.abs(commutators - expected)))
    if jacobi > tol.tol_sym * scale ** 2:
        raise JacobiIdentityError(
            "jacobi_identity", f"max|[ad_i, ad_j] - ad_[X_i, X_j]| = {jacobi:.3e}", {"residual": jacobi}
        )

    signs = np.array(spec.metric_signs, dtype=float)
    lowered = C * signs[:, None, None]
    lowered = np.transpose(lowered, (1, 2, 0))
    invariance = float(np.max(np.abs(lowered + np.transpose(lowered, (0, 2, 1)))))
    if invariance > tol.tol_sym * scale:
        raise BiInvarianceError(
            "bi_invariance",
            f"max|epsilon_k C^k_ij + epsilon_j C^j_ik| = {invariance:.3e}",
            {"residual": invariance},
        )

    lowered_jacobi = float(np.max(np.abs(lowered_jacobi_residuals(spec))))
    if lowered_jacobi > tol.tol_sym * scale ** 2:
        raise JacobiIdentityError(
            "jacobi_identity_lowered",
            f"sum_m epsilon_m (C^m_ij C^m_kl + C^m_jk C^m_il + C^m_ki C^m_jl) = {lowered_jacobi:.3e}",
            {"residual": lowered_jacobi},
        )
    return spec


def lowered_jacobi_residuals(spec: LieAlgebraSpec) -> np.ndarray:
    """Array over (i, j, k, l) of sum_m eps_m (C^m_ij C^m_kl + C^m_jk C^m_il + C^m_ki C^m_jl)."""
    C = spec.structure
    signs = np.array(spec.metric_signs, dtype=float)
    weighted = C * signs[:, None, None]
    first = np.einsum("mij,mkl->ijkl", weighted, C)
    second = np.einsum("mjk,mil->ijkl", weighted, C)
    third = np.einsum("mki,mjl->ijkl", weighted, C)
    return first + second + third


def ad_operator(spec: LieAlgebraSpec, direction: Sequence[float]) -> np.ndarray:
    """Matrix of Y -> [X, Y] for X with the given coordinates."""
    x = np.asarray(direction, dtype=float)
    if x.shape != (spec.dim,):
        raise ValidationError(
            "direction_shape", f"direction must have {spec.dim} coordinates, got {x.shape}"
        )
    return np.einsum("i,kij->kj", x, spec.structure)


def bracket(spec: LieAlgebraSpec, x: Sequence[float], y: Sequence[float]) -> np.ndarray:
    return ad_operator(spec, x) @ np.asarray(y, dtype=float)



def covariant_derivative(spec: LieAlgebraSpec, x: Sequence[float], y: Sequence[float]) -> np.ndarray:
    """Levi-Civita connection of h on left invariant fields: (1/2)[X, Y]."""
    return 0.5 * bracket(spec, x, y)


def curvature(
    spec: LieAlgebraSpec, x: Sequence[float], y: Sequence[float], z: Sequence[float]
) -> np.ndarray:
    """R(X, Y)Z = (1/4)[Z, [X, Y]]."""
    return 0.25 * bracket(spec, z, bracket(spec, x, y))


def check_identities(
    spec: LieAlgebraSpec, index: Optional[int] = None, tolerances: Optional[Tolerances] = None
) -> bool:
    """Whether C^n_ij C^n_kl + C^n_jk C^n_il + C^n_ki C^n_jl = 0.

    The identity is checked for pairwise distinct i, j, k, l different from
    the distinguished index n (default: the last basis vector). Up to
    dimension 5 it follows from the Jacobi identity and is not evaluated.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    n = spec.dim
    if n <= IDENTITIES_AUTOMATIC_DIM:
        return True
    index = n - 1 if index is None else index
    top = spec.structure[index]
    others = [i for i in range(n) if i != index]
    bound = tol.tol_sym * _scale(spec.structure) ** 2
    for i, j, k, l in itertools.permutations(others, 4):
        value = top[i, j] * top[k, l] + top[j, k] * top[i, l] + top[k, i] * top[j, l]
        if abs(value) > bound:
            return False
    return True


def pfaffian(skew: np.ndarray, tol: float = DEFAULT_TOLERANCES.tol_sym) -> float:
    """Pfaffian by expansion along the first row.

    Pf(M) = sum_{j>=2} (-1)^j m_1j Pf(M with rows and columns 1, j removed).

    Raises:
        ValidationError: If the matrix is not square, not of even size or
            not skew-symmetric
    """
    matrix = np.asarray(skew, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError("pfaffian_square", f"Pfaffian needs a square matrix, got {matrix.shape}")
    if matrix.shape[0] % 2:
        raise ValidationError("pfaffian_even", f"Pfaffian needs even size, got {matrix.shape[0]}")
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    if matrix.size and float(np.max(np.abs(matrix + matrix.T))) > tol * scale:
        raise ValidationError("pfaffian_skew", "Pfaffian needs a skew-symmetric matrix")
    return _pfaffian(matrix)


def _pfaffian(matrix: np.ndarray) -> float:
    size = matrix.shape[0]
    if size == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, size))
    for position, j in enumerate(rest):
        if matrix[0, j] == 0.0:
            continue
        keep = rest[:position] + rest[position + 1:]
        sign = 1.0 if position % 2 == 0 else -1.0
        total += sign * matrix[0, j] * _pfaffian(matrix[np.ix_(keep, keep)])
    return total


def pivot_matrix(spec: LieAlgebraSpec, index: Optional[int] = None) -> np.ndarray:
    """Skew matrix a_ij = epsilon_i C^i_nj over the indices other than n."""
    n = spec.dim
    index = n - 1 if index is None else index
    others = [i for i in range(n) if i != index]
    signs = np.array(spec.metric_signs, dtype=float)
    block = spec.structure[:, index, :] * signs[:, None]
    return block[np.ix_(others, others)]


def char_poly_pfaffian(
    spec: LieAlgebraSpec, index: Optional[int] = None, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """det(lambda - ad X_n) = lambda^(n-2) (lambda^2 + sum_{i<j} eps_i eps_j a_ij^2).

    Returns:
        Monic coefficients, highest degree first (numpy.poly order)

    Raises:
        IdentityRefusal: If check_identities fails; use
            char_poly_minors or the direct spectral path instead
    """
    tol = tolerances or DEFAULT_TOLERANCES
    if not check_identities(spec, index, tol):
        raise IdentityRefusal(
            "pfaffian_identities",
            "structure constants violate the quadratic identities; the closed form does not apply",
        )
    n = spec.dim
    index = n - 1 if index is None else index
    a = pivot_matrix(spec, index)
    signs = np.array([s for i, s in enumerate(spec.metric_signs) if i != index], dtype=float)
    upper = np.triu(np.outer(signs, signs) * a ** 2, k=1)
    coefficients = np.zeros(n + 1)
    coefficients[0] = 1.0
    coefficients[2] = float(np.sum(upper))
    return coefficients


def char_poly_minors(spec: LieAlgebraSpec, index: Optional[int] = None) -> np.ndarray:
    """det(lambda - ad X_n) from principal sub-Pfaffians of (a_ij).

    On the complement of X_n the polynomial is
    sum_S Pf(a_S)^2 prod_{k in S} eps_k lambda^(n-1-|S|) over even subsets S;
    the extra factor lambda comes from ad X_n X_n = 0.
    """
    n = spec.dim
    index = n - 1 if index is None else index
    a = pivot_matrix(spec, index)
    signs = [s for i, s in enumerate(spec.metric_signs) if i != index]
    m = n - 1
    coefficients = np.zeros(n + 1)
    for size in range(0, m + 1, 2):
        for subset in itertools.combinations(range(m), size):
            weight = float(np.prod([signs[k] for k in subset])) if subset else 1.0
            minor = _pfaffian(a[np.ix_(subset, subset)]) if subset else 1.0
            coefficients[size] += weight * minor ** 2
    return coefficients


def change_basis(
    spec: LieAlgebraSpec, basis: np.ndarray, tolerances: Optional[Tolerances] = None
) -> LieAlgebraSpec:
    """Structure constants in the basis X'_a = sum_i basis[i, a] X_i.

    C'^c_ab = sum (basis^-1)_ck C^k_ij basis_ia basis_jb. The new basis must
    be h-orthonormal.

    Raises:
        ValidationError: If h is not diagonal with entries +1/-1 in the new basis
    """
    tol = tolerances or DEFAULT_TOLERANCES
    P = np.asarray(basis, dtype=float)
    inverse = np.linalg.inv(P)
    structure = np.einsum("ck,kij,ia,jb->cab", inverse, spec.structure, P, P)
    gram = P.T @ spec.metric @ P
    signs = np.sign(np.diag(gram))
    if float(np.max(np.abs(gram - np.diag(signs)))) > tol.tol_recon * max(1.0, float(np.max(np.abs(P)))) ** 2:
        raise ValidationError("orthonormal_basis", "new basis is not h-orthonormal")
    return LieAlgebraSpec(structure, tuple(int(s) for s in signs), spec.name)


def orthonormal_frame_for(
    spec: LieAlgebraSpec, direction: Sequence[float], tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """h-orthonormal basis whose last vector is X / sqrt|h(X, X)|.

    Raises:
        ValidationError: If X is null, h(X, X) ~ 0
    """
    tol = tolerances or DEFAULT_TOLERANCES
    h = spec.metric
    x = np.asarray(direction, dtype=float)
    norm = float(x @ h @ x)
    if abs(norm) <= tol.tol_rank * max(1.0, float(x @ x)):
        raise ValidationError("null_direction", "direction is null for h; cannot normalize")
    unit = x / np.sqrt(abs(norm))
    complement = smallest_right_singular((h @ unit)[None, :], spec.dim - 1)
    values, vectors = linalg.eigh(complement.T @ h @ complement)
    order = np.argsort(-values)
    columns = [complement @ vectors[:, k] / np.sqrt(abs(values[k])) for k in order]
    return np.column_stack(columns + [unit])


def eigenplane(
    spec: LieAlgebraSpec, direction: Sequence[float], tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """Real eigenspace of ad_X^2 for -alpha^2, with i alpha the top imaginary ad-eigenvalue.

    Uses P = ad_X e_p and Q = ad_X^2 e_p for the basis vector e_p with the
    largest |h(ad_X e_p, ad_X e_p)|; falls back to Ker(ad_X^2 + alpha^2)
    when that pivot is negligible or P, Q do not span an eigenplane.

    Returns:
        n x 2k basis, n x 0 when ad_X has no nonzero imaginary eigenvalue
    """
    tol = tolerances or DEFAULT_TOLERANCES
    ad = ad_operator(spec, direction)
    betas = imaginary_ad_spectrum(ad)
    if not betas:
        return np.zeros((spec.dim, 0))
    alpha = betas[-1]
    scale = max(1.0, float(np.linalg.norm(ad, 2)))
    square = ad @ ad
    target = square + alpha ** 2 * np.eye(spec.dim)
    h = spec.metric
    pivots = [abs(float(ad[:, p] @ h @ ad[:, p])) for p in range(spec.dim)]
    p = int(np.argmax(pivots))
    if pivots[p] > tol.tol_rank * scale ** 2:
        plane = np.column_stack([ad[:, p], square[:, p]])
        residual = float(np.max(np.abs(target @ plane)))
        if (
            np.linalg.matrix_rank(plane, tol=tol.tol_rank * scale ** 2) == 2
            and residual <= tol.tol_recon * scale ** 3
        ):
            return plane
    return kernel_basis(target, tol.tol_rank)


def imaginary_ad_spectrum(ad: np.ndarray, band: float = _SPRAY) -> List[float]:
    """Positive beta with i beta an eigenvalue of ad, one entry per cluster, ascending."""
    eigenvalues = np.linalg.eigvals(ad)
    scale = max(1.0, float(np.max(np.abs(eigenvalues)))) if eigenvalues.size else 1.0
    band = band * scale
    betas: List[float] = []
    for z in sorted(eigenvalues, key=lambda v: v.imag):
        if abs(z.real) <= band and z.imag > band:
            if not betas or z.imag - betas[-1] > band:
                betas.append(float(z.imag))
    return betas
