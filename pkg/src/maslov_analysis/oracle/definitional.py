"""Definitional conjugate instants, Maslov index and Conley-Zehnder index.

Everything here works from the fundamental solution alone and never looks
at canonical pairs, so it serves as an independent check of the closed
forms.
"""

from typing import List, Optional

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import ClassificationError
from ..forms import as_form
from ..linalg import (
    canonical_omega,
    g_orthogonal_complement,
    kernel_chain,
    orthonormal_columns,
    restrict_operator,
)
from ..models import GSymmetricSystem, SymplecticCoefficient
from ..symplectic import DEGENERATE_CONTINUUM, continuum_kernel_dim
from .lagrangian import (
    ChartAccumulator,
    LagrangianPath,
    chart_form,
    extended_coindex,
    find_crossings,
    principal_sines,
)
from .models import Crossing, SymplecticPathSample
from .series import exponential_solutions, fundamental_solutions, hamiltonian


def _vertical_base(n: int) -> np.ndarray:
    """Frame of L0 = {0} + R^n."""
    return np.vstack([np.zeros((n, n)), np.eye(n)])


def maslov_path(system: GSymmetricSystem) -> LagrangianPath:
    """t -> l(t) = Phi(t)(L0)."""
    n = system.dim
    return LagrangianPath(
        frames=lambda ts: fundamental_solutions(system, ts)[:, :, n:],
        omega=canonical_omega(n),
        horizon=system.T,
        rate=float(np.linalg.norm(hamiltonian(system), 2)),
    )


def path_sample(
    system: GSymmetricSystem, t: float, tolerances: Optional[Tolerances] = None
) -> SymplecticPathSample:
    tol = tolerances or DEFAULT_TOLERANCES
    n = system.dim
    phi = fundamental_solutions(system, [t])[0]
    frame = phi[:, n:]
    sines = principal_sines(_vertical_base(n), orthonormal_columns(frame)[None])[0]
    return SymplecticPathSample(
        t=float(t), phi=phi, lagrangian_frame=frame, intersection_dim=int(np.sum(sines <= tol.tol_cross))
    )


def detect_conjugate(
    system: GSymmetricSystem, tolerances: Optional[Tolerances] = None
) -> List[Crossing]:
    """Instants in (0, T] where l(t) meets L0, i.e. S(t^2 A) is singular.

    Returns:
        Crossings with their rank deficiency
    """
    tol = tolerances or DEFAULT_TOLERANCES
    return find_crossings(maslov_path(system), _vertical_base(system.dim), tol)


def maslov_definitional(
    system: GSymmetricSystem,
    tolerances: Optional[Tolerances] = None,
    seed: Optional[int] = None,
    randomize: bool = False,
    crossings: Optional[List[Crossing]] = None,
) -> int:
    """Maslov index of l(t) relative to L0 from chart forms.

    Args:
        system: Validated system
        tolerances: Oracle tolerances
        seed: Seed of the random chart candidates (defaults to tolerances.seed)
        randomize: Use only random charts
        crossings: Previously detected crossings, to skip a second scan
    """
    tol = tolerances or DEFAULT_TOLERANCES
    path = maslov_path(system)
    base = _vertical_base(system.dim)
    if crossings is None:
        crossings = find_crossings(path, base, tol)
    return ChartAccumulator(path, base, tol, seed, randomize).total(crossings)


def _doubled_omega(n: int) -> np.ndarray:
    """omega + (-omega) on R^2n x R^2n."""
    omega = canonical_omega(n)
    return linalg.block_diag(omega, -omega)


def _diagonal_base(n: int) -> np.ndarray:
    eye = np.eye(2 * n)
    return np.vstack([eye, eye]) / np.sqrt(2.0)


def graph_path(system: GSymmetricSystem) -> LagrangianPath:
    """t -> Gr(Phi(t)) in the doubled space."""
    n = system.dim

    def frames(ts: np.ndarray) -> np.ndarray:
        phis = fundamental_solutions(system, ts)
        eye = np.broadcast_to(np.eye(2 * n), phis.shape)
        return np.concatenate([eye, phis], axis=1)

    return LagrangianPath(
        frames=frames,
        omega=_doubled_omega(n),
        horizon=system.T,
        rate=float(np.linalg.norm(hamiltonian(system), 2)),
    )


def split_generalized_kernel(system: GSymmetricSystem, tolerances: Optional[Tolerances] = None):
    """The restrictions of (g, A) to Ker(A^n) and to its g-orthogonal complement.

    Returns:
        (kernel_system, complement_system); either may have dimension 0, in
        which case it is None
    """
    tol = tolerances or DEFAULT_TOLERANCES
    dims, bases = kernel_chain(system.A, tol.tol_rank)
    n = system.dim
    kernel = bases[-1] if dims and dims[-1] > 0 else np.zeros((n, 0))
    complement = g_orthogonal_complement(system.G, kernel)

    def restricted(basis: np.ndarray) -> Optional[GSymmetricSystem]:
        if basis.shape[1] == 0:
            return None
        g = as_form(basis.T @ system.G @ basis, tol.tol_sym)
        return GSymmetricSystem(g, restrict_operator(system.A, basis), system.T)

    return restricted(kernel), restricted(complement)


def _kernel_part(system: GSymmetricSystem, tol: Tolerances) -> int:
    """Index of the graph path of a nilpotent part; the S = 0 chart is valid throughout."""
    path = graph_path(system)
    base = _diagonal_base(system.dim)
    chart = path.omega @ base
    frame = orthonormal_columns(path.frames(np.array([system.T]))[0])
    return extended_coindex(chart_form(base, chart, frame), tol.tol_null) - 2 * system.dim


def cz_definitional(
    system: GSymmetricSystem,
    tolerances: Optional[Tolerances] = None,
    seed: Optional[int] = None,
    randomize: bool = False,
) -> int:
    """Conley-Zehnder index as the index of Gr(Phi(t)) relative to the diagonal.

    The generalized kernel of A is split off first; on it the unipotent
    Phi(t) never has eigenvalue -1.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    kernel, complement = split_generalized_kernel(system, tol)
    total = _kernel_part(kernel, tol) if kernel is not None else 0
    if complement is not None:
        path = graph_path(complement)
        base = _diagonal_base(complement.dim)
        crossings = find_crossings(path, base, tol)
        total += ChartAccumulator(path, base, tol, seed, randomize).total(crossings)
    return total


def symplectic_path(coefficient: SymplecticCoefficient, T: float) -> LagrangianPath:
    """t -> exp(tX)(L0) for a general constant coefficient."""
    n = coefficient.dim
    matrix = coefficient.matrix()
    return LagrangianPath(
        frames=lambda ts: exponential_solutions(matrix, ts)[:, :, n:],
        omega=canonical_omega(n),
        horizon=T,
        rate=float(np.linalg.norm(matrix, 2)),
    )


def _check_not_continuum(coefficient: SymplecticCoefficient, tol: Tolerances) -> None:
    if continuum_kernel_dim(coefficient, tol) > 0:
        raise ClassificationError(
            DEGENERATE_CONTINUUM, "every instant conjugate: Ker(a^T) and Ker(b) intersect"
        )


def symplectic_conjugate(
    coefficient: SymplecticCoefficient, T: float, tolerances: Optional[Tolerances] = None
) -> List[Crossing]:
    """Conjugate instants of z' = X z from the upper right block of exp(tX)."""
    tol = tolerances or DEFAULT_TOLERANCES
    _check_not_continuum(coefficient, tol)
    return find_crossings(symplectic_path(coefficient, T), _vertical_base(coefficient.dim), tol)


def symplectic_maslov(
    coefficient: SymplecticCoefficient,
    T: float,
    tolerances: Optional[Tolerances] = None,
    crossings: Optional[List[Crossing]] = None,
) -> int:
    """Maslov index of exp(tX)(L0) relative to L0."""
    tol = tolerances or DEFAULT_TOLERANCES
    _check_not_continuum(coefficient, tol)
    path = symplectic_path(coefficient, T)
    base = _vertical_base(coefficient.dim)
    if crossings is None:
        crossings = find_crossings(path, base, tol)
    return ChartAccumulator(path, base, tol).total(crossings)
