"""Series evaluation of C(B), S(B) and the fundamental solution Phi(t).

C(B) = sum B^k / (2k)! and S(B) = sum B^k / (2k+1)!, so that for
B = -alpha^2 these are cos(alpha) and sin(alpha) / alpha. B is scaled by
4^-s into the unit ball, the truncated series is summed there, and the
double angle rules C(4B) = 2 C(B)^2 - I, S(4B) = S(B) C(B) undo the scaling.
"""

import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import SeriesError
from ..models import GSymmetricSystem
from .models import SymplecticPathSample

_MAX_TERMS = 30
_REMAINDER = 1e-16


def _series_terms(norm: float) -> int:
    """Smallest K with norm^K / (2K)! below the remainder bound."""
    term = 1.0
    for k in range(1, _MAX_TERMS + 1):
        term *= norm / ((2 * k - 1) * (2 * k))
        if term < _REMAINDER:
            return k
    raise SeriesError(
        "series_convergence", f"cosine series did not converge in {_MAX_TERMS} terms (norm {norm:.3e})"
    )


def cosine_sine_stack(stack: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """C and S of every matrix in an (m, n, n) stack.

    Raises:
        SeriesError: If an input is not finite
    """
    stack = np.asarray(stack, dtype=float)
    if not np.all(np.isfinite(stack)):
        raise SeriesError("series_input", "C/S series received non-finite entries")
    m, n, _ = stack.shape
    cosine = np.empty_like(stack)
    sine = np.empty_like(stack)
    if m == 0:
        return cosine, sine
    norms = np.linalg.norm(stack, ord=2, axis=(1, 2))
    steps = np.where(norms > 1.0, np.ceil(np.log(np.maximum(norms, 1.0)) / np.log(4.0)), 0).astype(int)
    eye = np.eye(n)

    for s in np.unique(steps):
        mask = steps == s
        scaled = stack[mask] / 4.0 ** s
        terms = _series_terms(float(np.max(norms[mask])) / 4.0 ** s)
        c = np.broadcast_to(eye, scaled.shape).copy()
        sn = np.broadcast_to(eye, scaled.shape).copy()
        power = np.broadcast_to(eye, scaled.shape).copy()
        for k in range(1, terms + 1):
            power = power @ scaled
            c += power / math.factorial(2 * k)
            sn += power / math.factorial(2 * k + 1)
        for _ in range(s):
            sn = sn @ c
            c = 2.0 * (c @ c) - eye
        cosine[mask] = c
        sine[mask] = sn
    return cosine, sine


def cosine_sine(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """C(B) and S(B) of a single square matrix."""
    cosine, sine = cosine_sine_stack(np.asarray(matrix, dtype=float)[None, :, :])
    return cosine[0], sine[0]


def hamiltonian(system: GSymmetricSystem) -> np.ndarray:
    """X = [[0, g^-1], [gA, 0]], so that Phi(t) = exp(tX)."""
    n = system.dim
    g_inv = np.linalg.inv(system.G)
    zero = np.zeros((n, n))
    return np.block([[zero, g_inv], [system.G @ system.A, zero]])


def fundamental_solutions(system: GSymmetricSystem, ts: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    """Phi(t) for every t as a (m, 2n, 2n) stack.

    Phi(t) = [[C, t S g^-1], [t g A S, g C g^-1]] with C = C(t^2 A) and
    S = S(t^2 A).
    """
    ts = np.asarray(ts, dtype=float).reshape(-1)
    G = system.G
    g_inv = np.linalg.inv(G)
    cosine, sine = cosine_sine_stack(ts[:, None, None] ** 2 * system.A[None, :, :])
    t = ts[:, None, None]
    top = np.concatenate([cosine, t * sine @ g_inv], axis=2)
    bottom = np.concatenate([t * (G @ system.A) @ sine, G @ cosine @ g_inv], axis=2)
    return np.concatenate([top, bottom], axis=1)


def fundamental_solution(
    system: GSymmetricSystem, t: float, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """Phi(t), checked for symplecticity.

    Raises:
        SeriesError: If phi^T Omega phi deviates from Omega by more than
            tol_symp relative to |phi|^2
    """
    tol = tolerances or DEFAULT_TOLERANCES
    phi = fundamental_solutions(system, [t])[0]
    n = system.dim
    sample = SymplecticPathSample(t, phi, phi[:, n:], 0)
    if sample.symplectic_residual > tol.tol_symp:
        raise SeriesError(
            "symplectic_residual",
            f"Phi({t:.6g}) is not symplectic: residual {sample.symplectic_residual:.2e}",
            {"residual": sample.symplectic_residual},
        )
    return phi


def exponential_solutions(matrix: np.ndarray, ts: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    """exp(tX) for a general Hamiltonian X at every t."""
    return np.stack([linalg.expm(t * matrix) for t in ts])
