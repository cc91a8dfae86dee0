"""Crossings and chart-form Maslov index of a path of Lagrangian subspaces.

A path is given by a function returning frames F(t) (2N x N, full rank)
for a vector of instants. The index relative to a base Lagrangian L0 is
accumulated interval by interval: on [a, b] a second Lagrangian L1
transversal to L0 and to every l(t) is chosen, each l(t) is the graph of a
map L0 -> L1 whose form phi(x, y) = omega(Tx, y) is symmetric, and the
interval contributes the change of n_plus + nullity of that form.
"""

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import OracleError
from ..forms import inertia
from ..linalg import orthonormal_columns
from .models import Crossing

FrameFunction = Callable[[np.ndarray], np.ndarray]

_SAMPLES_PER_UNIT = 100
_MIN_SAMPLES = 65
_MAX_SAMPLES = 4096
_CROSSING_MERGE = 1e-6


class LagrangianPath:
    """A path t -> l(t) on [0, T] in (R^2N, omega).

    Args:
        frames: Maps an array of m instants to an (m, 2N, N) stack of frames
        omega: 2N x 2N matrix of the symplectic form, orthogonal with
            omega^2 = -I
        horizon: T
        rate: Bound on the speed of the path (the norm of its generator),
            used to size the transversality samples
    """

    def __init__(self, frames: FrameFunction, omega: np.ndarray, horizon: float, rate: float):
        self.frames = frames
        self.omega = omega
        self.horizon = float(horizon)
        self.rate = float(rate)

    def orthonormal_frames(self, ts: np.ndarray) -> np.ndarray:
        return orthonormal_columns(self.frames(np.asarray(ts, dtype=float).reshape(-1)))

    def sample_count(self, a: float, b: float) -> int:
        count = math.ceil(_SAMPLES_PER_UNIT * (b - a) * (1.0 + self.rate))
        return int(min(max(count, _MIN_SAMPLES), _MAX_SAMPLES))


def principal_sines(base: np.ndarray, frames: np.ndarray) -> np.ndarray:
    """Sines of the principal angles between span(base) and each frame.

    Args:
        base: 2N x N orthonormal frame
        frames: (m, 2N, N) stack of orthonormal frames

    Returns:
        (m, N) array, each row ascending
    """
    projected = frames - base @ (base.T @ frames)
    sines = np.linalg.svd(projected, compute_uv=False)
    return np.sort(sines, axis=-1)


def find_crossings(
    path: LagrangianPath, base: np.ndarray, tolerances: Optional[Tolerances] = None
) -> List[Crossing]:
    """Instants in (0, T] where l(t) meets span(base).

    The smallest principal sine is scanned on a uniform grid; every local
    minimum is refined by a golden-section search on its grid bracket down
    to tol_t * T and accepted when the sine there is at most tol_cross. The
    deficiency is the number of sines at or below tol_cross.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    T = path.horizon
    ts = np.linspace(0.0, T, tol.grid + 1)
    values = principal_sines(base, path.orthonormal_frames(ts))[:, 0]

    def smallest_sine(t: float) -> float:
        return float(principal_sines(base, path.orthonormal_frames(np.array([t])))[0, 0])

    found: List[Crossing] = []
    for i in range(1, tol.grid + 1):
        upper = values[i + 1] if i < tol.grid else np.inf
        if not (values[i] <= values[i - 1] and values[i] <= upper):
            continue
        t_best, value = refine_minimum(smallest_sine, ts, i, tol.tol_t * T)
        if values[i] < value:
            t_best, value = float(ts[i]), float(values[i])
        if value <= tol.tol_cross:
            found.append(_crossing_at(path, base, t_best, tol.tol_cross))

    end_sines = principal_sines(base, path.orthonormal_frames(np.array([T])))[0]
    if end_sines[0] <= tol.tol_cross:
        found.append(_crossing_at(path, base, T, tol.tol_cross))
    return merge_crossings(found, _CROSSING_MERGE * T, T)


def refine_minimum(
    func: Callable[[float], float], ts: np.ndarray, i: int, resolution: float
) -> Tuple[float, float]:
    """Locate the minimum of func near the grid point ts[i] to within resolution.

    Uses golden-section search on (ts[i-1], ts[i], ts[i+1]), whose stopping
    rule is a width relative to |t|; the requested absolute width is
    converted accordingly. Ties with a neighbour and the last grid point
    have no strict bracket and fall back to a bounded search.
    """
    lo, mid = float(ts[i - 1]), float(ts[i])
    if i + 1 < len(ts):
        hi = float(ts[i + 1])
        try:
            t_min, value, _ = optimize.golden(
                func, brack=(lo, mid, hi), tol=resolution / (2.0 * hi), full_output=True
            )
            return float(t_min), float(value)
        except ValueError:
            pass
    else:
        hi = mid
    result = optimize.minimize_scalar(
        func, bounds=(lo, hi), method="bounded", options={"xatol": resolution}
    )
    return float(result.x), float(result.fun)


def _crossing_at(path: LagrangianPath, base: np.ndarray, t: float, threshold: float) -> Crossing:
    sines = principal_sines(base, path.orthonormal_frames(np.array([t])))[0]
    return Crossing(t=t, deficiency=int(np.sum(sines <= threshold)), min_sine=float(sines[0]))


def merge_crossings(
    crossings: Sequence[Crossing], band: float, horizon: Optional[float] = None
) -> List[Crossing]:
    """Collapse crossings closer than band, keeping the one with the smallest sine.

    A crossing exactly at the horizon always wins so that final instants
    keep t = T.
    """
    merged: List[Crossing] = []
    for crossing in sorted(crossings, key=lambda c: c.t):
        if not merged or crossing.t - merged[-1].t > band:
            merged.append(crossing)
            continue
        keep = merged[-1]
        if crossing.t == horizon or (keep.t != horizon and crossing.min_sine < keep.min_sine):
            merged[-1] = crossing
    return merged


def chart_form(base: np.ndarray, chart: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Symmetric matrix of l = span(frame) in the chart (base, chart).

    Writes frame = base P + chart Q and returns (Q P^-1)^T, symmetrized.
    """
    n = base.shape[1]
    coords = np.linalg.solve(np.hstack([base, chart]), frame)
    form = np.linalg.solve(coords[:n].T, coords[n:].T)
    return (form + form.T) / 2.0


def extended_coindex(form: np.ndarray, tol_null: float) -> int:
    return inertia(form, tol_null).extended_coindex


def chart_margins(chart: np.ndarray, frames: np.ndarray) -> np.ndarray:
    """Smallest singular value of [orth(chart), frame] for each frame."""
    q = orthonormal_columns(chart)
    stacked = np.concatenate([np.broadcast_to(q, frames.shape), frames], axis=2)
    return np.linalg.svd(stacked, compute_uv=False)[:, -1]


def chart_candidates(
    base: np.ndarray, omega: np.ndarray, rng: np.random.Generator, count: int, randomize: bool
):
    """Lagrangians omega L0 + L0 S transversal to L0, S symmetric.

    Starts with S = 0 unless ``randomize`` is set; the rest draw S from rng.
    """
    n = base.shape[1]
    rotated = omega @ base
    if not randomize:
        yield rotated
    for _ in range(count):
        s = rng.standard_normal((n, n))
        yield rotated + base @ ((s + s.T) / 2.0)


class ChartAccumulator:
    """Sums chart-form coindex changes over a partition of [0, T].

    Args:
        path: The Lagrangian path
        base: 2N x N orthonormal frame of L0
        tolerances: Uses chart_margin, chart_candidates, max_depth, tol_null
        seed: Seed for the random chart candidates
        randomize: Skip the S = 0 chart so that every chart is random
    """

    def __init__(
        self,
        path: LagrangianPath,
        base: np.ndarray,
        tolerances: Optional[Tolerances] = None,
        seed: Optional[int] = None,
        randomize: bool = False,
    ):
        self.path = path
        self.base = base
        self.tol = tolerances or DEFAULT_TOLERANCES
        self.rng = np.random.default_rng(self.tol.seed if seed is None else seed)
        self.randomize = randomize
        self.charts_used = 0
        self._avoid: Tuple[float, ...] = ()

    def total(self, crossings: Sequence[Crossing] = ()) -> int:
        """Maslov index of the path over [0, T] relative to L0.

        Raises:
            OracleError: If some subinterval finds no admissible chart within
                the subdivision depth budget
        """
        T = self.path.horizon
        inner = [c.t for c in crossings if 0.0 < c.t < T]
        self._avoid = tuple(inner)
        points = [0.0] + [(x + y) / 2.0 for x, y in zip(inner, inner[1:])] + [T]
        return sum(self._interval(a, b, 0) for a, b in zip(points, points[1:]))

    def _interval(self, a: float, b: float, depth: int) -> int:
        ts = np.linspace(a, b, self.path.sample_count(a, b))
        frames = self.path.orthonormal_frames(ts)
        for chart in chart_candidates(
            self.base, self.path.omega, self.rng, self.tol.chart_candidates, self.randomize
        ):
            if float(np.min(chart_margins(chart, frames))) < self.tol.chart_margin:
                continue
            self.charts_used += 1
            start = extended_coindex(chart_form(self.base, chart, frames[0]), self.tol.tol_null)
            end = extended_coindex(chart_form(self.base, chart, frames[-1]), self.tol.tol_null)
            return end - start
        if depth >= self.tol.max_depth:
            raise OracleError(
                "chart_search",
                f"no chart transversal on [{a:.6g}, {b:.6g}] after {depth} subdivisions",
                {"a": a, "b": b, "depth": depth},
            )
        middle = self._split_point(a, b)
        return self._interval(a, middle, depth + 1) + self._interval(middle, b, depth + 1)

    def _split_point(self, a: float, b: float) -> float:
        width = b - a
        for fraction in (0.5, 0.4, 0.6, 0.3, 0.7):
            point = a + fraction * width
            if all(abs(point - c) > 0.05 * width for c in self._avoid):
                return point
        return a + 0.5 * width
