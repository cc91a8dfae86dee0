"""Tolerance configuration.

Defaults can be overridden per problem file, through the ``MASLOV_TOL_OVERRIDE``
environment variable (also read from a ``.env`` file) and by CLI flags, in that
order of precedence.
"""

import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import SchemaError

# Load environment variables from .env file
load_dotenv()

TOL_OVERRIDE_ENV = "MASLOV_TOL_OVERRIDE"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every module.

    Attributes:
        tol_sym: Relative symmetry tolerance for forms and g-symmetry
        tol_inertia: Relative eigenvalue band counted as nullity by inertia
        tol_eig: Relative eigenvalue clustering radius
        tol_rank: Relative singular value cutoff for numerical rank
        tol_recon: Canonical pair reconstruction tolerance
        tol_merge: Conjugate instant merge tolerance, relative to T
        tol_symp: Symplecticity residual of the fundamental solution
        tol_null: Relative nullity band for oracle chart forms
        tol_cross: Principal angle sine below which the oracle sees an intersection
        tol_t: Crossing refinement resolution, relative to T
        chart_margin: Minimal transversality margin of an oracle chart
        grid: Number of oracle grid intervals on [0, T]
        max_depth: Oracle subdivision depth budget
        chart_candidates: Random charts tried per oracle subinterval
        seed: Seed for oracle chart sampling
    """
    tol_sym: float = 1e-9
    tol_inertia: float = 1e-9
    tol_eig: float = 1e-8
    tol_rank: float = 1e-9
    tol_recon: float = 1e-8
    tol_merge: float = 1e-8
    tol_symp: float = 1e-10
    tol_null: float = 1e-9
    tol_cross: float = 1e-6
    tol_t: float = 1e-10
    chart_margin: float = 1e-2
    grid: int = 2048
    max_depth: int = 12
    chart_candidates: int = 16
    seed: int = 0

    def with_overrides(self, **overrides: Any) -> "Tolerances":
        """Return a copy with the given (non-None) fields replaced."""
        known = {f.name: f.type for f in fields(self)}
        clean = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in known:
                raise SchemaError("tol_override", f"unknown tolerance '{name}'")
            clean[name] = _coerce(name, value, int if name in _INT_FIELDS else float)
        return replace(self, **clean)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Tolerances":
        return cls().with_overrides(**data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_env(cls, base: Optional["Tolerances"] = None) -> "Tolerances":
        """Apply ``MASLOV_TOL_OVERRIDE`` (``"tol_eig=1e-7,grid=4096"``) to base."""
        base = base or cls()
        raw = os.environ.get(TOL_OVERRIDE_ENV, "").strip()
        if not raw:
            return base
        return base.with_overrides(**parse_override(raw))


_INT_FIELDS = {"grid", "max_depth", "chart_candidates", "seed"}


def parse_override(raw: str) -> Dict[str, str]:
    """Parse a comma separated ``name=value`` list."""
    parsed = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise SchemaError("tol_override", f"expected name=value, got '{item}'")
        name, value = item.split("=", 1)
        parsed[name.strip()] = value.strip()
    return parsed


def _coerce(name: str, value: Any, kind: type) -> Any:
    try:
        coerced = kind(float(value)) if kind is int else kind(value)
    except (TypeError, ValueError):
        raise SchemaError("tol_override", f"'{name}' must be numeric, got {value!r}")
    if coerced < 0 or (kind is int and name != "seed" and coerced == 0):
        raise SchemaError("tol_override", f"'{name}' must be positive, got {value!r}")
    return coerced


DEFAULT_TOLERANCES = Tolerances()
