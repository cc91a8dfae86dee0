"""Problem files: loading, schema validation and conversion to analysis inputs."""

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import SchemaError
from .forms import as_form
from .liegroup.fixtures import LIE_FIXTURES
from .liegroup.models import LieAlgebraSpec
from .models import GSymmetricSystem, SymplecticCoefficient

SCHEMA_VERSION = 1

SECOND_ORDER = "second_order"
SYMPLECTIC = "symplectic"
LIE_ALGEBRA = "lie_algebra"
KINDS = (SECOND_ORDER, SYMPLECTIC, LIE_ALGEBRA)

TOLERANCE_OPTIONS = tuple(f.name for f in fields(Tolerances))

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}

PROBLEM_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "maslov-analysis problem file",
    "version": SCHEMA_VERSION,
    "type": "object",
    "required": ["kind", "horizon", "payload"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"enum": list(KINDS)},
        "name": {"type": "string"},
        "horizon": {"type": "number", "exclusiveMinimum": 0},
        "payload": {
            "oneOf": [
                {
                    "description": SECOND_ORDER,
                    "type": "object",
                    "required": ["g", "A"],
                    "properties": {"g": _MATRIX, "A": _MATRIX},
                },
                {
                    "description": SYMPLECTIC,
                    "type": "object",
                    "required": ["block_a", "block_b", "block_c"],
                    "properties": {"block_a": _MATRIX, "block_b": _MATRIX, "block_c": _MATRIX},
                },
                {
                    "description": LIE_ALGEBRA,
                    "type": "object",
                    "required": ["direction"],
                    "properties": {
                        "structure": {"type": "array", "items": _MATRIX},
                        "metric_signs": {"type": "array", "items": {"enum": [1, -1]}},
                        "fixture": {"enum": sorted(LIE_FIXTURES)},
                        "direction": {"type": "array", "items": {"type": "number"}},
                    },
                },
            ]
        },
        "options": {
            "type": "object",
            "properties": dict(
                {"oracle": {"type": "boolean"}},
                **{name: {"type": "number"} for name in TOLERANCE_OPTIONS},
            ),
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

# the validator reads its keys, enums and option types from PROBLEM_SCHEMA
_PROPERTIES: Dict[str, Any] = PROBLEM_SCHEMA["properties"]
_PAYLOADS: Dict[str, Dict[str, Any]] = {
    variant["description"]: variant for variant in _PROPERTIES["payload"]["oneOf"]
}
_OPTIONS: Dict[str, Any] = _PROPERTIES["options"]["properties"]
_JSON_TYPES = {"boolean": bool, "number": (int, float), "string": str}


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _has_type(value: Any, json_type: str) -> bool:
    if json_type == "number":
        return _is_number(value)
    return isinstance(value, _JSON_TYPES[json_type])


def _matrix(value: Any, where: str, size: int = -1) -> np.ndarray:
    if not isinstance(value, list) or not value or not all(isinstance(row, list) for row in value):
        raise SchemaError("matrix_shape", f"{where} must be a non-empty list of rows")
    if not all(_is_number(x) for row in value for x in row):
        raise SchemaError("matrix_entries", f"{where} must contain only numbers")
    n = len(value)
    if any(len(row) != n for row in value):
        raise SchemaError("matrix_shape", f"{where} must be square")
    if size >= 0 and n != size:
        raise SchemaError("matrix_shape", f"{where} must be {size} x {size}, got {n} x {n}")
    return np.array(value, dtype=float)


def _vector(value: Any, where: str, size: int) -> None:
    if not isinstance(value, list) or len(value) != size or not all(_is_number(x) for x in value):
        raise SchemaError("vector_shape", f"{where} must be a list of {size} numbers")


def _check_payload_keys(kind: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    variant = _PAYLOADS[kind]
    unknown = set(payload) - set(variant["properties"])
    if unknown:
        raise SchemaError("payload_keys", f"unknown {kind} payload keys: {sorted(unknown)}")
    missing = [key for key in variant["required"] if key not in payload]
    if missing:
        raise SchemaError("payload_keys", f"{kind} payload missing {missing}")
    return variant["properties"]


def _validate_lie_payload(payload: Dict[str, Any]) -> None:
    properties = _check_payload_keys(LIE_ALGEBRA, payload)
    if "fixture" in payload:
        if payload["fixture"] not in properties["fixture"]["enum"]:
            raise SchemaError(
                "fixture_name",
                f"unknown fixture '{payload['fixture']}'. Options: {properties['fixture']['enum']}",
            )
        if "structure" in payload or "metric_signs" in payload:
            raise SchemaError("payload_keys", "give either 'fixture' or 'structure'/'metric_signs'")
        dim = LIE_FIXTURES[payload["fixture"]]().dim
    else:
        for key in ("structure", "metric_signs"):
            if key not in payload:
                raise SchemaError("payload_keys", f"lie_algebra payload missing '{key}'")
        structure = payload["structure"]
        if not isinstance(structure, list) or not structure:
            raise SchemaError("structure_shape", "structure must be a non-empty n x n x n array")
        dim = len(structure)
        for k, layer in enumerate(structure):
            _matrix(layer, f"structure[{k}]", dim)
        signs = payload["metric_signs"]
        allowed = properties["metric_signs"]["items"]["enum"]
        if not isinstance(signs, list) or len(signs) != dim or any(s not in allowed for s in signs):
            raise SchemaError("metric_signs", f"metric_signs must be {dim} entries of +1 or -1")
    _vector(payload["direction"], "direction", dim)


def _validate_options(options: Any) -> None:
    if not isinstance(options, dict):
        raise SchemaError("options", "options must be an object")
    for name, value in options.items():
        if name not in _OPTIONS:
            raise SchemaError("options", f"unknown option '{name}'")
        json_type = _OPTIONS[name]["type"]
        if not _has_type(value, json_type):
            raise SchemaError("options", f"options.{name} must be a {json_type}")


def validate_problem(data: Any) -> bool:
    """Validate a decoded problem file against PROBLEM_SCHEMA.

    On top of the schema, matrices must be square and of one size, and
    structure constants, metric signs and direction must agree in dimension.

    Args:
        data: Decoded JSON value

    Returns:
        True if valid, raises SchemaError if invalid
    """
    if not isinstance(data, dict):
        raise SchemaError("problem_object", f"problem file must be an object, got {type(data).__name__}")
    unknown = set(data) - set(_PROPERTIES)
    if unknown:
        raise SchemaError("problem_keys", f"unknown top-level keys: {sorted(unknown)}")
    version = _PROPERTIES["schema_version"]["const"]
    if data.get("schema_version", version) != version:
        raise SchemaError(
            "schema_version", f"unsupported schema_version {data['schema_version']!r}, expected {version}"
        )
    kind = data.get("kind")
    if kind not in _PROPERTIES["kind"]["enum"]:
        raise SchemaError("kind", f"kind must be one of {_PROPERTIES['kind']['enum']}, got {kind!r}")
    if "name" in data and not _has_type(data["name"], "string"):
        raise SchemaError("name", "name must be a string")
    horizon = data.get("horizon")
    if not _is_number(horizon) or not np.isfinite(horizon) or horizon <= 0:
        raise SchemaError("horizon", f"horizon must be a positive number, got {horizon!r}")

    payload = data.get("payload")
    if not isinstance(payload, dict):
        raise SchemaError("payload_keys", "payload must be an object")
    if kind == LIE_ALGEBRA:
        _validate_lie_payload(payload)
    else:
        expected = _PAYLOADS[kind]["required"]
        _check_payload_keys(kind, payload)
        size = len(payload[expected[0]]) if isinstance(payload[expected[0]], list) else -1
        for key in expected:
            _matrix(payload[key], key, size)

    _validate_options(data.get("options", {}))
    return True


@dataclass
class ProblemFile:
    """A validated problem file.

    Attributes:
        kind: One of second_order, symplectic, lie_algebra
        horizon: T > 0
        payload: Matrices or structure constants for the kind
        options: Tolerance overrides and the ``oracle`` switch
        name: Optional label
    """
    kind: str
    horizon: float
    payload: Dict[str, Any]
    options: Dict[str, Any] = field(default_factory=dict)
    name: str = ""
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_dict(cls, data: Any) -> "ProblemFile":
        validate_problem(data)
        return cls(
            kind=data["kind"],
            horizon=float(data["horizon"]),
            payload=data["payload"],
            options=dict(data.get("options", {})),
            name=data.get("name", ""),
        )

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"schema_version": self.schema_version, "kind": self.kind}
        if self.name:
            result["name"] = self.name
        result["horizon"] = self.horizon
        result["payload"] = self.payload
        if self.options:
            result["options"] = self.options
        return result

    @property
    def run_oracle(self) -> bool:
        return bool(self.options.get("oracle", True))

    def tolerances(self, base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
        """Base tolerances with this file's overrides applied."""
        return base.with_overrides(**{k: v for k, v in self.options.items() if k != "oracle"})

    def second_order_system(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> GSymmetricSystem:
        g = as_form(self.payload["g"], tolerances.tol_sym)
        return GSymmetricSystem(g, self.payload["A"], self.horizon)

    def coefficient(self) -> SymplecticCoefficient:
        return SymplecticCoefficient.from_dict(self.payload)

    def lie_algebra(self) -> Tuple[LieAlgebraSpec, List[float]]:
        """The algebra (from the payload or the fixture library) and the direction X."""
        if "fixture" in self.payload:
            spec = LIE_FIXTURES[self.payload["fixture"]]()
        else:
            spec = LieAlgebraSpec.from_dict(self.payload)
        return spec, [float(x) for x in self.payload["direction"]]


class ProblemLoader:
    """Utilities for loading problem files."""

    @staticmethod
    def from_json(file_path: Union[str, Path]) -> ProblemFile:
        """Load and validate a problem file.

        Raises:
            SchemaError: If the file cannot be read, is not JSON or fails validation
        """
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as e:
            raise SchemaError("readable", f"cannot read {file_path}: {e}")
        except json.JSONDecodeError as e:
            raise SchemaError("json_syntax", f"{file_path}: {e}")
        return ProblemFile.from_dict(data)

    @staticmethod
    def list_directory(directory: Union[str, Path]) -> List[Path]:
        """Problem files (``*.json``) of a directory, sorted by name."""
        directory = Path(directory)
        if not directory.is_dir():
            raise SchemaError("readable", f"{directory} is not a directory")
        return sorted(directory.glob("*.json"))
