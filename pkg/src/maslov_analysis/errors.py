"""Exception hierarchy for spectral analysis.

Validation failures derive from ``ValueError`` so callers that already guard
input with ``except ValueError`` keep working. Every error names the invariant
it reports on, which the CLI prints and maps to an exit code.
"""

from typing import Any, Dict, Optional


class MaslovAnalysisError(Exception):
    """Base class for all errors raised by the package.

    Attributes:
        invariant: Machine-readable name of the violated invariant
        details: Diagnostics (residuals, tolerances, offending values)
    """

    exit_code = 1

    def __init__(self, invariant: str, message: str, details: Optional[Dict[str, Any]] = None):
        self.invariant = invariant
        self.message = message
        self.details = dict(details or {})
        super().__init__(f"[{invariant}] {message}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert the error to a dictionary for reports."""
        return {
            "type": type(self).__name__,
            "invariant": self.invariant,
            "message": self.message,
            "details": {k: _plain(v) for k, v in self.details.items()},
        }


class SchemaError(MaslovAnalysisError, ValueError):
    """Problem file does not match the input schema."""

    exit_code = 2


class ValidationError(MaslovAnalysisError, ValueError):
    """A mathematical precondition of the input does not hold."""

    exit_code = 3


class DegenerateFormError(ValidationError):
    pass


class SymmetryError(ValidationError):
    pass


class HorizonError(ValidationError):
    pass


class AntisymmetryError(ValidationError):
    pass


class JacobiIdentityError(ValidationError):
    pass


class BiInvarianceError(ValidationError):
    pass


class ClassificationError(ValidationError):
    """Symplectic coefficient is not in the class an operation requires."""


class IdentityRefusal(ValidationError):
    """Structure constants fail the identities the Pfaffian formula needs."""


class NumericError(MaslovAnalysisError, ArithmeticError):
    """Floating point computation could not meet its tolerances."""

    exit_code = 4


class SpectrumError(NumericError):
    pass


class IllConditionedError(NumericError):
    pass


class SeriesError(NumericError):
    pass


class OracleError(NumericError):
    pass


class ConsistencyError(NumericError):
    """Two computations that must agree did not."""


def _plain(value: Any) -> Any:
    """Make diagnostics JSON friendly."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
