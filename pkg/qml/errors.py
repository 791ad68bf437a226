"""
Library exceptions.

Every error raised by the library derives from QMLError.  Argument and
validation errors also derive from ValueError; numeric failures derive from
ArithmeticError.  The CLI maps the two families onto distinct exit codes.
"""

from __future__ import annotations

from pathlib import Path


class QMLError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------------------
# Argument / validation family  (CLI exit code 2)
# ---------------------------------------------------------------------------

class ArgumentError(QMLError, ValueError):
    """An argument is malformed or outside its domain."""


class CapacityError(ArgumentError):
    """The requested register exceeds the configured qubit cap."""

    def __init__(self, num_qubits: int, limit: int) -> None:
        super().__init__(f"{num_qubits} qubits exceeds the configured cap of {limit}")
        self.num_qubits = num_qubits
        self.limit = limit


class UnsupportedGateError(ArgumentError):
    """A gate cannot be differentiated by the parameter-shift rule."""


class ValidationError(QMLError, ValueError):
    """An object violates one of its invariants."""


class PreconditionError(ValidationError):
    """A numerically verified precondition failed."""

    def __init__(self, message: str, value: float) -> None:
        super().__init__(f"{message} (offending value {value:.6g})")
        self.value = value


class ParseError(ValidationError):
    """A data or config file could not be parsed."""

    def __init__(self, path: str | Path, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


# ---------------------------------------------------------------------------
# Numeric family  (CLI exit code 3)
# ---------------------------------------------------------------------------

class NumericError(QMLError, ArithmeticError):
    """A numeric computation could not be completed."""


class SingularityError(NumericError):
    """A matrix that must be invertible (or well conditioned) is not."""


class DegenerateInputError(NumericError):
    """An input has zero norm, zero variance, or no admissible entries."""


class NoSolutionError(NumericError):
    """A search problem has an empty solution set."""
