"""Exception hierarchy shared across the package.

Every error carries a machine-readable ``kind`` so front ends (CLI exit
codes, HTTP error payloads) can map failures without string matching.
"""

from __future__ import annotations


class NlgamesError(Exception):
    kind = "error"


class CapError(NlgamesError):
    """A configured size cap was exceeded (tensor dimension, answer count,
    enumeration size)."""

    kind = "cap"


class BudgetError(NlgamesError):
    """The search space exceeds the configured evaluation budget."""

    kind = "budget"


class ValidationFailure(NlgamesError):
    kind = "validation"


class ParameterError(ValidationFailure):
    kind = "parameter"


class ShapeError(ValidationFailure):
    kind = "shape"


class AlphabetError(ValidationFailure):
    kind = "alphabet"


class StrategyError(ValidationFailure):
    kind = "strategy"


class SchemaError(ValidationFailure):
    kind = "schema"


class FormatError(ValidationFailure):
    kind = "format"


class PovmError(ValidationFailure):
    """A POVM failed validation; the offending report is attached."""

    kind = "povm"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
