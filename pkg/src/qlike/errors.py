"""Exception types shared across the package."""

from __future__ import annotations


class QlikeError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(QlikeError):
    """An input file does not match the expected schema."""


class UnknownContextError(QlikeError, KeyError):
    """A context id is not present in the catalog or model."""

    def __str__(self) -> str:  # KeyError quotes its argument; keep the message plain
        return Exception.__str__(self)


class RepresentationError(QlikeError):
    """A representation was requested for data that fails its precondition.

    ``precondition`` names the violated gate (e.g. ``"double-stochasticity"``,
    ``"mixed-classification"``) so reports and exit diagnostics can carry it.
    """

    def __init__(self, precondition: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.precondition = precondition
        self.details = details or {}


class FiltrationError(QlikeError):
    """Outcome filtration cannot proceed (zero or near-zero acceptance)."""


class MissingDataError(QlikeError):
    """An operation requires optional data that was not supplied."""
