"""Exception types shared across the package.

Each exception carries a stable ``code`` string which the CLI copies into
the error field of its output envelope.
"""

from __future__ import annotations


class PGSTError(Exception):
    code = "ERROR"


class RangeViolation(PGSTError, ValueError):
    """An argument lies outside its documented domain."""

    code = "RANGE_ERROR"


class CertificateNotApplicable(PGSTError):
    """No obstruction certificate exists for a PGST, degenerate or non-mirror pair."""

    code = "CERT_NOT_APPLICABLE"


class BudgetExceeded(PGSTError):
    """The time search would need more evaluations than allowed.

    ``trace`` holds the result of scanning the prefix of the grid that fit
    in the budget.
    """

    code = "BUDGET_EXCEEDED"

    def __init__(self, message: str, trace=None, evaluations: int = 0):
        super().__init__(message)
        self.trace = trace
        self.evaluations = evaluations


class ClampViolation(PGSTError, ArithmeticError):
    code = "CLAMP_VIOLATION"


class FactorizationError(PGSTError, ArithmeticError):
    code = "FACTORIZATION_FAILED"
