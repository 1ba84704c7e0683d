"""Exception types shared across the package.

Every error raised by the public API derives from :class:`QsylvError`, so callers
can catch one base class.  The CLI maps these onto process exit codes.
"""

from __future__ import annotations


class QsylvError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDivisor(QsylvError):
    """Inversion of a quaternion whose squared norm is numerically zero."""


class DimensionMismatch(QsylvError):
    """Operands have incompatible shapes."""


class NotSquare(QsylvError):
    """A square matrix was required."""


class NotHermitian(QsylvError):
    """A Hermitian matrix was required."""


class InconsistentDeterminants(QsylvError):
    """The row/column determinants of a claimed-Hermitian matrix disagree."""


class InvalidSize(QsylvError):
    """An index subset request is out of range."""


class DimensionTooLarge(QsylvError):
    """A determinant expansion beyond the configured dimension cap was requested."""


class Inconsistent(QsylvError):
    """The equation failed its consistency criteria and ``force`` was not set.

    Carries the offending consistency report as ``report`` when available.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConstraintViolated(QsylvError):
    """A free-parameter matrix violates the constraint required by its kind."""


class ParseError(QsylvError):
    """Malformed matrix/quaternion JSON."""
