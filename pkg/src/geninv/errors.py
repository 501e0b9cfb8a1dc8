"""Exception types.

Negative mathematical answers (no inverse, not regular, not related) are
*values*, see :mod:`geninv.results`; the classes here are faults.
"""

from __future__ import annotations


class GeninvError(Exception):
    """Base class for all library faults."""


class UsageError(GeninvError, ValueError):
    """Malformed input, mixed-ring operands, bad literal, bad argument."""


class CapabilityError(GeninvError):
    """The requested decision is not available for this ring."""


class PreconditionError(GeninvError):
    """A theorem hypothesis or caller-supplied witness failed its check."""


class InvariantViolation(GeninvError, AssertionError):
    """An internal consistency check failed.

    Raised when a computed object does not satisfy the equations it is
    supposed to satisfy. Seeing this means a bug (or a false theorem).
    """
