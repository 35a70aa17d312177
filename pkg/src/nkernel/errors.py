"""Exception taxonomy shared by every module.

All library errors derive from NKernelError so callers (and the CLI) can
catch one type. Validation failures raise the most specific subclass.
"""

from __future__ import annotations


class NKernelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NKernelError):
    """An argument lies outside the documented domain of a function."""


class SingularityError(DomainError):
    """The requested value sits on a genuine singularity (e.g. the origin
    of the limiting density for alpha < 2)."""


class RangeError(NKernelError):
    """A result overflowed the plain float range. Carries the scaled
    representation so the caller can still use the value."""

    def __init__(self, message: str, scaled=None):
        super().__init__(message)
        self.scaled = scaled


class NumericalError(NKernelError):
    """An iterative or adaptive procedure failed to reach its tolerance
    (root not bracketed, quadrature did not converge, ...)."""


class ContractViolationError(NKernelError):
    """A precondition that can only be checked during the computation
    turned out false (e.g. no mean-value point: the input was not convex)."""


class InternalConsistencyError(NKernelError):
    """Two internal routes to the same quantity disagree beyond tolerance."""


class DegenerateConfigError(NKernelError):
    """A point configuration is degenerate (repeated points, singular
    correlation matrix where an invertible one is required)."""
