"""Truncated-exponential remainder analysis for the quadratic potential.

At alpha = 2 the finite-n kernel is a Taylor section of the exponential,
so its deviation from the full exponential is the whole asymptotic story.
This module evaluates the section in log space, measures the relative
remainder, and solves for the sector radius inside which the remainder
stays uniformly small.
"""

from __future__ import annotations

import cmath
import math

from ._kernels import active_impls
from .errors import DomainError, NumericalError
from .specfun import ScaledComplex

__all__ = ["truncated_exp", "remainder_error", "sector_radius"]

_SCAN_STEP = 0.01
_SCAN_CAP = 1.0e6
_ROOT_TOL = 1.0e-12


def _check_n(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    return n


def truncated_exp(zeta: complex, n: int) -> ScaledComplex:
    """Sum of the first n terms of n*zeta*exp(n*zeta), i.e.
    sum_{j=1..n} (n zeta)^j / (j-1)!, evaluated in log space."""
    n = _check_n(n)
    zeta = complex(zeta)
    if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
        raise DomainError(f"zeta must be finite, got {zeta!r}")
    if zeta == 0:
        return ScaledComplex.ZERO
    impls = active_impls()
    # term j: exp(j ln(n|zeta|) - lnGamma(j)) with phase j arg(zeta)
    m, re, im = impls["series_sum"](
        n, math.log(n * abs(zeta)), 0.0, 1.0, math.atan2(zeta.imag, zeta.real), 0.0
    )
    return ScaledComplex.from_parts(m, complex(re, im))


def remainder_error(zeta: complex, n: int) -> complex:
    """Relative deviation of the n-term section from n*zeta*exp(n*zeta)."""
    n = _check_n(n)
    zeta = complex(zeta)
    if zeta == 0:
        raise DomainError("remainder error is undefined at zeta = 0")
    section = truncated_exp(zeta, n)
    full = ScaledComplex.from_log_phase(
        math.log(n * abs(zeta)) + n * zeta.real, math.atan2(zeta.imag, zeta.real) + n * zeta.imag
    )
    return section.ratio_to(full) - 1.0


def sector_radius(a: float, tau: float) -> float:
    """Smallest K > 0 with K exp(1 - (1-a) K cos(tau/2)) = 1.

    The sector of half-opening tau/2 and radius below this K is where the
    relative remainder stays O(1/sqrt(n)) uniformly; a in (0,1) tunes how
    much of the exponential decay is spent on uniformity."""
    a = float(a)
    tau = float(tau)
    if not (0.0 < a < 1.0):
        raise DomainError(f"a must lie strictly inside (0, 1), got {a!r}")
    if not (0.0 <= tau <= 2.0 * math.pi):
        raise DomainError(f"tau must lie in [0, 2*pi], got {tau!r}")
    slope = (1.0 - a) * math.cos(0.5 * tau)

    def phi(k: float) -> float:
        return math.log(k) + 1.0 - slope * k

    # phi(0.01) < 0 always, so step outward to the first sign change and
    # bisect; the equation may have a second root further out, which the
    # left-to-right scan never reaches.
    hi = _SCAN_STEP
    while phi(hi) < 0.0:
        hi += _SCAN_STEP
        if hi > _SCAN_CAP:
            raise NumericalError(
                f"no sector radius below {_SCAN_CAP:g} for a={a!r}, tau={tau!r}"
            )
    lo = max(hi - _SCAN_STEP, 1.0e-12)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if phi(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    residual = abs(root * math.exp(1.0 - slope * root) - 1.0)
    if residual >= _ROOT_TOL:
        raise NumericalError(
            f"sector radius residual {residual:.3e} at a={a!r}, tau={tau!r}"
        )
    return root
