"""Exact finite-N correlation kernel of the radial ensemble.

The ensemble of N points in the plane carries the weight exp(-N |z|^alpha),
alpha > 0. Its correlation kernel is a sum over the orthonormalized
monomials z^(j-1), j = 1..N; every evaluation here goes through the
log-domain series core so no intermediate ever leaves the float range.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.integrate import quad

from ._kernels import active_impls
from .errors import DomainError, NumericalError
from .specfun import ScaledComplex, log_gamma

__all__ = [
    "KernelParams",
    "monomial_log_norm",
    "kernel_tilde",
    "kernel",
    "density_exact",
    "orthonormality_defect",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KernelParams:
    """Ensemble parameters: radial exponent alpha > 0 and point count n >= 1."""

    alpha: float
    n: int

    def __post_init__(self):
        alpha = self.alpha
        if not isinstance(alpha, (int, float)) or isinstance(alpha, bool):
            raise DomainError(f"alpha must be a real number, got {alpha!r}")
        alpha = float(alpha)
        if math.isnan(alpha) or math.isinf(alpha) or alpha <= 0.0:
            raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
        object.__setattr__(self, "alpha", alpha)
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")


def monomial_log_norm(j: int, params: KernelParams) -> float:
    """ln of the normalizing constant c_j making c_j z^(j-1) a unit vector
    against the weight exp(-n |z|^alpha).

    c_j = sqrt(alpha n^(2j/alpha) / (2 pi Gamma(2j/alpha))). Any j >= 1 is
    accepted: the weight does not truncate the monomial family at n.
    """
    if not isinstance(j, int) or isinstance(j, bool) or j < 1:
        raise DomainError(f"j must be an integer >= 1, got {j!r}")
    a, n = params.alpha, params.n
    return 0.5 * (
        math.log(a / _TWO_PI) - log_gamma(2.0 * j / a)
    ) + (j / a) * math.log(n)


def kernel_tilde(z: complex, w: complex, params: KernelParams) -> ScaledComplex:
    """Kernel without the Gaussian weight:
    (alpha / 2 pi) sum_{j=1..n} n^(2j/alpha) (z wbar)^(j-1) / Gamma(2j/alpha).
    """
    z = complex(z)
    w = complex(w)
    for v in (z, w):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"arguments must be finite, got {v!r}")
    a, n = params.alpha, params.n
    zeta = z * w.conjugate()
    base = math.log(a / _TWO_PI)
    if zeta == 0:
        # only the j = 1 term survives: (z wbar)^0 = 1 by convention
        return ScaledComplex.from_log_phase(
            base + (2.0 / a) * math.log(n) - log_gamma(2.0 / a), 0.0
        )
    lz = math.log(abs(zeta))
    ph = math.atan2(zeta.imag, zeta.real)
    m, re, im = active_impls()["series_sum"](
        n, (2.0 / a) * math.log(n) + lz, -lz, 2.0 / a, ph, -ph
    )
    return ScaledComplex.from_parts(m + base, complex(re, im))


def kernel(z: complex, w: complex, params: KernelParams) -> ScaledComplex:
    """Weighted kernel: kernel_tilde damped by
    exp(-n (|z|^alpha + |w|^alpha) / 2)."""
    tilde = kernel_tilde(z, w, params)
    if tilde.is_zero:
        return tilde
    gauss = -0.5 * params.n * (abs(z) ** params.alpha + abs(w) ** params.alpha)
    return ScaledComplex.from_parts(tilde.log_scale + gauss, tilde.significand)


def density_exact(z: complex, params: KernelParams) -> float:
    """One-point intensity normalized by n: kernel(z, z) / n."""
    sc = kernel(z, z, params)
    return (sc / params.n).to_complex().real


def _radial_cut(alpha: float, n: int, j: int) -> float:
    # past the cut the integrand is below the double underflow threshold:
    # n r^alpha >= 745 + 2 max(j, n) ln(1 + r)
    m = 2.0 * max(j, n)
    r = 1.0
    while n * r**alpha < 745.0 + m * math.log1p(r):
        r *= 1.2
    return r


def orthonormality_defect(j: int, k: int, params: KernelParams) -> float:
    """|<phi_j, phi_k> - delta_jk| against the weight exp(-n |z|^alpha).

    Distinct j, k are orthogonal exactly (the angular integral of
    e^{i (j-k) theta} vanishes), so only j = k needs quadrature.
    """
    for v in (j, k):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DomainError(f"indices must be integers >= 1, got {v!r}")
    if j != k:
        return 0.0
    a, n = params.alpha, params.n
    log_norm = monomial_log_norm(j, params)
    pref = 2.0 * log_norm + math.log(_TWO_PI)
    pw = 2.0 * j - 1.0

    def integrand(r: float) -> float:
        if r <= 0.0:
            return 0.0
        arg = pref + pw * math.log(r) - n * r**a
        if arg < -745.0:
            return 0.0
        return math.exp(arg)

    r_cut = _radial_cut(a, n, j)
    mode = (pw / (a * n)) ** (1.0 / a)
    pts = [mode] if 0.0 < mode < r_cut else None
    val, abserr, info, *tail = quad(
        integrand, 0.0, r_cut, points=pts, limit=200,
        epsabs=1e-12, epsrel=1e-12, full_output=1,
    )
    if tail:
        raise NumericalError(f"orthonormality quadrature did not converge: {tail[0]}")
    return abs(val - 1.0)
