"""Leading-order kernel asymptotics and the scaling-limit targets.

With the window exponent split alpha gamma + delta = 1 (delta in (0, 1]),
the exact kernel at arguments Z / n^gamma, W / n^gamma is approximated by

    n^(delta + 2 gamma) (alpha^2 / 4 pi) (Z Wbar)^(alpha/2 - 1)
        * exp(n^delta ((Z Wbar)^(alpha/2) - |Z|^alpha / 2 - |W|^alpha / 2)),

valid for Z Wbar in a sector around the positive axis. error_ratio measures
the relative deviation of the exact kernel from this expression. The
Gaussian limit kernel (1/pi) exp(z wbar - |z|^2/2 - |w|^2/2) and the
conformally rescaled bulk kernel live here too.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, SingularityError
from .kernel_exact import KernelParams, kernel
from .specfun import ScaledComplex

__all__ = [
    "SectorSpec",
    "in_sector",
    "asymptotic_kernel",
    "error_ratio",
    "segal_bargmann",
    "conformal_rescaled_kernel",
    "density_limit",
]


@dataclass(frozen=True)
class SectorSpec:
    """Open sector 0 < |zeta| < radius, |arg zeta| < tau / 2 (origin
    excluded, all inequalities strict)."""

    tau: float
    radius: float

    def __post_init__(self):
        tau = float(self.tau)
        radius = float(self.radius)
        if math.isnan(tau) or tau < 0.0 or tau > 2.0 * math.pi:
            raise DomainError(f"tau must lie in [0, 2 pi], got {tau!r}")
        if math.isnan(radius) or radius <= 0.0 or math.isinf(radius):
            raise DomainError(f"radius must be finite and > 0, got {radius!r}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "radius", radius)

    def contains(self, zeta: complex) -> bool:
        zeta = complex(zeta)
        if zeta == 0:
            return False
        return abs(zeta) < self.radius and abs(math.atan2(zeta.imag, zeta.real)) < 0.5 * self.tau


def in_sector(zeta: complex, spec: SectorSpec) -> bool:
    """Strict membership of zeta in the open punctured sector."""
    return spec.contains(zeta)


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if math.isnan(delta) or not (0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta!r}")
    return delta


def asymptotic_kernel(
    Z: complex, W: complex, params: KernelParams, delta: float = 1.0
) -> ScaledComplex:
    """Leading asymptotic form at window arguments Z, W, including the
    n^(delta + 2 gamma) normalization that makes it directly comparable to
    kernel(Z / n^gamma, W / n^gamma, params)."""
    delta = _check_delta(delta)
    Z = complex(Z)
    W = complex(W)
    a, n = params.alpha, params.n
    gamma = (1.0 - delta) / a
    zeta = Z * W.conjugate()
    if zeta == 0:
        if a < 2.0:
            raise SingularityError(
                "the prefactor (Z Wbar)^(alpha/2 - 1) is singular at "
                f"Z Wbar = 0 for alpha = {a} < 2"
            )
        if a == 2.0:
            # prefactor is 1; the exponential survives
            lead = -0.5 * n**delta * (abs(Z) ** a + abs(W) ** a)
            return ScaledComplex.from_log_phase(
                lead + (delta + 2.0 * gamma) * math.log(n) + math.log(a * a / (4.0 * math.pi)),
                0.0,
            )
        return ScaledComplex.ZERO  # (Z Wbar)^(alpha/2 - 1) -> 0 for alpha > 2
    la = math.log(abs(zeta))
    ph = math.atan2(zeta.imag, zeta.real)
    half = 0.5 * a
    # zeta^(alpha/2), principal branch, split into modulus and phase
    pow_mod = math.exp(half * la)
    pow_re = pow_mod * math.cos(half * ph)
    pow_im = pow_mod * math.sin(half * ph)
    nd = n**delta
    log_mod = (
        nd * (pow_re - 0.5 * (abs(Z) ** a + abs(W) ** a))
        + (delta + 2.0 * gamma) * math.log(n)
        + math.log(a * a / (4.0 * math.pi))
        + (half - 1.0) * la
    )
    phase = nd * pow_im + (half - 1.0) * ph
    return ScaledComplex.from_log_phase(log_mod, phase)


def error_ratio(
    Z: complex, W: complex, params: KernelParams, delta: float = 1.0
) -> complex:
    """Relative error of the leading asymptotics:
    kernel(Z/n^gamma, W/n^gamma) / asymptotic_kernel(Z, W) - 1."""
    delta = _check_delta(delta)
    a, n = params.alpha, params.n
    gamma = (1.0 - delta) / a
    asym = asymptotic_kernel(Z, W, params, delta)
    if asym.is_zero:
        raise DomainError("asymptotic kernel vanishes; the ratio is undefined")
    scale = n**gamma
    exact = kernel(complex(Z) / scale, complex(W) / scale, params)
    return exact.ratio_to(asym) - 1.0


def segal_bargmann(z: complex, w: complex) -> complex:
    """Gaussian limit kernel (1/pi) exp(z wbar - |z|^2/2 - |w|^2/2)."""
    z = complex(z)
    w = complex(w)
    arg = z * w.conjugate() - 0.5 * (abs(z) ** 2 + abs(w) ** 2)
    return cmath.exp(arg) / math.pi


def conformal_rescaled_kernel(z: complex, w: complex, params: KernelParams) -> complex:
    """Bulk kernel pulled back through phi(z) = (z / sqrt(n))^(2/alpha):
    phi'(z) kernel(phi(z), phi(w)) conj(phi'(w)). On the diagonal, inside
    the support, this tends to 1/pi as n grows."""
    z = complex(z)
    w = complex(w)
    a, n = params.alpha, params.n
    if a != 2.0 and (z == 0 or w == 0):
        raise DomainError(
            "conformal factor is singular (alpha > 2) or vanishing "
            "(alpha < 2) at the origin; only alpha = 2 admits z = 0"
        )
    p = 2.0 / a
    rt = math.sqrt(n)

    def _phi(v: complex) -> complex:
        return (v / rt) ** p

    def _dphi(v: complex) -> complex:
        return (p / rt) * (v / rt) ** (p - 1.0)

    sc = kernel(_phi(z), _phi(w), params)
    jac = ScaledComplex.from_value(_dphi(z)) * ScaledComplex.from_value(
        _dphi(w).conjugate()
    )
    return (sc * jac).to_complex()


def density_limit(z: complex, alpha: float) -> float:
    """Limiting macroscopic intensity (alpha^2 / 4 pi) |z|^(alpha - 2) on
    the closed disk |z| <= (2/alpha)^(1/alpha), zero outside."""
    alpha = float(alpha)
    if math.isnan(alpha) or math.isinf(alpha) or alpha <= 0.0:
        raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
    z = complex(z)
    r = abs(z)
    edge = (2.0 / alpha) ** (1.0 / alpha)
    if r > edge:
        return 0.0
    if r == 0.0:
        if alpha < 2.0:
            raise SingularityError(
                f"limit density diverges at the origin for alpha = {alpha} < 2"
            )
        if alpha == 2.0:
            return 1.0 / math.pi
        return 0.0
    return (alpha * alpha / (4.0 * math.pi)) * r ** (alpha - 2.0)
