"""Term-sequence analysis behind the kernel asymptotics.

The rescaled kernel series has terms g(j) = (n^(2 delta/alpha) zeta)^j
/ Gamma(2j/alpha). Everything the steepest-descent argument needs lives
here: evaluating g, locating the real maximizer x* of |g| through the
digamma equation, the decay of |g| away from x*, the saddle point of the
continuum phase function, and the closed leading term of the full sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._kernels import active_impls
from .errors import DomainError, NumericalError
from .specfun import ScaledComplex, digamma

__all__ = [
    "SummandContext",
    "g_eval",
    "term_sum",
    "find_xstar",
    "xstar_asymptotic",
    "gmax_asymptotic",
    "offset_decay",
    "saddle_point",
    "h_eval",
    "steepest_descent_sum",
]

_MIN_ABS_ZETA = 1e-6  # below this the maximizer machinery is not offered
_EDGE_SLACK = 1.0 + 1e-12


@dataclass(frozen=True)
class SummandContext:
    """Parameters of the term sequence: exponent alpha, window exponent
    delta in (0, 1], term count n, product variable zeta, angle scaling
    exponent beta >= 1/2, and the envelope constant k_const of the
    admissibility gate."""

    alpha: float
    delta: float
    n: int
    zeta: complex
    beta: float = 0.5
    k_const: float = 10.0

    def __post_init__(self):
        a = float(self.alpha)
        if math.isnan(a) or math.isinf(a) or a <= 0.0:
            raise DomainError(f"alpha must be finite and > 0, got {self.alpha!r}")
        d = float(self.delta)
        if math.isnan(d) or not (0.0 < d <= 1.0):
            raise DomainError(f"delta must lie in (0, 1], got {self.delta!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        z = complex(self.zeta)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"zeta must be finite, got {self.zeta!r}")
        b = float(self.beta)
        if math.isnan(b) or b < 0.5:
            raise DomainError(f"beta must be >= 1/2, got {self.beta!r}")
        k = float(self.k_const)
        if math.isnan(k) or math.isinf(k) or k <= 0.0:
            raise DomainError(f"k_const must be finite and > 0, got {self.k_const!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "k_const", k)

    @property
    def gamma(self) -> float:
        """Window exponent; alpha * gamma + delta = 1 exactly by construction."""
        return (1.0 - self.delta) / self.alpha

    @property
    def abs_zeta(self) -> float:
        return abs(self.zeta)

    @property
    def theta(self) -> float:
        """Sector angle parameter: zeta = |zeta| e^(i theta / n^beta)."""
        return math.atan2(self.zeta.imag, self.zeta.real) * self.n**self.beta

    @property
    def log_slope(self) -> float:
        """c = (2 delta / alpha) ln n + ln |zeta|, the per-index growth rate
        of log |g| before the Gamma damping."""
        if self.zeta == 0:
            raise DomainError("log slope undefined at zeta = 0")
        return (2.0 * self.delta / self.alpha) * math.log(self.n) + math.log(
            self.abs_zeta
        )

    def n_threshold(self) -> float:
        """Admissibility gate on n. For delta < 1 both envelope branches
        apply; at delta = 1 the second branch degenerates into the support
        condition |zeta| <= (2/alpha)^(2/alpha)."""
        z = self.abs_zeta
        if z == 0.0:
            raise DomainError("threshold undefined at zeta = 0")
        first = (self.k_const / z) ** (self.alpha / (2.0 * self.delta))
        if self.delta == 1.0:
            return first
        second = (0.5 * self.alpha * z ** (0.5 * self.alpha)) ** (
            1.0 / (1.0 - self.delta)
        )
        return max(first, second)

    def admissible(self) -> bool:
        z = self.abs_zeta
        if z == 0.0:
            return False
        if self.delta == 1.0 and z > (2.0 / self.alpha) ** (2.0 / self.alpha) * _EDGE_SLACK:
            return False
        return self.n > self.n_threshold()

    def require_admissible(self):
        if not self.admissible():
            raise DomainError(
                f"context outside the admissible envelope: n={self.n} must "
                f"exceed {self.n_threshold():.6g}"
                + (
                    f" and |zeta|={self.abs_zeta:.6g} must stay within the "
                    f"delta=1 radius {(2.0 / self.alpha) ** (2.0 / self.alpha):.6g}"
                    if self.delta == 1.0
                    else ""
                )
            )


def _check_x(x) -> float:
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x <= 0.0:
        raise DomainError(f"x must be finite and > 0, got {x!r}")
    return x


def g_eval(x: float, ctx: SummandContext) -> ScaledComplex:
    """g(x) = (n^(2 delta/alpha) zeta)^x / Gamma(2x/alpha), principal
    branch, as a ScaledComplex."""
    x = _check_x(x)
    if ctx.zeta == 0:
        return ScaledComplex.ZERO
    lg = active_impls()["lgamma"]
    log_mod = x * ctx.log_slope - float(lg(2.0 * x / ctx.alpha))
    return ScaledComplex.from_log_phase(log_mod, x * math.atan2(ctx.zeta.imag, ctx.zeta.real))


def _log_g_abs(x: float, ctx: SummandContext) -> float:
    # modulus profile: |g_zeta(x)| = g_|zeta|(x)
    lg = active_impls()["lgamma"]
    return x * ctx.log_slope - float(lg(2.0 * x / ctx.alpha))


def term_sum(ctx: SummandContext) -> ScaledComplex:
    """Direct sum of the terms: sum_{j=1..n} g(j)."""
    if ctx.zeta == 0:
        return ScaledComplex.ZERO
    m, re, im = active_impls()["series_sum"](
        ctx.n, ctx.log_slope, 0.0, 2.0 / ctx.alpha, math.atan2(ctx.zeta.imag, ctx.zeta.real), 0.0
    )
    return ScaledComplex.from_parts(m, complex(re, im))


def find_xstar(ctx: SummandContext) -> float:
    """Real maximizer of |g|: the unique root of
    c - (2/alpha) psi(2x/alpha) = 0, c = ctx.log_slope.

    Bisection to width 1e-8 inside [1e-12, 10 n], then two Newton steps
    with a central finite-difference derivative. The returned point meets
    the residual bound |c - (2/alpha) psi(2 x*/alpha)| < 1e-12.
    """
    if ctx.abs_zeta < _MIN_ABS_ZETA:
        raise DomainError(
            f"|zeta| = {ctx.abs_zeta:.3g} below {_MIN_ABS_ZETA}; the "
            "maximizer machinery requires |zeta| >= 1e-6"
        )
    ctx.require_admissible()
    c = ctx.log_slope
    two_over_a = 2.0 / ctx.alpha

    def f(x: float) -> float:
        return c - two_over_a * digamma(two_over_a * x)

    lo, hi = 1e-12, 10.0 * ctx.n
    if f(lo) <= 0.0 or f(hi) >= 0.0:
        raise NumericalError(
            f"maximizer not bracketed in [{lo:.3g}, {hi:.3g}] "
            f"(f(lo)={f(lo):.3g}, f(hi)={f(hi):.3g})"
        )
    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(2):
        h = 1e-6 * max(1.0, x)
        deriv = (f(x + h) - f(x - h)) / (2.0 * h)
        if deriv == 0.0:
            break
        step = f(x) / deriv
        if x - step > 0.0:
            x -= step
    if abs(f(x)) >= 1e-12:
        raise NumericalError(
            f"maximizer residual {abs(f(x)):.3g} did not reach 1e-12"
        )
    return x


def xstar_asymptotic(ctx: SummandContext) -> float:
    """Closed-form location estimate (alpha/2) |zeta|^(alpha/2) n^delta
    - alpha/4."""
    return (
        0.5 * ctx.alpha * ctx.abs_zeta ** (0.5 * ctx.alpha) * ctx.n**ctx.delta
        - 0.25 * ctx.alpha
    )


def gmax_asymptotic(ctx: SummandContext) -> ScaledComplex:
    """Leading term of the peak modulus:
    (1/sqrt(2 pi)) |zeta|^(alpha/4) n^(delta/2) exp(|zeta|^(alpha/2) n^delta).
    """
    if ctx.zeta == 0:
        raise DomainError("peak modulus undefined at zeta = 0")
    z = ctx.abs_zeta
    log_mod = (
        z ** (0.5 * ctx.alpha) * ctx.n**ctx.delta
        + 0.5 * ctx.delta * math.log(ctx.n)
        + 0.25 * ctx.alpha * math.log(z)
        - 0.5 * math.log(2.0 * math.pi)
    )
    return ScaledComplex.from_log_phase(log_mod, 0.0)


def _offset_ratio(ctx: SummandContext, multiple: float) -> float:
    xstar = find_xstar(ctx)
    off = multiple * ctx.n ** (0.5 * ctx.delta) * math.log(ctx.n)
    if xstar - off <= 0.0:
        raise DomainError(
            f"offset {off:.6g} reaches past the origin from x* = {xstar:.6g}"
        )
    return math.exp(_log_g_abs(xstar + off, ctx) - _log_g_abs(xstar, ctx))


def offset_decay(ctx: SummandContext) -> float:
    """Modulus ratio |g(x* + n^(delta/2) ln n)| / |g(x*)|, the measured form
    of the away-from-the-peak decay. Requires both offset points x* +- the
    shift to stay positive."""
    return _offset_ratio(ctx, 1.0)


def saddle_point(zeta: complex, alpha: float) -> complex:
    """Stationary point of the phase function: alpha zeta^(alpha/2) / 2,
    principal branch."""
    zeta = complex(zeta)
    if zeta == 0:
        raise DomainError("saddle point undefined at zeta = 0")
    alpha = float(alpha)
    if math.isnan(alpha) or math.isinf(alpha) or alpha <= 0.0:
        raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
    return 0.5 * alpha * cmath.exp(0.5 * alpha * cmath.log(zeta))


def h_eval(eta: complex, zeta: complex, alpha: float) -> complex:
    """Phase function h(eta) = (2 eta / alpha)
    log(alpha e zeta^(alpha/2) / (2 eta)) - |zeta|^(alpha/2), principal
    logarithms. Its real part peaks at the saddle point, where the value is
    zeta^(alpha/2) - |zeta|^(alpha/2)."""
    eta = complex(eta)
    if eta == 0:
        raise DomainError("h undefined at eta = 0")
    zeta = complex(zeta)
    if zeta == 0:
        raise DomainError("h undefined at zeta = 0")
    alpha = float(alpha)
    if math.isnan(alpha) or math.isinf(alpha) or alpha <= 0.0:
        raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
    zp = cmath.exp(0.5 * alpha * cmath.log(zeta))
    return (2.0 * eta / alpha) * cmath.log(
        alpha * math.e * zp / (2.0 * eta)
    ) - abs(zeta) ** (0.5 * alpha)


def steepest_descent_sum(ctx: SummandContext) -> ScaledComplex:
    """Closed leading term of the full term sum:
    (alpha/2) zeta^(alpha/2) n^delta exp(zeta^(alpha/2) n^delta).

    Admits zeta in the punctured disk of radius
    (2 n^(1-delta) / alpha)^(2/alpha); the angular opening scales as the
    context's theta / n^beta family parameter and is not re-checked (any
    finite theta defines an admissible family).
    """
    if ctx.zeta == 0:
        raise DomainError("the leading term degenerates at zeta = 0")
    radius = (2.0 * ctx.n ** (1.0 - ctx.delta) / ctx.alpha) ** (2.0 / ctx.alpha)
    if not ctx.abs_zeta < radius:
        raise DomainError(
            f"|zeta| = {ctx.abs_zeta:.6g} outside the sector radius "
            f"{radius:.6g}; the product variable leaves the validity region"
        )
    half = 0.5 * ctx.alpha
    la = math.log(ctx.abs_zeta)
    ph = math.atan2(ctx.zeta.imag, ctx.zeta.real)
    pow_mod = math.exp(half * la)
    nd = ctx.n**ctx.delta
    log_mod = (
        pow_mod * math.cos(half * ph) * nd
        + ctx.delta * math.log(ctx.n)
        + math.log(half * pow_mod)
    )
    phase = pow_mod * math.sin(half * ph) * nd + half * ph
    return ScaledComplex.from_log_phase(log_mod, phase)
