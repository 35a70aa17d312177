"""Scaled complex arithmetic and the gamma-family special functions.

The finite-N kernel routinely produces values like exp(+-40000), so every
quantity that can leave the float range travels as a ScaledComplex: a pair
(log_scale, significand) representing exp(log_scale) * significand. The
canonical form keeps |significand| in [1, e) and log_scale an integer-valued
float (the floor of the value's natural log-modulus); zero is (0.0, 0j).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import active_impls
from .errors import DomainError, RangeError

__all__ = ["ScaledComplex", "log_gamma", "digamma", "scaled_sum"]


def _check_finite_float(x, what):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"{what} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number exp(log_scale) * significand in canonical form.

    Canonical means 1 <= |significand| < e and log_scale = floor(log|value|),
    except for the zero value which is exactly (0.0, 0j). Construct through
    from_value / from_log_phase / from_parts; the raw constructor does not
    normalize.
    """

    log_scale: float
    significand: complex

    ZERO: "ScaledComplex" = None  # set right after the class body

    @staticmethod
    def from_value(value) -> "ScaledComplex":
        value = complex(value)
        if value == 0:
            return ScaledComplex.ZERO
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"cannot scale non-finite value {value!r}")
        return ScaledComplex.from_log_phase(math.log(abs(value)), math.atan2(value.imag, value.real))

    @staticmethod
    def from_log_phase(log_mod: float, phase: float) -> "ScaledComplex":
        log_mod = float(log_mod)
        if log_mod == -math.inf:
            return ScaledComplex.ZERO
        if math.isnan(log_mod) or log_mod == math.inf:
            raise DomainError(f"log-modulus must be finite or -inf, got {log_mod!r}")
        phase = _check_finite_float(phase, "phase")
        scale = math.floor(log_mod)
        mag = math.exp(log_mod - scale)
        return ScaledComplex(scale, complex(mag * math.cos(phase), mag * math.sin(phase)))

    @staticmethod
    def from_parts(log_scale: float, significand) -> "ScaledComplex":
        significand = complex(significand)
        if significand == 0:
            return ScaledComplex.ZERO
        log_scale = _check_finite_float(log_scale, "log_scale")
        if not (math.isfinite(significand.real) and math.isfinite(significand.imag)):
            raise DomainError(f"significand must be finite, got {significand!r}")
        # already-canonical input passes through bit-for-bit, so normalizing
        # is idempotent instead of wobbling in the last ulp
        if log_scale.is_integer() and 1.0 <= abs(significand) < math.e:
            return ScaledComplex(log_scale, significand)
        log_mod = log_scale + math.log(abs(significand))
        return ScaledComplex.from_log_phase(log_mod, math.atan2(significand.imag, significand.real))

    @property
    def is_zero(self) -> bool:
        return self.significand == 0

    @property
    def abs_log(self) -> float:
        """Natural log of the modulus (-inf for zero)."""
        if self.is_zero:
            return -math.inf
        return self.log_scale + math.log(abs(self.significand))

    @property
    def phase(self) -> float:
        return math.atan2(self.significand.imag, self.significand.real)

    def to_complex(self) -> complex:
        """The plain complex value; RangeError if it overflows floats."""
        if self.is_zero:
            return 0j
        try:
            scale = math.exp(self.log_scale)
        except OverflowError:
            scale = math.inf
        if math.isinf(scale):
            raise RangeError(
                f"value exp({self.log_scale:.6g}) * {self.significand!r} "
                "overflows the float range",
                scaled=self,
            )
        return scale * self.significand

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.log_scale, self.significand.conjugate())

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(self.log_scale, -self.significand)

    def _coerce(self, other):
        if isinstance(other, ScaledComplex):
            return other
        return ScaledComplex.from_value(other)

    def __mul__(self, other) -> "ScaledComplex":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return ScaledComplex.ZERO
        return ScaledComplex.from_parts(
            self.log_scale + other.log_scale, self.significand * other.significand
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        other = self._coerce(other)
        if other.is_zero:
            raise DomainError("division by a zero ScaledComplex")
        if self.is_zero:
            return ScaledComplex.ZERO
        return ScaledComplex.from_parts(
            self.log_scale - other.log_scale, self.significand / other.significand
        )

    def ratio_to(self, other: "ScaledComplex") -> complex:
        """self / other as a plain complex (RangeError on overflow)."""
        return (self / other).to_complex()


ScaledComplex.ZERO = ScaledComplex(0.0, 0j)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0, full relative accuracy through the zeros
    at x = 1 and x = 2."""
    x = float(x)
    if math.isnan(x) or x <= 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    return float(active_impls()["lgamma"](x))


def digamma(x: float) -> float:
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    x = float(x)
    if math.isnan(x) or x <= 0.0 or math.isinf(x):
        raise DomainError(f"digamma requires finite x > 0, got {x!r}")
    return float(active_impls()["digamma"](x))


def scaled_sum(terms) -> ScaledComplex:
    """Sum of terms given as (log_modulus, phase) pairs (ScaledComplex
    values are accepted too), evaluated with the peak modulus factored out.

    A log-modulus of -inf contributes zero. NaN anywhere is a DomainError.
    The empty sum is zero.
    """
    logs = []
    phases = []
    for term in terms:
        if isinstance(term, ScaledComplex):
            if term.is_zero:
                continue
            lm, ph = term.abs_log, term.phase
        else:
            lm, ph = term
        lm = float(lm)
        ph = float(ph)
        if math.isnan(lm) or math.isnan(ph) or math.isinf(ph):
            raise DomainError(f"invalid summand (log_modulus={lm!r}, phase={ph!r})")
        if lm == math.inf:
            raise DomainError("summand has infinite modulus")
        if lm == -math.inf:
            continue
        logs.append(lm)
        phases.append(ph)
    if not logs:
        return ScaledComplex.ZERO
    lm = np.asarray(logs)
    ph = np.asarray(phases)
    m = float(lm.max())
    w = np.exp(lm - m)
    re = float(w @ np.cos(ph))
    im = float(w @ np.sin(ph))
    return ScaledComplex.from_parts(m, complex(re, im))
