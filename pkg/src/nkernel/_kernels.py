"""Dual-backend numeric core.

Every hot loop in the package funnels through the small set of functions
defined here: scalar log-gamma / digamma, max-factored log-domain series
sums, per-unit-interval Gauss-Legendre sums, and the gamma-variate radius
sampler. Each function exists in two interchangeable builds:

* a numba build, where the source below is compiled with ``@njit`` (helpers
  are passed in as closure arguments so the compiled functions call compiled
  callees), and
* a pure numpy/python build of the same algorithms (vectorized where it
  matters, the identical scalar source where bit-stability matters).

The active build is chosen once, lazily: numba unless the environment
variable ``NKERNEL_NO_JIT`` is set to a truthy value or numba is
unavailable. Both builds are importable side by side for the benchmark and
the equivalence tests; the sampler is bit-identical across them by
construction.

Nothing here validates arguments. The public wrappers in ``specfun`` and
the higher modules own the contracts.
"""

from __future__ import annotations

import math
import os

import numpy as np

HALF_LN_2PI = 0.9189385332046727418
EULER_GAMMA = 0.57721566490153286061

# Stirling tail of ln Gamma, coefficients of r^(2k+1) with r = 1/x, applied
# for x >= 12 where the truncation error is below 1e-19.
_STIR = np.array([
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
])

# Asymptotic tail of digamma, coefficients of u^(k+1) with u = 1/y^2,
# applied for y >= 10.
_DG = np.array([
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
])

# Taylor coefficients of ln Gamma(1+t) beyond the linear term: coefficient
# of t^(k+2) is _T1[k]. Used for |t| < 0.06 so the relative error stays
# ~1e-16 even though ln Gamma vanishes at t = 0.
_T1 = np.array([
    0.8224670334241132182, -0.4006856343865314285, 0.2705808084277845479,
    -0.2073855510286739853, 0.16955717699740819, -0.1440498967688461181,
    0.1255096695247430424, -0.1113342658695646905, 0.1000994575127818085,
    -0.09095401714582904223, 0.08335384054610900402, -0.07693251641135219147,
    0.07143294629536133606,
])

# Same for ln Gamma(2+t) around the other zero.
_T2 = np.array([
    0.3224670334241132182, -0.06735230105319809513, 0.02058080842778454788,
    -0.007385551028673985266, 0.002890510330741523286,
    -0.001192753911703260977, 0.0005096695247430424223,
    -0.0002231547584535793798, 0.00009945751278180853371,
    -0.0000449262367381331417, 0.00002050721277567069155,
    -9.439488275268395904e-6, 4.374866789907487804e-6,
])


def _lgamma_scalar(x):
    # assumes x > 0; relative accuracy holds through the zeros at 1 and 2
    t = x - 1.0
    if -0.06 < t < 0.06:
        acc = 0.0
        for k in range(12, -1, -1):
            acc = _T1[k] + acc * t
        return -EULER_GAMMA * t + t * t * acc
    t = x - 2.0
    if -0.06 < t < 0.06:
        acc = 0.0
        for k in range(12, -1, -1):
            acc = _T2[k] + acc * t
        return (1.0 - EULER_GAMMA) * t + t * t * acc
    shift = 0.0
    y = x
    while y < 12.0:
        shift -= math.log(y)
        y += 1.0
    r = 1.0 / y
    r2 = r * r
    s = 0.0
    for k in range(7, -1, -1):
        s = _STIR[k] + s * r2
    s *= r
    return shift + (y - 0.5) * math.log(y) - y + HALF_LN_2PI + s


def _digamma_scalar(x):
    # assumes x > 0
    shift = 0.0
    y = x
    while y < 10.0:
        shift -= 1.0 / y
        y += 1.0
    u = 1.0 / (y * y)
    h = 0.0
    for k in range(6, -1, -1):
        h = _DG[k] + h * u
    return shift + math.log(y) - 0.5 / y - u * h


def _make_lgamma_vec(lg):
    def lgamma_vec(xs):
        out = np.empty(xs.shape[0])
        for i in range(xs.shape[0]):
            out[i] = lg(xs[i])
        return out

    return lgamma_vec


def _lgamma_vec_np(xs):
    x = np.asarray(xs, dtype=np.float64)
    out = np.empty_like(x)
    t1 = x - 1.0
    m1 = np.abs(t1) < 0.06
    t2 = x - 2.0
    m2 = (np.abs(t2) < 0.06) & ~m1
    rest = ~(m1 | m2)
    if m1.any():
        t = t1[m1]
        acc = np.zeros_like(t)
        for k in range(12, -1, -1):
            acc = _T1[k] + acc * t
        out[m1] = -EULER_GAMMA * t + t * t * acc
    if m2.any():
        t = t2[m2]
        acc = np.zeros_like(t)
        for k in range(12, -1, -1):
            acc = _T2[k] + acc * t
        out[m2] = (1.0 - EULER_GAMMA) * t + t * t * acc
    if rest.any():
        y = x[rest].copy()
        shift = np.zeros_like(y)
        while True:
            low = y < 12.0
            if not low.any():
                break
            shift[low] -= np.log(y[low])
            y[low] += 1.0
        r2 = 1.0 / (y * y)
        s = np.zeros_like(y)
        for k in range(7, -1, -1):
            s = _STIR[k] + s * r2
        s /= y
        out[rest] = shift + (y - 0.5) * np.log(y) - y + HALF_LN_2PI + s
    return out


def _make_series_sum(lg):
    def series_sum(n, p, q, s, ph_slope, ph_off):
        # sum_{j=1..n} exp(j p + q - lnGamma(j s)) e^{i (j ph_slope + ph_off)}
        # returned as (peak log-magnitude m, re, im) with the peak factored out
        lm = np.empty(n)
        m = -np.inf
        for i in range(n):
            j = float(i + 1)
            v = j * p + q - lg(j * s)
            lm[i] = v
            if v > m:
                m = v
        re = 0.0
        im = 0.0
        for i in range(n):
            j = float(i + 1)
            w = math.exp(lm[i] - m)
            ph = j * ph_slope + ph_off
            re += w * math.cos(ph)
            im += w * math.sin(ph)
        return m, re, im

    return series_sum


def _series_sum_np(n, p, q, s, ph_slope, ph_off):
    j = np.arange(1.0, float(n) + 0.5)
    lm = j * p + q - _lgamma_vec_np(j * s)
    m = float(lm.max())
    w = np.exp(lm - m)
    ph = j * ph_slope + ph_off
    return m, float(w @ np.cos(ph)), float(w @ np.sin(ph))


def _make_unit_interval_sums(lg):
    def unit_interval_sums(n, p, s, ph_slope, nodes, wts):
        # Gauss-Legendre integral of exp(x p - lnGamma(s x) + i x ph_slope)
        # over [j, j+1] for j = 1..n. The midpoint magnitude is factored out
        # so the weighted node values stay within exp(+-|p|/2) of unity.
        ilm = np.empty(n)
        iph = np.empty(n)
        for i in range(n):
            j = float(i + 1)
            mid = j + 0.5
            l0 = mid * p - lg(s * mid)
            are = 0.0
            aim = 0.0
            for k in range(nodes.shape[0]):
                x = j + nodes[k]
                w = wts[k] * math.exp(x * p - lg(s * x) - l0)
                phx = x * ph_slope
                are += w * math.cos(phx)
                aim += w * math.sin(phx)
            mod = math.hypot(are, aim)
            if mod == 0.0:
                ilm[i] = -np.inf
                iph[i] = 0.0
            else:
                ilm[i] = l0 + math.log(mod)
                iph[i] = math.atan2(aim, are)
        return ilm, iph

    return unit_interval_sums


def _unit_interval_sums_np(n, p, s, ph_slope, nodes, wts):
    j = np.arange(1.0, float(n) + 0.5)
    x = j[:, None] + nodes[None, :]
    l0 = (j + 0.5) * p - _lgamma_vec_np(s * (j + 0.5))
    lx = x * p - _lgamma_vec_np((s * x).ravel()).reshape(x.shape) - l0[:, None]
    w = wts[None, :] * np.exp(lx)
    phx = x * ph_slope
    are = (w * np.cos(phx)).sum(axis=1)
    aim = (w * np.sin(phx)).sum(axis=1)
    mod = np.hypot(are, aim)
    safe = np.where(mod > 0.0, mod, 1.0)
    ilm = np.where(mod > 0.0, l0 + np.log(safe), -np.inf)
    iph = np.where(mod > 0.0, np.arctan2(aim, are), 0.0)
    return ilm, iph


def _make_grid_logmod(lg):
    def grid_logmod(xs, p, q, s):
        out = np.empty(xs.shape[0])
        for i in range(xs.shape[0]):
            x = xs[i]
            out[i] = x * p + q - lg(s * x)
        return out

    return grid_logmod


def _grid_logmod_np(xs, p, q, s):
    x = np.asarray(xs, dtype=np.float64)
    return x * p + q - _lgamma_vec_np(s * x)


# splitmix64 mixing constants
_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 1.0 / 9007199254740992.0


def _sm_next(s):
    s = s + _SM_GAMMA
    z = s
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return s, z ^ (z >> np.uint64(31))


def _make_radii(sm_next):
    def radii(count, alpha, rate, seed):
        # j-th radius is G^(1/alpha) with G ~ Gamma(2 j / alpha, rate),
        # drawn by Marsaglia-Tsang (with the u^(1/a) boost for shape < 1)
        # from a splitmix64 stream. Rejection keeps the draws per radius
        # data-dependent, so the stream position depends on all prior draws;
        # one seed = one reproducible vector.
        out = np.empty(count)
        s = np.uint64(seed) * _MIX2 + _SM_GAMMA
        for j in range(1, count + 1):
            a = 2.0 * j / alpha
            boost = 1.0
            if a < 1.0:
                s, z = sm_next(s)
                u = float(z >> np.uint64(11)) * _U53
                if u <= 0.0:
                    u = _U53
                boost = u ** (1.0 / a)
                a = a + 1.0
            d = a - 1.0 / 3.0
            c = 1.0 / math.sqrt(9.0 * d)
            while True:
                s, z1 = sm_next(s)
                s, z2 = sm_next(s)
                u1 = float(z1 >> np.uint64(11)) * _U53
                u2 = float(z2 >> np.uint64(11)) * _U53
                if u1 <= 0.0:
                    u1 = _U53
                x = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
                v = 1.0 + c * x
                if v <= 0.0:
                    continue
                v = v * v * v
                s, z3 = sm_next(s)
                u = float(z3 >> np.uint64(11)) * _U53
                if u <= 0.0:
                    u = _U53
                x2 = x * x
                if u < 1.0 - 0.0331 * x2 * x2 or math.log(u) < 0.5 * x2 + d * (
                    1.0 - v + math.log(v)
                ):
                    g = d * v * boost / rate
                    out[j - 1] = g ** (1.0 / alpha)
                    break
        return out

    return radii


def _wrap_errstate(fn):
    # scalar uint64 wraparound warns under plain numpy; the wrap is intended
    def wrapped(count, alpha, rate, seed):
        with np.errstate(over="ignore"):
            return fn(count, alpha, rate, seed)

    return wrapped


def _numpy_impls():
    return {
        "name": "numpy",
        "lgamma": _lgamma_scalar,
        "digamma": _digamma_scalar,
        "lgamma_vec": _lgamma_vec_np,
        "series_sum": _series_sum_np,
        "unit_interval_sums": _unit_interval_sums_np,
        "grid_logmod": _grid_logmod_np,
        "radii": _wrap_errstate(_make_radii(_sm_next)),
    }


_numba_cache = None


def _numba_impls():
    global _numba_cache
    if _numba_cache is None:
        from numba import njit

        def jit(fn):
            return njit(cache=True)(fn)

        lg = jit(_lgamma_scalar)
        _numba_cache = {
            "name": "numba",
            "lgamma": lg,
            "digamma": jit(_digamma_scalar),
            "lgamma_vec": jit(_make_lgamma_vec(lg)),
            "series_sum": jit(_make_series_sum(lg)),
            "unit_interval_sums": jit(_make_unit_interval_sums(lg)),
            "grid_logmod": jit(_make_grid_logmod(lg)),
            "radii": jit(_make_radii(jit(_sm_next))),
        }
    return _numba_cache


def _jit_disabled():
    flag = os.environ.get("NKERNEL_NO_JIT", "").strip().lower()
    return flag not in ("", "0", "false", "no", "off")


_active = None


def active_impls():
    global _active
    if _active is None:
        if _jit_disabled():
            _active = _numpy_impls()
        else:
            try:
                _active = _numba_impls()
            except ImportError:
                _active = _numpy_impls()
    return _active


def backend_name():
    """Name of the active numeric build: 'numba' or 'numpy'."""
    return active_impls()["name"]
