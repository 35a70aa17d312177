"""Shared test oracles.

The alpha=2 kernel has the closed form (n/pi) e^{-n(|z|^2+|w|^2)/2}
sum_{k<n} (n z wbar)^k / k!, which a variable-precision sum evaluates to
full accuracy regardless of how violently the terms cancel. Working
precision is sized from the cancellation exponent n(|z wbar| - Re z wbar)
so the oracle stays exact even where double precision cannot be.
"""

import math

import mpmath as mp


def mp_kernel_alpha2(z, w, n):
    """Exact-arithmetic alpha=2 kernel value as an mpmath complex."""
    zm = mp.mpc(z)
    wm = mp.mpc(w)
    x = n * zm * mp.conj(wm)
    dps = int((abs(x) - mp.re(x)) / math.log(10.0)) + 60
    with mp.workdps(max(dps, 30)):
        s = mp.mpc(0)
        term = mp.mpc(1)
        for k in range(n):
            s += term
            term *= x / (k + 1)
        gauss = mp.e ** (-n * (abs(zm) ** 2 + abs(wm) ** 2) / 2)
        return (n / mp.pi) * s * gauss


def rel_err_mp(got, ref):
    """|got - ref| / |ref| with the reference in mpmath precision."""
    return float(abs(mp.mpc(got) - ref) / abs(ref))
