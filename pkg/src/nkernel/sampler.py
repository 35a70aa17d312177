"""Seeded Monte Carlo sampling of the eigenvalue moduli.

For the rotation-invariant ensemble the set of point moduli equals in
distribution a family of independent draws R_j, j = 1..n, with
R_j^alpha ~ Gamma(shape 2j/alpha, rate n). Only radial statistics are in
scope: the distributional identity covers the moduli set, not the joint
law with angles, so no planar samples are produced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import active_impls
from .errors import DomainError
from .kernel_exact import KernelParams

__all__ = ["RadialSample", "sample_radii", "empirical_radial_density"]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class RadialSample:
    """One draw of the n moduli; identical (params, seed) reproduce the
    radii bit for bit."""

    radii: np.ndarray
    params: KernelParams
    seed: int


def sample_radii(params: KernelParams, seed: int) -> RadialSample:
    """Draw the n moduli for the given seed (any integer; used mod 2^64)."""
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    radii = active_impls()["radii"](
        params.n, params.alpha, float(params.n), np.uint64(seed & _MASK64)
    )
    return RadialSample(radii, params, seed)


def empirical_radial_density(pool, bins: int):
    """Histogram a pool of RadialSample draws against the limiting radial
    marginal.

    Returns (edges, counts, predicted): equal-width bins on
    [0, 1.2 (2/alpha)^(1/alpha)], observed counts, and per-bin integrals of
    the limiting marginal n (alpha^2/2) r^(alpha-1) (zero beyond the
    support edge) times the number of draws."""
    if isinstance(pool, RadialSample):
        pool = [pool]
    else:
        pool = list(pool)
    if not pool:
        raise DomainError("empty sample pool")
    if not all(isinstance(s, RadialSample) for s in pool):
        raise DomainError("pool must contain RadialSample values")
    params = pool[0].params
    if any(s.params != params for s in pool):
        raise DomainError("pooled samples must share identical params")
    if not isinstance(bins, int) or isinstance(bins, bool) or bins < 4:
        raise DomainError(f"bins must be an integer >= 4, got {bins!r}")
    a, n = params.alpha, params.n
    edge = (2.0 / a) ** (1.0 / a)
    edges = np.linspace(0.0, 1.2 * edge, bins + 1)
    radii = np.concatenate([s.radii for s in pool])
    counts, _ = np.histogram(radii, edges)
    # per-sample expected count in [lo, hi]: (n alpha / 2) (hi^alpha - lo^alpha)
    # clipped at the support edge, which integrates to n over the support
    clipped = np.minimum(edges, edge)
    cdf = 0.5 * n * a * clipped**a
    predicted = len(pool) * np.diff(cdf)
    return edges, counts, predicted
