"""Determinantal n-point correlations and their bulk scaling limit.

The n-point intensity is the determinant of the kernel matrix
[K(z_i, z_j)]. Points separated on the local scale 1/sqrt(pi K(r, r))
around a bulk point r have correlations converging to determinants of the
Gaussian limit kernel; gauge_check verifies the determinant's invariance
under the diagonal phase conjugation that the expansion of the kernel
exponent produces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .asymptotic import segal_bargmann
from .errors import (
    DegenerateConfigError,
    DomainError,
    InternalConsistencyError,
)
from .kernel_exact import KernelParams, kernel
from .specfun import ScaledComplex, scaled_sum

__all__ = [
    "CorrelationResult",
    "LimitComparison",
    "kernel_matrix",
    "det_scaled",
    "scaled_points",
    "scaling_limit_check",
    "gauge_check",
]

_MAX_POINTS = 12
_EDGE_MARGIN = 1e-3
_GATE_K = 10.0


@dataclass(frozen=True, eq=False)
class CorrelationResult:
    """Kernel matrix of a point configuration, split into a common log
    scale and a well-conditioned significand matrix; det_value and
    limit_prediction are filled by the routines that compute them."""

    points: tuple
    matrix_log_scale: float
    matrix_significand: np.ndarray
    det_value: ScaledComplex | None = None
    limit_prediction: float | None = None


@dataclass(frozen=True)
class LimitComparison:
    """Normalized correlation determinant against its scaling limit."""

    measured: float
    predicted: float


def _check_points(points):
    pts = [complex(z) for z in points]
    if not 1 <= len(pts) <= _MAX_POINTS:
        raise DomainError(
            f"need between 1 and {_MAX_POINTS} points, got {len(pts)}"
        )
    for z in pts:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"points must be finite, got {z!r}")
    return pts


def kernel_matrix(points, params: KernelParams) -> CorrelationResult:
    """Hermitian matrix [K(z_i, z_j)] with the largest diagonal log-modulus
    factored out of every entry."""
    pts = _check_points(points)
    n = len(pts)
    scs = {}
    for i in range(n):
        for j in range(i, n):
            scs[i, j] = kernel(pts[i], pts[j], params)
    common = max(scs[i, i].abs_log for i in range(n))
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            sc = scs[i, j]
            if not sc.is_zero:
                m[i, j] = cmath.exp(complex(sc.abs_log - common, sc.phase))
            m[j, i] = m[i, j].conjugate()
    return CorrelationResult(tuple(pts), common, m)


def det_scaled(matrix: np.ndarray, log_scale: float = 0.0) -> ScaledComplex:
    """Determinant of (e^log_scale * matrix) by LU with partial pivoting,
    pivots accumulated in log form. A matrix singular to machine precision
    yields the zero value."""
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if not 1 <= n <= _MAX_POINTS:
        raise DomainError(f"matrix order must be between 1 and {_MAX_POINTS}")
    log_scale = float(log_scale)
    if not math.isfinite(log_scale):
        raise DomainError(f"log_scale must be finite, got {log_scale!r}")
    tiny = n * 2.3e-16 * float(np.abs(a).max(initial=0.0))
    log_acc = 0.0
    phase_acc = 0.0
    flips = 0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[piv, col]) <= tiny:
            return ScaledComplex.ZERO
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            flips += 1
        p = a[col, col]
        log_acc += math.log(abs(p))
        phase_acc += math.atan2(p.imag, p.real)
        for row in range(col + 1, n):
            a[row, col + 1 :] -= (a[row, col] / p) * a[col, col + 1 :]
    if flips % 2:
        phase_acc += math.pi
    return ScaledComplex.from_log_phase(log_acc + n * log_scale, phase_acc)


def _support_edge(alpha: float) -> float:
    return (2.0 / alpha) ** (1.0 / alpha)


def scaled_points(r: complex, offsets, params: KernelParams) -> list:
    """Configuration r + z_i / sqrt(pi K(r, r)) for the given offsets z_i.
    The center must sit strictly inside the support, at least 1e-3 away
    from the edge."""
    r = complex(r)
    edge = _support_edge(params.alpha)
    if not 0.0 < abs(r) < edge - _EDGE_MARGIN:
        raise DomainError(
            f"|r| = {abs(r):.6g} outside the open support margin "
            f"(0, {edge - _EDGE_MARGIN:.6g})"
        )
    offs = _check_points(offsets)
    krr = kernel(r, r, params)
    spacing = math.exp(-0.5 * (math.log(math.pi) + krr.abs_log))
    return [r + z * spacing for z in offs]


def scaling_limit_check(r: complex, offsets, params: KernelParams) -> LimitComparison:
    """Normalized determinant det[K(Z_i, Z_j)] / (pi K(r,r))^n at the
    rescaled configuration, against the limit det[(1/pi) exp(z_i conj(z_j)
    - |z_i|^2/2 - |z_j|^2/2)] at the offsets. For n = 2 the limit is
    cross-checked against its closed form (1/pi^2)(1 - e^(-|z_1 - z_2|^2)).
    """
    offs = _check_points(offsets)
    pts = scaled_points(r, offs, params)
    res = kernel_matrix(pts, params)
    n = len(pts)
    det = det_scaled(res.matrix_significand, res.matrix_log_scale)
    krr = kernel(complex(r), complex(r), params)
    norm = ScaledComplex.from_log_phase(
        n * (math.log(math.pi) + krr.abs_log), 0.0
    )
    measured = 0.0 if det.is_zero else (det / norm).to_complex().real
    lim = np.array(
        [[segal_bargmann(zi, zj) for zj in offs] for zi in offs], dtype=complex
    )
    det_lim = det_scaled(lim)
    predicted = 0.0 if det_lim.is_zero else det_lim.to_complex().real
    if n == 2:
        closed = (1.0 - math.exp(-abs(offs[0] - offs[1]) ** 2)) / math.pi**2
        if abs(predicted - closed) > 1e-10:
            raise InternalConsistencyError(
                f"two-point limit {predicted!r} disagrees with the closed "
                f"form {closed!r}"
            )
    return LimitComparison(measured, predicted)


def gauge_check(r: complex, offsets, params: KernelParams) -> float:
    """Relative difference |det C - det D| / |det D| between the phase-laden
    matrix C_ij = (1/pi) exp(A_ij + i sqrt(n) (lam_i - lam_j)) and its
    phase-stripped version D_ij = (1/pi) exp(A_ij), where
    A_ij = z_i conj(z_j) - |z_i|^2/2 - |z_j|^2/2 and
    lam_i = |r|^(alpha/2 + 1) Im(z_i / r)
            + (1/(2 sqrt(n))) |r|^2 (1 - 2/alpha) Im(z_i^2 / r^2).
    The two agree identically (diagonal unitary conjugation), so the
    returned value measures pure rounding. Zero by construction when r and
    all offsets are real."""
    r = complex(r)
    offs = _check_points(offsets)
    pts = scaled_points(r, offs, params)  # also validates r
    a, n = params.alpha, params.n
    # envelope gate with the pairwise products of the rescaled points
    zz = [abs(zi * zj.conjugate()) for zi in pts for zj in pts]
    zz_min, zz_max = min(zz), max(zz)
    if zz_min == 0.0 or not n > (_GATE_K / zz_min) ** (0.5 * a):
        raise DomainError(
            f"n = {n} below the expansion gate "
            f"{(_GATE_K / zz_min) ** (0.5 * a):.6g} for this configuration"
        )
    if zz_max > (2.0 / a) ** (2.0 / a) * (1.0 + 1e-12):
        raise DomainError(
            f"configuration products reach {zz_max:.6g}, beyond the "
            f"support radius {(2.0 / a) ** (2.0 / a):.6g}"
        )
    rt = math.sqrt(n)
    lam = [
        abs(r) ** (0.5 * a + 1.0) * (z / r).imag
        + (0.5 / rt) * abs(r) ** 2 * (1.0 - 2.0 / a) * ((z / r) ** 2).imag
        for z in offs
    ]
    m = len(offs)
    c = np.zeros((m, m), dtype=complex)
    d = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            a_ij = (
                offs[i] * offs[j].conjugate()
                - 0.5 * abs(offs[i]) ** 2
                - 0.5 * abs(offs[j]) ** 2
            )
            d[i, j] = cmath.exp(a_ij) / math.pi
            c[i, j] = cmath.exp(a_ij + 1j * rt * (lam[i] - lam[j])) / math.pi
    det_c = det_scaled(c)
    det_d = det_scaled(d)
    if det_d.is_zero:
        raise DegenerateConfigError(
            "phase-stripped correlation matrix is singular (repeated offsets?)"
        )
    diff = scaled_sum([det_c, (det_d.abs_log, det_d.phase + math.pi)])
    if diff.is_zero:
        return 0.0
    return math.exp(diff.abs_log - det_d.abs_log)
