"""Batch command line front end.

Every study the library supports is exposed as a subcommand that prints
CSV or JSON to stdout. Diagnostics go to stderr only, gated by the NK_LOG
environment variable (off|info|debug). Output is deterministic given the
flags: rerunning a command reproduces it byte for byte, and every numeric
field carries 17 significant digits so values round-trip through text.
"""

from __future__ import annotations

import argparse
import cmath
import logging
import math
import os
import sys

import numpy as np

from .asymptotic import asymptotic_kernel, density_limit, error_ratio
from .correlations import gauge_check, scaling_limit_check
from .errors import DomainError, NKernelError
from .euler_maclaurin import em_decompose
from .kernel_exact import KernelParams, density_exact, kernel
from .saddle import SummandContext, find_xstar, xstar_asymptotic
from .sampler import empirical_radial_density, sample_radii
from .specfun import ScaledComplex, digamma
from .truncation import sector_radius

__all__ = ["main"]

_LOG = logging.getLogger("nkernel.cli")

# results whose magnitude fits comfortably in float range are folded into
# plain re/im with log_scale 0; only genuinely extreme values keep a split
_FOLD_LIMIT = 500.0


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _setup_logging() -> None:
    name = os.environ.get("NK_LOG", "off").strip().lower()
    for handler in list(_LOG.handlers):
        _LOG.removeHandler(handler)
    _LOG.propagate = False
    if name in ("", "off"):
        _LOG.setLevel(logging.CRITICAL + 10)
        return
    if name == "debug":
        level = logging.DEBUG
    elif name == "info":
        level = logging.INFO
    else:
        sys.stderr.write(f"warning: NK_LOG={name!r} not recognized, logging off\n")
        _LOG.setLevel(logging.CRITICAL + 10)
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    _LOG.addHandler(handler)
    _LOG.setLevel(level)


def _complex_flag(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None


def _offsets_flag(text: str) -> tuple:
    return tuple(_complex_flag(part) for part in text.split(";"))


def _int_list_flag(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _fold(value: ScaledComplex) -> tuple:
    if value.is_zero:
        return 0.0, 0.0, 0.0
    if abs(value.abs_log) <= _FOLD_LIMIT:
        folded = value.to_complex()
        return 0.0, folded.real, folded.imag
    return value.log_scale, value.significand.real, value.significand.imag


def _require_positive_int(value: int, flag: str) -> int:
    if value < 1:
        raise DomainError(f"{flag} must be >= 1, got {value}")
    return value


def _cmd_kernel(args) -> int:
    params = KernelParams(args.alpha, args.n)
    if args.asymptotic:
        value = asymptotic_kernel(args.z, args.w, params, delta=args.delta)
    else:
        value = kernel(args.z, args.w, params)
    log_scale, re, im = _fold(value)
    _LOG.debug("kernel alpha=%g n=%d asymptotic=%s", args.alpha, args.n, args.asymptotic)
    sys.stdout.write(
        '{"log_scale": %s, "re": %s, "im": %s}\n'
        % (_fmt(log_scale), _fmt(re), _fmt(im))
    )
    return 0


def _cmd_density(args) -> int:
    params = KernelParams(args.alpha, args.n)
    points = _require_positive_int(args.points, "--points")
    if not (math.isfinite(args.rmax) and args.rmax > 0.0):
        raise DomainError(f"--rmax must be positive, got {args.rmax!r}")
    sys.stdout.write("r,exact_density,limit_density\n")
    for i in range(points):
        r = args.rmax * (i + 1) / points
        exact = density_exact(complex(r, 0.0), params)
        limit = density_limit(complex(r, 0.0), args.alpha)
        sys.stdout.write(f"{_fmt(r)},{_fmt(exact)},{_fmt(limit)}\n")
    return 0


def _slope(points) -> float | None:
    if len(points) < 2:
        return None
    count = float(len(points))
    sx = sum(x for x, _ in points)
    sy = sum(y for _, y in points)
    sxx = sum(x * x for x, _ in points)
    sxy = sum(x * y for x, y in points)
    denom = count * sxx - sx * sx
    if denom == 0.0:
        return None
    return (count * sxy - sx * sy) / denom


def _cmd_error_scaling(args) -> int:
    # place both arguments on the ray through zeta: Z = sqrt(zeta) and
    # W = conj(Z) give Z conj(W) = zeta with |Z| = |W|, so the measured
    # deviation is the one the rescaled-kernel statement controls
    z_arg = cmath.sqrt(args.zeta)
    w_arg = z_arg.conjugate()
    sys.stdout.write("N,abs_E\n")
    fit = []
    for n in args.n_list:
        params = KernelParams(args.alpha, n)
        deviation = abs(error_ratio(z_arg, w_arg, params, delta=1.0))
        sys.stdout.write(f"{n:d},{_fmt(deviation)}\n")
        if deviation > 0.0:
            fit.append((math.log(n), math.log(deviation)))
        else:
            _LOG.info("N=%d gave |E|=0, excluded from the slope fit", n)
    slope = _slope(fit)
    sys.stdout.write(
        '{"slope": %s}\n' % ("null" if slope is None else _fmt(slope))
    )
    return 0


def _cmd_correlate(args) -> int:
    params = KernelParams(args.alpha, args.n)
    comparison = scaling_limit_check(args.r, args.offsets, params)
    try:
        gauge_text = _fmt(gauge_check(args.r, args.offsets, params))
    except DomainError as exc:
        _LOG.info("gauge residual unavailable: %s", exc)
        gauge_text = "null"
    sys.stdout.write(
        '{"measured": %s, "predicted": %s, "gauge_residual": %s}\n'
        % (_fmt(comparison.measured), _fmt(comparison.predicted), gauge_text)
    )
    return 0


def _cmd_xstar(args) -> int:
    ctx = SummandContext(args.alpha, args.delta, args.n, complex(args.zeta_abs, 0.0))
    root = find_xstar(ctx)
    predicted = xstar_asymptotic(ctx)
    residual = abs(ctx.log_slope - (2.0 / args.alpha) * digamma(2.0 * root / args.alpha))
    sys.stdout.write(
        '{"xstar_root": %s, "xstar_asymptotic": %s, "residual": %s}\n'
        % (_fmt(root), _fmt(predicted), _fmt(residual))
    )
    return 0


def _cmd_em(args) -> int:
    ctx = SummandContext(args.alpha, args.delta, args.n, args.zeta)
    parts = em_decompose(ctx)
    sys.stdout.write(
        '{"r1_hat": {"re": %s, "im": %s}, "r2_hat": {"re": %s, "im": %s}, '
        '"recombination_residual": %s}\n'
        % (
            _fmt(parts.r1_hat.real),
            _fmt(parts.r1_hat.imag),
            _fmt(parts.r2_hat.real),
            _fmt(parts.r2_hat.imag),
            _fmt(parts.recombination_residual),
        )
    )
    return 0


def _cmd_sample(args) -> int:
    params = KernelParams(args.alpha, args.n)
    trials = _require_positive_int(args.trials, "--trials")
    pool = [sample_radii(params, args.seed + t) for t in range(trials)]
    edges, counts, predicted = empirical_radial_density(pool, args.bins)
    _LOG.debug("sample pooled %d draws of %d radii", trials, args.n)
    sys.stdout.write("bin_lo,bin_hi,count,predicted\n")
    for i in range(len(counts)):
        sys.stdout.write(
            f"{_fmt(edges[i])},{_fmt(edges[i + 1])},{counts[i]:d},{_fmt(predicted[i])}\n"
        )
    return 0


def _cmd_kcurve(args) -> int:
    steps = _require_positive_int(args.tau_steps, "--tau-steps")
    sys.stdout.write("tau,K\n")
    for tau in np.linspace(0.0, 2.0 * math.pi, steps):
        sys.stdout.write(f"{_fmt(tau)},{_fmt(sector_radius(args.a, float(tau)))}\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nk", description="Finite-n kernel studies for radial ensembles."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="one kernel value, exact or asymptotic")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--z", type=_complex_flag, required=True, metavar="RE,IM")
    p.add_argument("--w", type=_complex_flag, required=True, metavar="RE,IM")
    p.add_argument("--asymptotic", action="store_true")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("density", help="radial density profile vs its limit")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("error-scaling", help="asymptotic-kernel deviation vs n")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--zeta", type=_complex_flag, required=True, metavar="RE,IM")
    p.add_argument("--n-list", dest="n_list", type=_int_list_flag, required=True)
    p.set_defaults(func=_cmd_error_scaling)

    p = sub.add_parser("correlate", help="n-point scaling limit check")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_complex_flag, required=True, metavar="RE,IM")
    p.add_argument("--offsets", type=_offsets_flag, required=True, metavar="Z1;Z2;...")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("xstar", help="summand maximizer location")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--zeta-abs", dest="zeta_abs", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_xstar)

    p = sub.add_parser("em", help="Euler-Maclaurin decomposition of the sum")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--zeta", type=_complex_flag, required=True, metavar="RE,IM")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_em)

    p = sub.add_parser("sample", help="seeded radial draws vs the limit law")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bins", type=int, required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("kcurve", help="sector radius curve tau -> K")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--tau-steps", dest="tau_steps", type=int, required=True)
    p.set_defaults(func=_cmd_kcurve)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except NKernelError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
