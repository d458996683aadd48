"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 numerical-accuracy failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

from . import asymptotics, coefficients, lagrange
from .errors import AccuracyError, ContourError, DomainError, IntegrityError, UsageError
from .series import format_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


class _UsageExit(Exception):
    pass


def _fmt(v, precision):
    return f"{v:.{precision}g}"


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _parse_pairs(text):
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            m, x = item.split(":")
            pairs.append((int(m), float(x)))
        except ValueError:
            raise UsageError(f"cannot parse pair {item!r}; expected m:x") from None
    if not pairs:
        raise UsageError("no pairs given")
    return pairs


def cmd_coeffs(args):
    methods = [s.strip() for s in args.methods.split(",")] if args.methods else None
    try:
        table = coefficients.coefficient_table(args.n_max, methods)
    except IntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in table], indent=2))
        return EXIT_OK
    used = methods or list(coefficients.METHODS)
    print(f"# methods (all agree): {', '.join(used)}")
    rows = [(str(r.n), format_rational(r.value), _fmt(float(r.value), args.precision))
            for r in table if r.method == used[0]]
    w0 = max(1, *(len(r[0]) for r in rows))
    w1 = max(7, *(len(r[1]) for r in rows))
    print(f"{'n':>{w0}}  {'gamma_n':>{w1}}  decimal")
    for n, exact, dec in rows:
        print(f"{n:>{w0}}  {exact:>{w1}}  {dec}")
    return EXIT_OK


def _warn_small_x(x):
    if x < asymptotics.SMALL_X_WARNING:
        print(f"warning: x = {x} < {asymptotics.SMALL_X_WARNING}; remainder integrals "
              "are delicate in this regime", file=sys.stderr)


def cmd_eval(args):
    res = asymptotics.evaluate_expansion(args.m, args.x, integrals=args.integrals)
    p = args.precision
    lines = [
        f"x            = {_fmt(res.x, p)}",
        f"m            = {res.m}",
        f"gamma_star   = {_fmt(res.gamma_star, p)}",
        f"partial_sum  = {_fmt(res.partial_sum, p)}",
        f"remainder    = {_fmt(res.remainder_by_difference, p)}",
    ]
    for key in ("remainder_new_integral", "remainder_boyd_integral"):
        r = getattr(res, key)
        if r is not None:
            lines.append(f"{key[10:]:<12} = {_fmt(r.real, p)} (+- {r.error_estimate:.2e})")
    _emit(args, res.to_dict(), lines)
    return EXIT_OK


def cmd_remainder(args):
    _warn_small_x(args.x)
    r_diff = asymptotics.remainder_by_difference(args.m, args.x)
    new = asymptotics.remainder_new_integral(args.m, args.x)
    boyd = asymptotics.remainder_boyd_integral(args.m, args.x)
    p = args.precision
    payload = {
        "m": args.m,
        "x": args.x,
        "remainder": r_diff,
        "remainder_new_integral": new.to_dict(),
        "remainder_boyd_integral": boyd.to_dict(),
    }
    lines = [
        f"m, x                = {args.m}, {_fmt(args.x, p)}",
        f"by difference       = {_fmt(r_diff, p)}",
        f"new integral        = {_fmt(new.real, p)} (+- {new.error_estimate:.2e})",
        f"boyd integral       = {_fmt(boyd.real, p)} (+- {boyd.error_estimate:.2e})",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args):
    pairs = _parse_pairs(args.pairs)
    for _, x in pairs:
        if not x > 0:
            raise DomainError(f"x must be positive, got {x}")
        _warn_small_x(x)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rows = asymptotics.equivalence_report(pairs)
    p = args.precision
    lines = []
    status = EXIT_OK
    for row in rows:
        passed = row.ok and row.max_pairwise_delta < args.tol
        if not passed:
            status = EXIT_NUMERIC
        parts = [f"m={row.m} x={_fmt(row.x, p)}"]
        if row.r_diff is not None:
            parts.append(f"r_diff={_fmt(row.r_diff, p)}")
        for name, r in (("r_new", row.r_new), ("r_boyd", row.r_boyd)):
            if r is not None:
                parts.append(f"{name}={_fmt(r.real, p)}+-{r.error_estimate:.2e}")
        parts.append(f"max_rel_delta={row.max_pairwise_delta:.3e}")
        parts.append("PASS" if passed else "FAIL")
        if row.error:
            parts.append(f"({row.error})")
        lines.append("  ".join(parts))
    _emit(args, [r.to_dict() for r in rows], lines)
    return status


def cmd_invert(args):
    try:
        res = lagrange.reconstruct(args.u, args.m)
    except ContourError as exc:
        print(f"error: contour preflight failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    p = args.precision
    r = res.remainder
    lines = [
        f"u, m          = {_fmt(res.u, p)}, {res.m}",
        f"series        = {_fmt(res.truncated_value, p)}",
        f"correction    = {_fmt(res.correction_term, p)}",
        f"remainder     = {_fmt(r.real, p)} {r.imag:+.3e}i (+- {r.error_estimate:.2e})",
        f"reconstructed = {_fmt(res.reconstructed_t, p)}",
        f"newton        = {_fmt(res.newton, p)}",
        f"defect        = {res.defect:.3e}",
    ]
    _emit(args, res.to_dict(), lines)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--precision", type=int, default=15,
                        help="significant digits for floats in text output (default: 15); "
                             "exact rationals are always printed in full")

    parser = _Parser(prog="gammastar",
                     description="Stirling coefficients and the remainder of the "
                                 "asymptotic expansion of the scaled gamma function.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="exact gamma_n table, all methods cross-checked")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--methods", default=None,
                   help=f"comma-separated subset of: {', '.join(coefficients.METHODS)}")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("eval", parents=[common], help="Gamma*(x), partial sum and remainder")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--integrals", action="store_true",
                   help="also evaluate both double-integral remainders")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("remainder", parents=[common],
                       help="remainder R_m(x) by difference and by both integrals")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_remainder)

    p = sub.add_parser("verify", parents=[common],
                       help="check agreement of the remainder routes on m:x pairs")
    p.add_argument("--pairs", required=True, help="comma-separated m:x pairs, e.g. 2:8,1:5")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="relative tolerance on the largest pairwise difference (default: 1e-6)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invert", parents=[common],
                       help="Lagrange inversion with remainder for e^t - 1 - t = u^2/2")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_invert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "n_max") and args.n_max < 0:
            raise UsageError("--n-max must be nonnegative")
        if getattr(args, "m", 1) < 1:
            raise UsageError("--m must be a positive integer")
        if hasattr(args, "x") and not (args.x > 0 and math.isfinite(args.x)):
            raise DomainError(f"x must be a positive finite number, got {args.x}")
        return args.func(args)
    except _UsageExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, ContourError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        r = getattr(exc, "result", None)
        if r is not None:
            print(f"  value {r.value} with error estimate {r.error_estimate:.3e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
