"""Command-line front end: ``fock-limits <subcommand> ...``.

Exit codes: 0 success, 1 identity check failed, 2 usage/parse error,
3 domain error (e.g. a state or scale that does not exist).
The ``FOCK_LIMITS_PRECISION`` environment variable (``exact`` or ``float``)
sets the default engine.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from fractions import Fraction
from numbers import Rational
from pathlib import Path

from . import fock, limits, measures, orthopoly
from .jacobi import FamilySpecError, JacobiError, parse_family, ratio_limit_check

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {val}")
    return val


def _nonneg_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {val}")
    return val


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _scalar(text: str):
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return val


def _family(text: str):
    try:
        return parse_family(text)
    except FamilySpecError as exc:
        raise UsageError(str(exc)) from exc


def _write(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _fraction_cell(x) -> str:
    return str(Fraction(x)) if isinstance(x, Rational) else ""


def cmd_moments(args) -> int:
    rec = _family(args.family)
    scale = scale_squared = None
    if args.scale is not None:
        scale = args.scale
    elif not args.no_scale:
        if rec.symmetric:
            scale_squared = fock.sqrt_two_omega_squared(rec, args.N)
        else:
            if args.N < 1:
                raise ValueError("the scale N needs N >= 1")
            scale = args.N
    include_diag = args.diag or False
    lines = ["m,value_fraction,value_decimal"]
    for m in range(args.m_max + 1):
        if scale is None and scale_squared is None:
            val = fock.position_moment(args.N, m, rec, include_diag, engine=args.precision)
        else:
            val = fock.scaled_moment(args.N, m, rec, scale, include_diag,
                                     scale_squared=scale_squared, engine=args.precision)
        lines.append(f"{m},{_fraction_cell(val)},{limits.decimal_string(val)}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_converge(args) -> int:
    rec = _family(args.family)
    scaling = args.scaling or ("over_N" if rec.family_tag == "laguerre" else "sqrt_2_omega_N")
    N_list = args.N or list(limits.DEFAULT_N_LIST)
    if scaling == "over_N":
        if rec.family_tag != "laguerre":
            raise JacobiError("the over_N scaling is only defined for the laguerre family")
        m_max = 6 if args.m_max is None else args.m_max
        report = limits.run_laguerre_limit(N_list, m_max, engine=args.precision,
                                           quadrature_max_N=args.quadrature_max_N)
    else:
        m_max = 8 if args.m_max is None else args.m_max
        report = limits.run_symmetric_limit(rec, N_list, m_max, engine=args.precision,
                                            quadrature_max_N=args.quadrature_max_N)
    _write(limits.emit_report(report, args.format), args.output)
    return EXIT_OK


def cmd_identity(args) -> int:
    ok = True
    lines = []
    for m in range(args.m_max + 1):
        lhs = sum(2 ** (m - 2 * l) * math.comb(m, m - 2 * l) * math.comb(2 * l, l)
                  for l in range(m // 2 + 1))
        rhs = measures.arcsine04_moment(m)
        status = "PASS" if lhs == rhs else "FAIL"
        ok &= lhs == rhs
        lines.append(f"m={m}: {lhs} = {rhs} {status}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_quadrature(args) -> int:
    rec = _family(args.family)
    rule = orthopoly.gauss_rule(rec, args.k)
    lines = ["node,weight"]
    lines += [f"{float(x)!r},{float(w)!r}" for x, w in zip(rule.nodes, rule.weights)]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_ratio_check(args) -> int:
    rec = _family(args.family)
    report = ratio_limit_check(rec, args.n_max, args.tol)
    lines = ["n,ratio_decimal"]
    lines += [f"{n},{limits.decimal_string(r)}" for n, r in enumerate(report.ratios, start=1)]
    lines.append(f"# plausibly_convergent_to_1={str(report.plausibly_convergent_to_1).lower()}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env = os.environ.get("FOCK_LIMITS_PRECISION", "exact")
    parser = argparse.ArgumentParser(
        prog="fock-limits",
        description="Moments and classical limits of interacting Fock spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--precision", choices=("exact", "float"),
                        default=env if env in ("exact", "float") else "exact")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="moments phi_N(X^m)")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=_nonneg_int, required=True)
    p.add_argument("--m-max", type=_nonneg_int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--no-scale", action="store_true", help="unscaled moments")
    g.add_argument("--scale", type=_scalar, help="explicit scale s (moments of X/s)")
    p.add_argument("--diag", action="store_true", help="include a° in X")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("converge", parents=[common], help="convergence table")
    p.add_argument("--family", required=True)
    p.add_argument("--scaling", choices=("sqrt_2_omega_N", "over_N"))
    p.add_argument("--N", type=_int_list, help="comma-separated state indices")
    p.add_argument("--m-max", type=_nonneg_int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--quadrature-max-N", type=_nonneg_int, default=None,
                   help="add a quadrature-side column for N up to this value")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("identity", parents=[common], help="check the binomial limit identity")
    p.add_argument("--m-max", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("quadrature", parents=[common], help="Gauss rule nodes and weights")
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=cmd_quadrature)

    p = sub.add_parser("ratio-check", parents=[common], help="omega(n+1)/omega(n) diagnostics")
    p.add_argument("--family", required=True)
    p.add_argument("--n-max", type=_positive_int, default=1000)
    p.add_argument("--tol", type=float, default=1e-2)
    p.set_defaults(func=cmd_ratio_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fock-limits: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, JacobiError, ArithmeticError, orthopoly.QuadratureError) as exc:
        print(f"fock-limits: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
