"""Convergence experiments for scaled position moments.

Two scalings are supported:

* ``sqrt_2_omega_N``: symmetric families, ``phi_N(((a + a*) / sqrt(2 omega_N))^m)``
  against the normalized arcsine moments;
* ``over_N``: the Laguerre family, ``phi_N(((a + a* + a°) / N)^m)`` against
  ``C(2m, m)``, the moments of the arcsine law on ``(0, 4)``.

Rows are sorted by ``(N, m)``; exact-rational reports round-trip through both
serializations.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, localcontext, ROUND_HALF_EVEN
from fractions import Fraction
from numbers import Rational

from . import fock, measures, orthopoly
from .jacobi import JacobiError, Recurrence, make_family, ratio_limit_check

__all__ = [
    "DEFAULT_N_LIST",
    "CSV_FIELDS",
    "Row",
    "ConvergenceReport",
    "run_symmetric_limit",
    "run_laguerre_limit",
    "error_trend_ok",
    "emit_report",
    "parse_report",
    "decimal_string",
]

DEFAULT_N_LIST = tuple(2**k for k in range(3, 11))
CSV_FIELDS = ("family", "scaling", "N", "m", "computed_fraction", "computed_decimal",
              "target_fraction", "target_decimal", "abs_error")
SIGNIFICANT_DIGITS = 20


@dataclass
class Row:
    N: int
    m: int
    computed: object
    target: object
    abs_error: object
    quadrature: float | None = None


@dataclass
class ConvergenceReport:
    family: str
    scaling: str
    rows: list[Row] = field(default_factory=list)
    monotone_flags: dict[int, bool] = field(default_factory=dict)

    def errors(self, m: int) -> list:
        return [r.abs_error for r in self.rows if r.m == m]

    def row(self, N: int, m: int) -> Row:
        for r in self.rows:
            if r.N == N and r.m == m:
                return r
        raise KeyError((N, m))


def error_trend_ok(errors) -> bool:
    """Errors nonincreasing along N, allowing one violation at the first step."""
    bad = [i for i, (a, b) in enumerate(zip(errors, errors[1:])) if b > a]
    return not bad or bad == [0]


def _flags(rows) -> dict[int, bool]:
    by_m: dict[int, list] = {}
    for r in rows:
        by_m.setdefault(r.m, []).append(r.abs_error)
    return {m: error_trend_ok(errs) for m, errs in sorted(by_m.items())}


def _check_n_list(N_list):
    N_list = list(N_list)
    if not N_list:
        raise ValueError("N_list is empty")
    if any(n < 1 for n in N_list):
        raise ValueError("every N must be at least 1")
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be strictly ascending")
    return N_list


def run_symmetric_limit(rec: Recurrence, N_list=DEFAULT_N_LIST, m_max: int = 8,
                        engine: str = "exact", quadrature_max_N: int | None = None
                        ) -> ConvergenceReport:
    """Even moments of ``(a + a*) / sqrt(2 omega_N)`` in ``phi_N`` vs the arcsine law.

    With ``quadrature_max_N`` set, rows with ``N <= quadrature_max_N`` also
    carry the same moment computed from ``|P_N|^2 mu`` by Gauss quadrature.
    """
    if not rec.symmetric:
        raise JacobiError(f"{rec.family_tag} is not symmetric; use the over_N scaling")
    if rec.cutoff is not None:
        raise JacobiError("convergence runs need an infinite-type family")
    N_list = _check_n_list(N_list)
    diag = ratio_limit_check(rec, max(1000, N_list[-1]))
    if not diag.plausibly_convergent_to_1:
        warnings.warn(f"omega ratios of {rec.family_tag} do not look convergent to 1",
                      RuntimeWarning, stacklevel=2)
    rows = []
    for N in N_list:
        s2 = fock.sqrt_two_omega_squared(rec, N)
        for m in range(0, m_max + 1, 2):
            computed = fock.scaled_moment(N, m, rec, scale_squared=s2, engine=engine)
            target = measures.arcsine_moment(m)
            quad = None
            if quadrature_max_N is not None and N <= quadrature_max_N:
                quad = orthopoly.weighted_measure_moment(rec, N, m, math.sqrt(float(s2)))
            rows.append(Row(N, m, computed, target, _abs_error(computed, target), quad))
    return ConvergenceReport(rec.family_tag, "sqrt_2_omega_N", rows, _flags(rows))


def run_laguerre_limit(N_list=DEFAULT_N_LIST, m_max: int = 6, engine: str = "exact",
                       quadrature_max_N: int | None = None) -> ConvergenceReport:
    """Moments of ``(a + a* + a°) / N`` in ``phi_N`` for ``omega_n = n^2`` vs ``C(2m, m)``."""
    rec = make_family("laguerre")
    N_list = _check_n_list(N_list)
    rows = []
    for N in N_list:
        for m in range(m_max + 1):
            computed = fock.scaled_moment(N, m, rec, scale=N, include_diag=True, engine=engine)
            target = measures.laguerre_limit_sum(m)
            quad = None
            if quadrature_max_N is not None and N <= quadrature_max_N:
                quad = orthopoly.weighted_measure_moment(rec, N, m, N)
            rows.append(Row(N, m, computed, target, _abs_error(computed, target), quad))
    return ConvergenceReport(rec.family_tag, "over_N", rows, _flags(rows))


def _abs_error(computed, target):
    if isinstance(computed, Rational) and isinstance(target, Rational):
        return abs(Fraction(computed) - Fraction(target))
    return abs(float(computed) - float(target))


def decimal_string(x) -> str:
    """Round-half-even rendering to 20 significant digits, e.g. ``1.5000000000000000000e+0``."""
    with localcontext() as ctx:
        ctx.prec = SIGNIFICANT_DIGITS
        ctx.rounding = ROUND_HALF_EVEN
        if isinstance(x, Rational):
            x = Fraction(x)
            d = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            d = +Decimal(float(x))
    if d == 0:
        return "0"
    return format(d, f".{SIGNIFICANT_DIGITS - 1}e")


def _fraction_string(x) -> str:
    if isinstance(x, Rational):
        return str(Fraction(x))
    return ""


def _row_record(report: ConvergenceReport, r: Row) -> dict:
    rec = {
        "family": report.family,
        "scaling": report.scaling,
        "N": r.N,
        "m": r.m,
        "computed_fraction": _fraction_string(r.computed),
        "computed_decimal": decimal_string(r.computed),
        "target_fraction": _fraction_string(r.target),
        "target_decimal": decimal_string(r.target),
        "abs_error": decimal_string(r.abs_error),
    }
    if r.quadrature is not None:
        rec["quadrature_decimal"] = decimal_string(r.quadrature)
    return rec


def emit_report(report: ConvergenceReport, fmt: str = "csv") -> str:
    """Serialize deterministically as CSV or JSON (LF line endings)."""
    rows = sorted(report.rows, key=lambda r: (r.N, r.m))
    records = [_row_record(report, r) for r in rows]
    if fmt == "csv":
        fields = list(CSV_FIELDS)
        if any("quadrature_decimal" in rec for rec in records):
            fields.append("quadrature_decimal")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", restval="")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "family": report.family,
            "scaling": report.scaling,
            "monotone_flags": {str(m): f for m, f in sorted(report.monotone_flags.items())},
            "rows": [
                {
                    "N": rec["N"],
                    "m": rec["m"],
                    "computed": rec["computed_decimal"],
                    "target": rec["target_decimal"],
                    "abs_error": rec["abs_error"],
                    "computed_fraction": rec["computed_fraction"],
                    "target_fraction": rec["target_fraction"],
                    **({"quadrature": rec["quadrature_decimal"]}
                       if "quadrature_decimal" in rec else {}),
                }
                for rec in records
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _scalar(fraction: str, decimal: str):
    return Fraction(fraction) if fraction else float(decimal)


def parse_report(text: str, fmt: str = "csv") -> ConvergenceReport:
    """Inverse of :func:`emit_report`; exact values come back from the fraction fields."""
    rows = []
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        family = scaling = ""
        for rec in reader:
            family, scaling = rec["family"], rec["scaling"]
            computed = _scalar(rec["computed_fraction"], rec["computed_decimal"])
            target = _scalar(rec["target_fraction"], rec["target_decimal"])
            quad = rec.get("quadrature_decimal") or None
            rows.append(Row(int(rec["N"]), int(rec["m"]), computed, target,
                            _abs_error(computed, target), float(quad) if quad else None))
    elif fmt == "json":
        payload = json.loads(text)
        family, scaling = payload["family"], payload["scaling"]
        for rec in payload["rows"]:
            computed = _scalar(rec["computed_fraction"], rec["computed"])
            target = _scalar(rec["target_fraction"], rec["target"])
            quad = rec.get("quadrature")
            rows.append(Row(rec["N"], rec["m"], computed, target,
                            _abs_error(computed, target), float(quad) if quad else None))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return ConvergenceReport(family, scaling, rows, _flags(rows))
