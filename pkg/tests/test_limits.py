import json
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fock_limits.jacobi import JacobiError, make_family, parse_family
from fock_limits.limits import (
    CSV_FIELDS,
    ConvergenceReport,
    Row,
    decimal_string,
    emit_report,
    error_trend_ok,
    parse_report,
    run_laguerre_limit,
    run_symmetric_limit,
)
from fock_limits.measures import arcsine_moment

POWERS = [2**k for k in range(3, 11)]


def test_free_family_exact_zero_errors(free):
    report = run_symmetric_limit(free, [4, 5, 8, 16], m_max=8)
    assert all(r.abs_error == 0 for r in report.rows)
    assert [r.m for r in report.rows if r.N == 4] == [0, 2, 4, 6, 8]


def test_oscillator_errors_decrease(oscillator):
    report = run_symmetric_limit(oscillator, [10, 100, 1000], m_max=4)
    errs = report.errors(4)
    assert errs[0] > errs[1] > errs[2] > 0


def test_q_half_second_moment_two_word_formula(q_half):
    report = run_symmetric_limit(q_half, [10, 100], m_max=2)
    for N in (10, 100):
        w = q_half.w
        assert report.row(N, 2).computed == (w(N) + w(N + 1)) / (2 * w(N))
    assert report.row(100, 2).abs_error < report.row(10, 2).abs_error


def test_symmetric_rejects_asymmetric_and_finite(laguerre):
    with pytest.raises(JacobiError):
        run_symmetric_limit(laguerre, [8], 2)
    with pytest.raises(JacobiError):
        run_symmetric_limit(make_family("custom", omega=[1, 2, 3]), [1], 2)


def test_symmetric_warns_on_bad_ratio():
    # omega_n = 2^n is infinite type but ratios stay at 2
    from fock_limits.jacobi import JacobiSequence, Recurrence
    rec = Recurrence(lambda n: 0, JacobiSequence(lambda n: 2**n, family_tag="geometric"), True)
    with pytest.warns(RuntimeWarning):
        run_symmetric_limit(rec, [2, 4], 2)


def test_n_list_validation(oscillator):
    for bad in ([], [0, 2], [4, 2], [2, 2]):
        with pytest.raises(ValueError):
            run_symmetric_limit(oscillator, bad, 2)


def test_laguerre_examples():
    report = run_laguerre_limit([1, 2, 100], m_max=2)
    for N in (1, 2, 100):
        assert report.row(N, 0).computed == report.row(N, 0).target == 1
        assert report.row(N, 1).computed == Fraction(2 * N + 1, N)
    assert report.row(100, 2).computed == Fraction(10000 + 10201 + 40401, 10000)
    assert float(report.row(100, 2).computed) == 6.0602


@pytest.mark.parametrize("spec", ["oscillator", "q:1/2"])
def test_symmetric_trend_invariant(spec):
    report = run_symmetric_limit(parse_family(spec), POWERS, m_max=8)
    for m in range(0, 9, 2):
        assert report.monotone_flags[m]
        last = report.row(1024, m)
        assert last.abs_error < Fraction(5, 100) * last.target


def test_laguerre_trend_invariant():
    report = run_laguerre_limit(POWERS, m_max=8)
    for m in range(9):
        assert report.monotone_flags[m]
        last = report.row(1024, m)
        assert last.abs_error < Fraction(5, 100) * last.target


def test_cross_engine_columns(oscillator):
    for report in (run_symmetric_limit(oscillator, [1, 2, 4, 8], 8, quadrature_max_N=8),
                   run_laguerre_limit([1, 2, 4, 8], 8, quadrature_max_N=8)):
        for r in report.rows:
            assert r.quadrature == pytest.approx(float(r.computed), rel=1e-8)


def test_float_engine_agrees(oscillator):
    exact = run_symmetric_limit(oscillator, [8, 64], 6)
    approx = run_symmetric_limit(oscillator, [8, 64], 6, engine="float")
    for a, b in zip(exact.rows, approx.rows):
        assert b.computed == pytest.approx(float(a.computed), rel=1e-12)


def test_error_trend_ok():
    assert error_trend_ok([3, 2, 1])
    assert error_trend_ok([1, 2, 1, 0])
    assert not error_trend_ok([3, 2, 2.5, 1])
    assert not error_trend_ok([1, 2, 3])
    assert error_trend_ok([])


def test_decimal_string():
    assert decimal_string(Fraction(3, 2)) == "1.5000000000000000000e+0"
    assert decimal_string(0) == "0"
    assert decimal_string(Fraction(1, 3)) == "3.3333333333333333333e-1"
    assert decimal_string(Fraction(2, 3)) == "6.6666666666666666667e-1"
    # half-even at the 20th digit
    assert decimal_string(Fraction(123456789012345678905, 10**20)) == "1.2345678901234567890e+0"
    assert decimal_string(Fraction(123456789012345678915, 10**20)) == "1.2345678901234567892e+0"
    assert decimal_string(0.1) == "1.0000000000000000555e-1"


def test_emit_empty_csv():
    assert emit_report(ConvergenceReport("free", "sqrt_2_omega_N"), "csv") == ",".join(CSV_FIELDS) + "\n"


def test_emit_one_row_json():
    rep = ConvergenceReport("free", "sqrt_2_omega_N",
                            [Row(4, 2, Fraction(1), Fraction(1), Fraction(0))])
    payload = json.loads(emit_report(rep, "json"))
    assert len(payload["rows"]) == 1
    assert {"N", "m", "computed", "target", "abs_error"} <= set(payload["rows"][0])


def test_emit_csv_columns(laguerre):
    text = emit_report(run_laguerre_limit([8], 1), "csv")
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert lines[2] == "laguerre,over_N,8,1,17/8,2.1250000000000000000e+0,2,2.0000000000000000000e+0,1.2500000000000000000e-1"
    assert "\r" not in text


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip(fmt, q_half):
    for report in (run_symmetric_limit(q_half, [8, 64, 512], 6),
                   run_laguerre_limit([8, 64], 5),
                   run_symmetric_limit(make_family("oscillator"), [2, 4], 4, quadrature_max_N=4)):
        assert parse_report(emit_report(report, fmt), fmt) == report


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 10**4), st.integers(0, 30),
                          st.fractions(), st.fractions()), max_size=8, unique_by=lambda t: t[:2]))
def test_round_trip_property(cells):
    rows = [Row(N, m, c, t, abs(c - t)) for N, m, c, t in sorted(cells)]
    report = ConvergenceReport("custom", "sqrt_2_omega_N", rows)
    report.monotone_flags = parse_report(emit_report(report)).monotone_flags
    assert parse_report(emit_report(report, "json"), "json") == report
    if rows:
        # a header-only CSV carries no family label
        assert parse_report(emit_report(report, "csv"), "csv") == report


def test_emit_is_deterministic(oscillator):
    a = emit_report(run_symmetric_limit(oscillator, [8, 64], 6), "json")
    b = emit_report(run_symmetric_limit(oscillator, [8, 64], 6), "json")
    assert a == b


def test_targets_are_arcsine(oscillator):
    report = run_symmetric_limit(oscillator, [8], 8)
    assert [r.target for r in report.rows] == [arcsine_moment(m) for m in range(0, 9, 2)]
