import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from scipy.special import roots_hermitenorm, roots_laguerre

from fock_limits.fock import position_moment
from fock_limits.jacobi import JacobiError, make_family, parse_family
from fock_limits.orthopoly import (
    build_monic,
    eval_monic,
    eval_normalized,
    gauss_rule,
    norm_squared,
    normalized_eigenvectors,
    normalized_table,
    weighted_measure_moment,
)

x = sp.symbols("x")


def poly_coeffs(expr):
    return [Fraction(int(c.p), int(c.q)) for c in reversed(sp.Poly(sp.expand(expr), x).all_coeffs())]


def scipy_rule(name, k):
    """Independent Gauss rule for the probability measure (oracle)."""
    if name == "oscillator":
        nodes, weights = roots_hermitenorm(k)
        return nodes, weights / math.sqrt(2 * math.pi)
    nodes, weights = roots_laguerre(k)
    return nodes, weights


def test_build_monic_examples(laguerre, oscillator):
    seq = build_monic(laguerre, 2)
    assert seq[1] == (-1, 1)
    assert seq[2] == (2, -4, 1)
    assert build_monic(oscillator, 2)[2] == (-1, 0, 1)


def test_monic_matches_classical_polynomials(laguerre, oscillator):
    lag = build_monic(laguerre, 15)
    her = build_monic(oscillator, 15)
    for n in range(16):
        monic_laguerre = (-1) ** n * sp.factorial(n) * sp.laguerre(n, x)
        assert list(lag[n]) == poly_coeffs(monic_laguerre)
        assert list(her[n]) == poly_coeffs(sp.hermite_prob(n, x))


@pytest.mark.parametrize("spec", ["oscillator", "free", "laguerre", "q:1/2", "q:-1/3"])
def test_recurrence_residual_is_zero(spec):
    rec = parse_family(spec)
    seq = build_monic(rec, 21)
    for n in range(21):
        xp = [0] + list(seq[n])
        rhs = [0] * (n + 2)
        for i, c in enumerate(seq[n + 1]):
            rhs[i] += c
        for i, c in enumerate(seq[n]):
            rhs[i] += rec.alpha(n + 1) * c
        if n >= 1:
            for i, c in enumerate(seq[n - 1]):
                rhs[i] += rec.w(n) * c
        assert xp == rhs
        assert seq[n][-1] == 1


def test_build_monic_finite_cutoff():
    rec = make_family("custom", omega=[1, 2])
    assert build_monic(rec, 3).max_degree == 3
    with pytest.raises(JacobiError):
        build_monic(rec, 4)


def test_eval_normalized_examples(laguerre, oscillator):
    assert eval_normalized(build_monic(oscillator, 3), 0, 1.7) == 1.0
    assert eval_normalized(build_monic(laguerre, 2), 2, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert eval_normalized(build_monic(oscillator, 2), 2, 0.0) == pytest.approx(-1 / math.sqrt(2))


def test_eval_normalized_matches_monic_over_norm(laguerre, q_half):
    for rec in (laguerre, q_half):
        seq = build_monic(rec, 12)
        for n in range(13):
            for pt in (Fraction(-3, 2), Fraction(1, 3), Fraction(7, 2)):
                exact = eval_monic(seq, n, pt) ** 2 / norm_squared(rec, n)
                val = eval_normalized(seq, n, float(pt))
                assert val**2 == pytest.approx(float(exact), rel=1e-10, abs=1e-14)
                assert math.copysign(1, val) == math.copysign(1, eval_monic(seq, n, pt)) or exact == 0


def test_eval_normalized_high_degree_extended_precision(laguerre):
    # normalized Laguerre L_n(x) = (-1)^n l_n(x) / n!; reference from mpmath at high precision
    import mpmath
    for n, pt in ((60, 30.0), (100, 150.0), (100, 3.5)):
        with mpmath.workdps(60):
            ref = float((-1) ** n * mpmath.laguerre(n, 0, pt))
        assert eval_normalized(laguerre, n, pt) == pytest.approx(ref, rel=1e-12)


def test_norm_squared_examples(laguerre, oscillator):
    assert norm_squared(oscillator, 0) == 1
    assert norm_squared(laguerre, 3) == 36 == math.factorial(3) ** 2


@pytest.mark.parametrize("name", ["oscillator", "laguerre"])
def test_norm_squared_against_independent_quadrature(name):
    rec = make_family(name)
    seq = build_monic(rec, 10)
    nodes, weights = scipy_rule(name, 20)
    for n in range(11):
        coeffs = np.array([float(c) for c in seq[n]])
        vals = np.polynomial.polynomial.polyval(nodes, coeffs)
        integral = float(np.dot(weights, vals**2))
        assert integral == pytest.approx(float(norm_squared(rec, n)), rel=1e-9)


def test_gauss_rule_examples(oscillator, laguerre):
    r = gauss_rule(oscillator, 1)
    assert list(r.nodes) == [0.0] and list(r.weights) == [1.0]
    r = gauss_rule(laguerre, 1)
    assert list(r.nodes) == [1.0] and list(r.weights) == [1.0]
    r = gauss_rule(oscillator, 2)
    assert r.nodes == pytest.approx([-1.0, 1.0], abs=1e-15)
    assert r.weights == pytest.approx([0.5, 0.5], abs=1e-15)
    assert r.integrate(lambda t: t**2) == pytest.approx(1.0)
    assert r.degree_exactness == 3


@pytest.mark.parametrize("name", ["oscillator", "laguerre"])
def test_gauss_rule_matches_scipy(name):
    rec = make_family(name)
    for k in (3, 8, 15):
        ours = gauss_rule(rec, k)
        nodes, weights = scipy_rule(name, k)
        assert ours.nodes == pytest.approx(nodes, rel=1e-12, abs=1e-13)
        assert ours.weights == pytest.approx(weights, rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("spec", ["oscillator", "laguerre", "free", "q:1/2", "q:-1/2"])
def test_gauss_rule_invariants_and_exactness(spec):
    rec = parse_family(spec)
    diag = not rec.symmetric
    for k in range(1, 13):
        r = gauss_rule(rec, k)
        assert abs(r.weights.sum() - 1) <= 1e-12
        assert np.all(r.weights > 0)
        assert np.all(np.diff(r.nodes) > 0)
        for j in range(2 * k):
            # measure moments defined operator-side: phi_0((a + a* + a°)^j)
            mom = float(position_moment(0, j, rec, diag))
            val = float(np.dot(r.weights, r.nodes**j))
            ref = float(np.dot(r.weights, np.abs(r.nodes) ** j))
            assert abs(val - mom) <= 1e-9 * max(ref, 1e-300) or (ref == 0 and mom == 0)


def test_gauss_rule_errors():
    with pytest.raises(ValueError):
        gauss_rule(make_family("oscillator"), 0)
    with pytest.raises(JacobiError):
        gauss_rule(make_family("custom", omega=[1, 2]), 4)
    assert len(gauss_rule(make_family("custom", omega=[1, 2]), 3).nodes) == 3


@pytest.mark.parametrize("name", ["oscillator", "laguerre"])
def test_orthonormality(name):
    rec = make_family(name)
    r = gauss_rule(rec, 12)
    P = normalized_table(rec, 10, r.nodes)
    gram = (P * r.weights) @ P.T
    assert np.abs(gram - np.eye(11)).max() <= 1e-9


def test_weighted_measure_moment_examples(oscillator, laguerre):
    assert weighted_measure_moment(oscillator, 0, 2, 1) == pytest.approx(1.0)
    assert weighted_measure_moment(oscillator, 1, 2, math.sqrt(2)) == pytest.approx(1.5, rel=1e-13)
    assert weighted_measure_moment(laguerre, 1, 1, 1) == pytest.approx(3.0, rel=1e-13)
    with pytest.raises(ValueError):
        weighted_measure_moment(oscillator, 1, 2, 0)


@pytest.mark.parametrize("name", ["oscillator", "laguerre"])
def test_weighted_measure_moment_against_scipy_rule(name):
    rec = make_family(name)
    nodes, weights = scipy_rule(name, 30)
    P = normalized_table(rec, 8, nodes)
    for n in range(9):
        for m in range(9):
            ref = float(np.dot(weights, nodes**m * P[n] ** 2))
            scale = float(np.dot(weights, np.abs(nodes) ** m * P[n] ** 2))
            assert abs(weighted_measure_moment(rec, n, m) - ref) <= 1e-9 * scale


@pytest.mark.parametrize("name", ["oscillator", "laguerre", "q:1/2"])
def test_isometry_identity(name):
    rec = parse_family(name)
    diag = not rec.symmetric
    for n in range(9):
        for m in range(9):
            op = float(position_moment(n, m, rec, diag))
            quad = weighted_measure_moment(rec, n, m)
            ref = weighted_measure_moment_abs(rec, n, m)
            assert abs(op - quad) <= 1e-8 * ref


def weighted_measure_moment_abs(rec, n, m):
    r = gauss_rule(rec, n + (m + 1) // 2 + 1)
    P = normalized_table(rec, n, r.nodes)[n]
    return float(np.dot(r.weights, np.abs(r.nodes) ** m * P**2))


@pytest.mark.parametrize("name", ["oscillator", "laguerre"])
def test_normalized_eigenvectors_are_jacobi_eigenvectors(name):
    rec = make_family(name)
    k = 60
    r = gauss_rule(rec, k)
    V = normalized_eigenvectors(rec, k, r.nodes)
    diag = [float(rec.alpha(n)) for n in range(1, k + 1)]
    off = np.sqrt([float(rec.w(n)) for n in range(1, k)])
    T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    assert np.linalg.norm(V, axis=0) == pytest.approx(np.ones(k), abs=1e-14)
    assert np.abs(T @ V - V * r.nodes).max() <= 1e-8 * np.abs(T).sum(axis=1).max()
    assert r.masses[0] == pytest.approx(V[0] ** 2, rel=1e-12)


@pytest.mark.parametrize("n", [100, 200, 400])
def test_large_degree_laguerre_measure_side(n):
    # |L_n(n x)|^2 n e^{-n x} dx; plain P_n(x) overflows float at the outer nodes for n >= 200
    from fock_limits.fock import scaled_moment
    rec = make_family("laguerre")
    for m in (1, 2, 4, 6):
        op = float(scaled_moment(n, m, rec, scale=n, include_diag=True))
        assert weighted_measure_moment(rec, n, m, n) == pytest.approx(op, rel=1e-10)
