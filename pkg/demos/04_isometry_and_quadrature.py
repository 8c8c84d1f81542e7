"""Operator side vs measure side.

phi_N((a + a* + a°)^m) equals the m-th moment of |P_N(x)|^2 mu(dx).  The
measure side is computed with a Golub-Welsch rule built from the same
recurrence; at N = 100..400 the normalized polynomials would overflow float
at the outer nodes, so the rule carries squared eigenvector components
instead.  The last block evaluates the normalized Laguerre polynomial
L_n(n x) pointwise in extended precision.
"""
import numpy as np

from fock_limits import (
    eval_normalized,
    gauss_rule,
    make_family,
    position_moment,
    scaled_moment,
    weighted_measure_moment,
)

for name in ("oscillator", "laguerre"):
    rec = make_family(name)
    diag = name == "laguerre"
    print(name)
    for N in (0, 3, 8):
        op = [float(position_moment(N, m, rec, diag)) for m in range(5)]
        qd = [weighted_measure_moment(rec, N, m) for m in range(5)]
        print(f"  N={N}: operator {np.round(op, 6)}\n        quadrature {np.round(qd, 6)}")

rule = gauss_rule(make_family("oscillator"), 5)
print("\n5-point Gauss-Hermite (probabilists'):", np.round(rule.nodes, 6), np.round(rule.weights, 6))

lag = make_family("laguerre")
for n in (100, 400):
    op = float(scaled_moment(n, 4, lag, scale=n, include_diag=True))
    qd = weighted_measure_moment(lag, n, 4, n)
    print(f"\nn={n}: 4th moment of |L_n(nx)|^2 n e^(-nx) dx  operator {op:.12f}  quadrature {qd:.12f}")

# Weak, not pointwise, convergence: the density oscillates, but its mass on
# (0, 1) approaches the arcsine value (2/pi) arcsin(1/2) = 1/3.
n = 100
h = 1 / 4000
xs = h * (np.arange(4000) + 0.5)
dens = [n * eval_normalized(lag, n, n * x) ** 2 * np.exp(-n * x) for x in xs]
print(f"\nmass of mu_{n} on (0, 1): {h * sum(dens):.4f}   arcsine(0,4): {1 / 3:.4f}")
