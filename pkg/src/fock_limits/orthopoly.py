"""Orthogonal polynomials generated by a recurrence, and Gauss rules.

Monic polynomials ``p_n`` satisfy

    x p_n = p_{n+1} + alpha(n+1) p_n + omega(n) p_{n-1},   p_{-1} = 0, p_0 = 1,

and ``||p_n||^2 = omega(1) ... omega(n)``.  The normalized polynomials
``P_n = p_n / ||p_n||`` are evaluated with their own three-term recurrence,
never by expanding coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .jacobi import JacobiError, Recurrence

__all__ = [
    "MonicPolySequence",
    "QuadratureRule",
    "QuadratureError",
    "build_monic",
    "eval_monic",
    "eval_normalized",
    "normalized_table",
    "normalized_eigenvectors",
    "eigenvector_masses",
    "norm_squared",
    "gauss_rule",
    "integrate",
    "weighted_measure_moment",
]

# above this degree P_n is evaluated in extended precision
EXTENDED_PRECISION_DEGREE = 40
_EXTENDED_DPS = 50
_RESCALE_AT = 1e100


class QuadratureError(RuntimeError):
    """The tridiagonal eigen-solve did not meet its residual tolerance."""


@dataclass(frozen=True)
class MonicPolySequence:
    """Coefficient tables for ``p_0 .. p_max_degree``, ascending powers."""

    rec: Recurrence
    max_degree: int
    coeffs: tuple

    def __getitem__(self, n: int) -> tuple:
        return self.coeffs[n]

    def __call__(self, n: int, x):
        return eval_monic(self, n, x)


def _zero_like(rec):
    return Fraction(0) if rec.exact else 0.0


def build_monic(rec: Recurrence, n_max: int) -> MonicPolySequence:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if rec.cutoff is not None and n_max > rec.cutoff:
        raise JacobiError(
            f"degree {n_max} exceeds the finite-type cutoff {rec.cutoff}; "
            "polynomials past it are not orthogonal"
        )
    one = Fraction(1) if rec.exact else 1.0
    zero = _zero_like(rec)
    polys = [[one]]
    prev: list = []
    for n in range(n_max):
        cur = polys[n]
        a = rec.alpha(n + 1)
        w = rec.w(n) if n >= 1 else 0
        nxt = [zero] * (n + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += c
            nxt[i] -= a * c
        for i, c in enumerate(prev):
            nxt[i] -= w * c
        polys.append(nxt)
        prev = cur
    return MonicPolySequence(rec, n_max, tuple(tuple(p) for p in polys))


def eval_monic(seq: MonicPolySequence, n: int, x):
    """Horner evaluation of the stored coefficients."""
    total = 0
    for c in reversed(seq.coeffs[n]):
        total = total * x + c
    return total


def norm_squared(rec: Recurrence, n: int):
    """``||p_n||^2 = omega(1) ... omega(n)``; 1 for ``n = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1) if rec.exact else 1.0
    for k in range(1, n + 1):
        out *= rec.w(k)
    return out


def _normalized_values(rec: Recurrence, n: int, x, sqrt, conv):
    """``[P_0(x), ..., P_n(x)]`` by the normalized recurrence."""
    vals = [conv(1)]
    prev = conv(0)
    cur = conv(1)
    for k in range(n):
        w_next = rec.w(k + 1)
        if w_next == 0:
            raise JacobiError(f"P_{k + 1} is undefined: omega({k + 1}) = 0")
        b_prev = sqrt(conv(rec.w(k))) if k >= 1 else conv(0)
        nxt = ((x - conv(rec.alpha(k + 1))) * cur - b_prev * prev) / sqrt(conv(w_next))
        prev, cur = cur, nxt
        vals.append(cur)
    return vals


def _to_mpf(v):
    if isinstance(v, Rational):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def eval_normalized(seq: MonicPolySequence | Recurrence, n: int, x) -> float:
    """``P_n(x) = p_n(x) / sqrt(omega(1)...omega(n))`` via the normalized recurrence.

    Degrees above ``EXTENDED_PRECISION_DEGREE`` are evaluated with mpmath at
    50 significant digits and rounded once to float.
    """
    if isinstance(seq, MonicPolySequence):
        if n > seq.max_degree:
            raise ValueError(f"degree {n} exceeds max_degree {seq.max_degree}")
        rec = seq.rec
    else:
        rec = seq
    if n > EXTENDED_PRECISION_DEGREE:
        with mpmath.workdps(_EXTENDED_DPS):
            vals = _normalized_values(rec, n, _to_mpf(x), mpmath.sqrt, _to_mpf)
            return float(vals[-1])
    return float(_normalized_values(rec, n, float(x), math.sqrt, float)[-1])


def normalized_table(rec: Recurrence, n: int, x: np.ndarray) -> np.ndarray:
    """Rows ``P_0(x) .. P_n(x)`` for an array of points, float64."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    prev = np.zeros_like(x)
    for k in range(n):
        b_prev = math.sqrt(float(rec.w(k))) if k >= 1 else 0.0
        out[k + 1] = ((x - float(rec.alpha(k + 1))) * out[k] - b_prev * prev) / math.sqrt(
            float(rec.w(k + 1)))
        prev = out[k]
    return out


def _scaled_columns(rec: Recurrence, k: int, nodes: np.ndarray) -> np.ndarray:
    """Columns proportional to ``(P_0(x), ..., P_{k-1}(x))`` for each node ``x``.

    The recurrence is run with per-column rescaling so that large ``|P_j(x)|``
    at outlying nodes never overflow; only the direction is kept.
    """
    nodes = np.asarray(nodes, dtype=float)
    rows = np.empty((k,) + nodes.shape)
    rows[0] = 1.0
    for j in range(k - 1):
        b_prev = math.sqrt(float(rec.w(j))) if j >= 1 else 0.0
        prev = rows[j - 1] if j >= 1 else 0.0
        rows[j + 1] = ((nodes - float(rec.alpha(j + 1))) * rows[j] - b_prev * prev) / math.sqrt(
            float(rec.w(j + 1)))
        big = np.abs(rows[j + 1]) > _RESCALE_AT
        if np.any(big):
            rows[: j + 2, big] /= np.abs(rows[j + 1, big])
    return rows


def normalized_eigenvectors(rec: Recurrence, k: int, nodes: np.ndarray) -> np.ndarray:
    """Unit columns ``(P_0(x), ..., P_{k-1}(x)) / ||.||``, one per node."""
    rows = _scaled_columns(rec, k, nodes)
    return rows / np.linalg.norm(rows, axis=0)


def eigenvector_masses(rec: Recurrence, k: int, nodes: np.ndarray) -> np.ndarray:
    """Squared components of :func:`normalized_eigenvectors`, ``P_j(x)^2 / sum_i P_i(x)^2``."""
    sq = _scaled_columns(rec, k, nodes) ** 2
    return sq / np.sum(sq, axis=0)


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    degree_exactness: int
    masses: np.ndarray | None = None

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_rule(rec: Recurrence, k: int, residual_tol: float = 1e-10) -> QuadratureRule:
    """Golub-Welsch rule with ``k`` nodes for the measure of ``rec``.

    Nodes are the eigenvalues of the ``k x k`` Jacobi matrix (diagonal
    ``alpha(1..k)``, off-diagonal ``sqrt(omega(1..k-1))``).  The normalized
    eigenvector for node ``x`` is ``(P_0(x), ..., P_{k-1}(x)) / c``, so the
    weight (its squared first component) is ``1 / sum_j P_j(x)^2``; forming it
    from the recurrence keeps small weights at outlying nodes accurate.
    ``masses`` holds the squared components of these eigenvectors, column by
    column, so ``masses[0]`` are the weights.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if rec.cutoff is not None and k > rec.cutoff:
        raise JacobiError(f"k = {k} exceeds the finite-type cutoff {rec.cutoff}")
    diag = np.array([float(rec.alpha(n)) for n in range(1, k + 1)])
    off = np.sqrt(np.array([float(rec.w(n)) for n in range(1, k)]))
    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:
        raise QuadratureError(f"tridiagonal eigen-solve failed for k = {k}") from exc
    tnorm = max(np.max(np.abs(diag)) + 2 * (np.max(off) if k > 1 else 0.0), 1.0)
    T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    residuals = np.linalg.norm(T @ vecs - vecs * nodes, axis=0)
    if np.any(residuals > residual_tol * tnorm):
        raise QuadratureError(
            f"eigenpair residual {residuals.max():.3e} exceeds {residual_tol:g} * ||T||")
    if k > 1 and np.any(np.diff(nodes) <= 1e-12 * tnorm):
        raise QuadratureError("nodes are not strictly increasing")
    masses = eigenvector_masses(rec, k, nodes)
    return QuadratureRule(nodes, masses[0], 2 * k - 1, masses)


def integrate(rule: QuadratureRule, f) -> float:
    return rule.integrate(f)


def weighted_measure_moment(rec: Recurrence, n: int, m: int, s=1) -> float:
    """``int x^m |P_n(s x)|^2 mu(s dx) = s^-m int y^m P_n(y)^2 mu(dy)``.

    Uses a Gauss rule with ``n + ceil(m/2) + 1`` nodes, which integrates the
    degree ``2n + m`` integrand exactly.  ``w_i P_n(x_i)^2`` equals the squared
    n-th component of the i-th normalized eigenvector, which stays finite
    where ``P_n(x_i)`` alone would overflow.
    """
    if not s > 0:
        raise ValueError(f"scale must be positive, got {s}")
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    k = n + (m + 1) // 2 + 1
    rule = gauss_rule(rec, k)
    mass = rule.masses[n]
    # scale the nodes first so x^m cannot overflow
    value = float(np.dot(mass, (rule.nodes / float(s)) ** m))
    return value
