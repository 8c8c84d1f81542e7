"""Reference laws and their exact moments.

``arcsine_normalized`` has density ``1/(pi sqrt(2 - x^2))`` on ``(-sqrt2, sqrt2)``;
``arcsine_04`` is its image under ``x -> 2 + sqrt2 x``, density
``1/(pi sqrt(4 - (x-2)^2))`` on ``(0, 4)``.  Supports are open intervals and
densities are 0 outside them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np
from scipy import integrate

__all__ = [
    "ReferenceLaw",
    "LAWS",
    "get_law",
    "arcsine_moment",
    "arcsine04_moment",
    "laguerre_limit_sum",
    "gaussian_moment",
    "exponential_moment",
    "density",
    "arcsine_affine_moment",
    "quadrature_moment",
]


def arcsine_moment(m: int) -> Fraction:
    """``C(2k, k) / 2^k`` for ``m = 2k``, 0 for odd ``m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m % 2:
        return Fraction(0)
    k = m // 2
    return Fraction(comb(2 * k, k), 2**k)


def arcsine04_moment(m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return comb(2 * m, m)


def laguerre_limit_sum(m: int) -> int:
    """``sum_l 2^(m-2l) C(m, m-2l) C(2l, l)`` over ``0 <= l <= m // 2``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = sum(2 ** (m - 2 * l) * comb(m, m - 2 * l) * comb(2 * l, l) for l in range(m // 2 + 1))
    if total != comb(2 * m, m):
        raise ArithmeticError(f"limit sum disagrees with C(2m, m) at m = {m}")
    return total


def gaussian_moment(m: int) -> int:
    """``(m-1)!!`` for even ``m``, else 0."""
    if m % 2:
        return 0
    return math.prod(range(m - 1, 0, -2))


def exponential_moment(m: int) -> int:
    return math.factorial(m)


def arcsine_affine_moment(m: int) -> Fraction:
    """Moment of ``2 + sqrt2 X`` for ``X`` normalized arcsine; odd powers of
    ``sqrt2`` only meet vanishing odd moments, so the sum is rational."""
    total = Fraction(0)
    for j in range(0, m + 1, 2):
        total += comb(m, j) * 2 ** (m - j) * 2 ** (j // 2) * arcsine_moment(j)
    return total


def _arcsine_density(x):
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < math.sqrt(2)
    out = np.zeros_like(x)
    out[inside] = 1.0 / (math.pi * np.sqrt(2.0 - x[inside] ** 2))
    return out


def _arcsine04_density(x):
    x = np.asarray(x, dtype=float)
    inside = (x > 0) & (x < 4)
    out = np.zeros_like(x)
    out[inside] = 1.0 / (math.pi * np.sqrt(4.0 - (x[inside] - 2.0) ** 2))
    return out


def _gaussian_density(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x**2) / math.sqrt(2 * math.pi)


def _exponential_density(x):
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, np.exp(-np.where(x > 0, x, 0.0)), 0.0)


@dataclass(frozen=True)
class ReferenceLaw:
    name: str
    support: tuple[float, float]
    density_fn: Callable = None
    moment: Callable[[int], object] = None


LAWS = {
    "arcsine_normalized": ReferenceLaw(
        "arcsine_normalized", (-math.sqrt(2), math.sqrt(2)), _arcsine_density, arcsine_moment),
    "arcsine_04": ReferenceLaw("arcsine_04", (0.0, 4.0), _arcsine04_density, arcsine04_moment),
    "gaussian_std": ReferenceLaw("gaussian_std", (-math.inf, math.inf), _gaussian_density,
                                 gaussian_moment),
    "exponential_1": ReferenceLaw("exponential_1", (0.0, math.inf), _exponential_density,
                                  exponential_moment),
}


def get_law(name: str) -> ReferenceLaw:
    try:
        return LAWS[name]
    except KeyError:
        raise ValueError(f"unknown law {name!r}; choose from {sorted(LAWS)}") from None


def density(law: ReferenceLaw | str, x):
    if isinstance(law, str):
        law = get_law(law)
    out = law.density_fn(x)
    return float(out) if np.ndim(out) == 0 else out


def quadrature_moment(law: ReferenceLaw | str, m: int, n_nodes: int = 10_000) -> float:
    """Numerical ``int x^m density(x) dx``.

    The arcsine laws use ``x = c + r sin(theta)``, which turns the integral
    into ``(1/pi) int (c + r sin theta)^m dtheta`` over ``(-pi/2, pi/2)``; a
    composite midpoint rule on that smooth integrand converges spectrally.
    The Gaussian and exponential laws go through ``scipy.integrate.quad``.
    """
    if isinstance(law, str):
        law = get_law(law)
    if law.name in ("arcsine_normalized", "arcsine_04"):
        c, r = (0.0, math.sqrt(2)) if law.name == "arcsine_normalized" else (2.0, 2.0)
        h = math.pi / n_nodes
        theta = -math.pi / 2 + h * (np.arange(n_nodes) + 0.5)
        return float(np.sum((c + r * np.sin(theta)) ** m) * h / math.pi)
    lo, hi = law.support
    val, _ = integrate.quad(lambda x: x**m * law.density_fn(x), lo, hi,
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return float(val)
