"""Interacting Fock space over a Jacobi sequence.

Basis vectors ``Phi_n`` (``n >= 0``) are orthonormal; the ladder letters act as

    lower  ('1'):  Phi_n -> sqrt(omega(n))   Phi_{n-1},   Phi_0 -> 0
    raise  ('*'):  Phi_n -> sqrt(omega(n+1)) Phi_{n+1}
    diag   ('o'):  Phi_n -> alpha(n+1)       Phi_n

A word ``w = (l_1, ..., l_m)`` is the operator product ``a^{l_1} ... a^{l_m}``,
so its letters act on a vector right to left.

Expectations in the vector states ``phi_N = <Phi_N, . Phi_N>`` are computed
exactly.  On a closed level path every edge ``(n, n+1)`` is crossed upward as
often as downward, so the square roots pair up into whole ``omega(n+1)``
factors.  Charging ``omega(n+1)`` to each upward step and 1 to each downward
step gives the same product without ever forming a square root.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator

import numpy as np

from .jacobi import JacobiError, Recurrence

__all__ = [
    "LOWER",
    "RAISE",
    "DIAG",
    "LadderWord",
    "RadicalScalar",
    "FockVector",
    "MomentTable",
    "apply_letter",
    "apply_word",
    "inner",
    "word_expectation",
    "enumerate_balanced_words",
    "position_moment",
    "scaled_moment",
    "sqrt_two_omega_squared",
    "moment_table",
]

LOWER = "1"
RAISE = "*"
DIAG = "o"
_ALPHABET_ORDER = (LOWER, RAISE, DIAG)


@dataclass(frozen=True)
class LadderWord:
    letters: tuple[str, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        bad = [c for c in letters if c not in _ALPHABET_ORDER]
        if bad:
            raise ValueError(f"unknown ladder letters {bad!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def coerce(cls, word) -> "LadderWord":
        if isinstance(word, LadderWord):
            return word
        return cls(tuple(word))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return "".join(self.letters)

    @property
    def is_balanced(self) -> bool:
        return self.letters.count(LOWER) == self.letters.count(RAISE)


def _exact(x):
    if isinstance(x, Rational) and not isinstance(x, Fraction):
        return Fraction(x)
    return x


def _check_state(N: int, rec: Recurrence):
    if N < 0:
        raise ValueError(f"state index must be nonnegative, got {N}")
    if rec.cutoff is not None and N >= rec.cutoff:
        raise JacobiError(
            f"state Phi_{N} does not exist: finite-type space has dimension {rec.cutoff}"
        )


class RadicalScalar:
    """Exact scalar ``sum_S c_S * prod_{k in S} sqrt(omega(k))``.

    Each index set ``S`` is stored as a sorted tuple of distinct indices;
    a repeated ``sqrt(omega(k))`` is folded into the rational coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: _exact(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def rational(cls, c) -> "RadicalScalar":
        return cls({(): c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(k == () for k in self.terms)

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("scalar carries unpaired square roots")
        return self.terms.get((), Fraction(0))

    def __add__(self, other: "RadicalScalar") -> "RadicalScalar":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RadicalScalar(out)

    def scale(self, c) -> "RadicalScalar":
        return RadicalScalar({k: v * c for k, v in self.terms.items()})

    def times_sqrt_omega(self, k: int, rec: Recurrence) -> "RadicalScalar":
        w = rec.w(k)
        if w == 0:
            return RadicalScalar()
        out = {}
        for idx, c in self.terms.items():
            if k in idx:
                key = tuple(i for i in idx if i != k)
                c = c * w
            else:
                key = tuple(sorted(idx + (k,)))
            out[key] = out.get(key, 0) + c
        return RadicalScalar(out)

    def mul(self, other: "RadicalScalar", rec: Recurrence) -> "RadicalScalar":
        out = RadicalScalar()
        for idx, c in other.terms.items():
            part = self.scale(c)
            for k in idx:
                part = part.times_sqrt_omega(k, rec)
            out = out + part
        return out

    def to_float(self, rec: Recurrence) -> float:
        total = 0.0
        for idx, c in self.terms.items():
            total += float(c) * math.prod(math.sqrt(float(rec.w(k))) for k in idx)
        return total

    def __eq__(self, other):
        if isinstance(other, RadicalScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == RadicalScalar.rational(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "RadicalScalar(0)"
        parts = []
        for idx, c in sorted(self.terms.items()):
            roots = "".join(f"*sqrt(w{k})" for k in idx)
            parts.append(f"{c}{roots}")
        return "RadicalScalar(" + " + ".join(parts) + ")"


@dataclass
class FockVector:
    """Finitely supported vector ``sum_n coeffs[n] Phi_n``.

    In the exact engine the coefficients are :class:`RadicalScalar`; in the
    floating engine they are Python floats.
    """

    coeffs: dict[int, object] = field(default_factory=dict)
    exact: bool = True

    @classmethod
    def basis(cls, n: int, exact: bool = True) -> "FockVector":
        c = RadicalScalar.rational(1) if exact else 1.0
        return cls({n: c}, exact)

    @classmethod
    def zero(cls, exact: bool = True) -> "FockVector":
        return cls({}, exact)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __getitem__(self, n):
        if n in self.coeffs:
            return self.coeffs[n]
        return RadicalScalar() if self.exact else 0.0


def _accumulate(out: dict, n: int, c, exact: bool):
    if exact:
        out[n] = out[n] + c if n in out else c
    else:
        out[n] = out.get(n, 0.0) + c


def _prune(out: dict, exact: bool) -> dict:
    if exact:
        return {n: c for n, c in out.items() if not c.is_zero()}
    return {n: c for n, c in out.items() if c != 0.0}


def apply_letter(letter: str, v: FockVector, rec: Recurrence) -> FockVector:
    """Apply one ladder operator to ``v``.

    Raising past the cutoff of a finite-type sequence gives the zero vector
    because ``omega`` vanishes there.
    """
    out: dict = {}
    ex = v.exact
    for n, c in v.coeffs.items():
        if letter == LOWER:
            if n == 0:
                continue
            new = c.times_sqrt_omega(n, rec) if ex else c * math.sqrt(float(rec.w(n)))
            _accumulate(out, n - 1, new, ex)
        elif letter == RAISE:
            new = c.times_sqrt_omega(n + 1, rec) if ex else c * math.sqrt(float(rec.w(n + 1)))
            _accumulate(out, n + 1, new, ex)
        elif letter == DIAG:
            a = rec.alpha(n + 1)
            new = c.scale(a) if ex else c * float(a)
            _accumulate(out, n, new, ex)
        else:
            raise ValueError(f"unknown ladder letter {letter!r}")
    return FockVector(_prune(out, ex), ex)


def apply_word(word, v: FockVector, rec: Recurrence) -> FockVector:
    for letter in reversed(LadderWord.coerce(word).letters):
        v = apply_letter(letter, v, rec)
        if v.is_zero():
            break
    return v


def inner(u: FockVector, v: FockVector, rec: Recurrence | None = None):
    """``<u, v>`` using ``<Phi_n, Phi_m> = delta_{nm}`` (real scalars)."""
    common = set(u.coeffs) & set(v.coeffs)
    if u.exact and v.exact:
        if rec is None:
            raise ValueError("exact inner products need the recurrence to fold square roots")
        total = RadicalScalar()
        for n in common:
            total = total + u.coeffs[n].mul(v.coeffs[n], rec)
        return total
    return float(sum(u.coeffs[n] * v.coeffs[n] for n in common))


def word_expectation(word, N: int, rec: Recurrence):
    """``<Phi_N, (word) Phi_N>``, exact for rational families."""
    _check_state(N, rec)
    word = LadderWord.coerce(word)
    if not word.is_balanced:
        return Fraction(0) if rec.exact else 0.0
    level = N
    value = Fraction(1) if rec.exact else 1.0
    for letter in reversed(word.letters):
        if letter == LOWER:
            if level == 0:
                return value * 0
            level -= 1
        elif letter == RAISE:
            w = rec.w(level + 1)
            if w == 0:
                return value * 0
            value *= w
            level += 1
        else:
            a = rec.alpha(level + 1)
            if a == 0:
                return value * 0
            value *= a
    return value


def enumerate_balanced_words(m: int, alphabet: str | Iterable[str] = "1*") -> Iterator[LadderWord]:
    """Words with as many lowering as raising letters, in lexicographic order
    ``'1' < '*' < 'o'``.

    For the two-letter alphabet ``{1, *}`` the words have length ``2m`` (the
    set with ``m`` of each letter).  For the three-letter alphabet
    ``{1, *, o}`` the words have total length ``m``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    letters = sorted(set(alphabet), key=_ALPHABET_ORDER.index)
    if letters == [LOWER, RAISE]:
        length = 2 * m
        # lexicographic order of lowering positions = lexicographic order of words
        for pos in itertools.combinations(range(length), m):
            chars = [RAISE] * length
            for p in pos:
                chars[p] = LOWER
            yield LadderWord(tuple(chars))
    elif letters == [LOWER, RAISE, DIAG]:
        for chars in itertools.product(letters, repeat=m):
            if chars.count(LOWER) == chars.count(RAISE):
                yield LadderWord(chars)
    else:
        raise ValueError(f"alphabet must be {{1,*}} or {{1,*,o}}, got {alphabet!r}")


def _moment_paths(N: int, m: int, rec: Recurrence, include_diag: bool):
    # transfer step of the similarity-scaled Jacobi matrix: up weight omega(n+1), down weight 1
    one = Fraction(1) if rec.exact else 1.0
    cur = {N: one}
    for step in range(m):
        reach = m - step - 1
        new: dict = defaultdict(lambda: one * 0)
        for n, c in cur.items():
            if n >= 1 and abs(n - 1 - N) <= reach:
                new[n - 1] += c
            if abs(n + 1 - N) <= reach:
                w = rec.w(n + 1)
                if w != 0:
                    new[n + 1] += c * w
            if include_diag and abs(n - N) <= reach:
                a = rec.alpha(n + 1)
                if a != 0:
                    new[n] += c * a
        cur = new
    return cur.get(N, one * 0)


def _moment_float(N: int, m: int, rec: Recurrence, include_diag: bool) -> float:
    lo = max(0, N - m)
    hi = N + m
    if rec.cutoff is not None:
        hi = min(hi, rec.cutoff - 1)
    dim = hi - lo + 1
    off = np.sqrt(np.array([float(rec.w(n)) for n in range(lo + 1, hi + 1)], dtype=float))
    diag = np.zeros(dim)
    if include_diag:
        diag = np.array([float(rec.alpha(n + 1)) for n in range(lo, hi + 1)], dtype=float)
    X = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    v = np.zeros(dim)
    v[N - lo] = 1.0
    u = v.copy()
    for _ in range(m):
        u = X @ u
    return float(v @ u)


def position_moment(N: int, m: int, rec: Recurrence, include_diag: bool = False,
                    engine: str = "exact", method: str = "matrix"):
    """``phi_N(X^m)`` for ``X = a + a*`` (or ``a + a* + a°`` with ``include_diag``).

    ``method="matrix"`` runs the tridiagonal transfer recursion on levels
    ``N-m .. N+m`` (exact; a word of length ``m`` cannot leave that window).
    ``method="words"`` sums :func:`word_expectation` over every word of length
    ``m``, the brute-force reference.  ``engine="float"`` uses a numpy matrix
    power on the same window.
    """
    _check_state(N, rec)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if engine == "float":
        return _moment_float(N, m, rec, include_diag)
    if engine != "exact":
        raise ValueError(f"unknown engine {engine!r}")
    if method == "matrix":
        return _moment_paths(N, m, rec, include_diag)
    if method == "words":
        alphabet = (LOWER, RAISE, DIAG) if include_diag else (LOWER, RAISE)
        total = Fraction(0) if rec.exact else 0.0
        for chars in itertools.product(alphabet, repeat=m):
            total += word_expectation(chars, N, rec)
        return total
    raise ValueError(f"unknown method {method!r}")


def sqrt_two_omega_squared(rec: Recurrence, N: int):
    """Square of the scale ``sqrt(2 omega(N))`` used for symmetric limits."""
    if N < 1:
        raise ValueError("the scale sqrt(2 omega_N) needs N >= 1")
    w = rec.w(N)
    if w == 0:
        raise JacobiError(f"omega({N}) = 0; scale sqrt(2 omega_N) is undefined")
    return 2 * w


def scaled_moment(N: int, m: int, rec: Recurrence, scale=None, include_diag: bool = False,
                  *, scale_squared=None, engine: str = "exact"):
    """``phi_N((X / s)^m)``.

    Pass either ``scale`` or ``scale_squared``.  The result is exact when
    ``scale`` is rational, or when ``scale_squared`` is rational and ``m`` is
    even (or the unscaled moment is zero).
    """
    if (scale is None) == (scale_squared is None):
        raise ValueError("pass exactly one of scale and scale_squared")
    s = scale if scale is not None else scale_squared
    if not s > 0:
        raise ValueError(f"scale must be positive, got {s}")
    pm = position_moment(N, m, rec, include_diag, engine=engine)
    exact = engine == "exact" and isinstance(pm, Rational)
    if scale is not None:
        if exact and isinstance(scale, Rational):
            return Fraction(pm) / Fraction(scale) ** m
        return float(pm) / float(scale) ** m
    if exact and isinstance(scale_squared, Rational):
        if m % 2 == 0:
            return Fraction(pm) / Fraction(scale_squared) ** (m // 2)
        if pm == 0:
            return Fraction(0)
    return float(pm) / float(scale_squared) ** (m / 2)


@dataclass(frozen=True)
class MomentTable:
    entries: dict
    state_index: int
    scaling: object
    engine: str
    include_diag: bool = False


def moment_table(N: int, m_max: int, rec: Recurrence, scale=None, include_diag: bool = False,
                 *, scale_squared=None, engine: str = "exact") -> MomentTable:
    """Moments of degree ``0..m_max``; with no scale given the moments are unscaled."""
    entries = {}
    for m in range(m_max + 1):
        if scale is None and scale_squared is None:
            entries[m] = position_moment(N, m, rec, include_diag, engine=engine)
        else:
            entries[m] = scaled_moment(N, m, rec, scale, include_diag,
                                       scale_squared=scale_squared, engine=engine)
    if scale is not None:
        scaling = scale
    elif scale_squared is not None:
        scaling = ("sqrt", scale_squared)
    else:
        scaling = 1
    return MomentTable(entries, N, scaling, engine, include_diag)
