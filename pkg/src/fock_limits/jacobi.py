"""Jacobi sequences and recurrence coefficients.

A :class:`JacobiSequence` holds the weights ``omega(n)`` (``n >= 1``) of an
interacting Fock space.  A :class:`Recurrence` pairs it with the diagonal
coefficients ``alpha(n)`` of the monic three-term recurrence

    x p_n = p_{n+1} + alpha(n+1) p_n + omega(n) p_{n-1}.

Built-in families with rational parameters return exact ``Fraction``/``int``
values; :func:`to_float` is the only lossy conversion.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Sequence

__all__ = [
    "FamilySpecError",
    "JacobiError",
    "JacobiSequence",
    "Recurrence",
    "RatioReport",
    "make_family",
    "parse_family",
    "q_number",
    "ratio_limit_check",
    "to_float",
]


class JacobiError(ValueError):
    """A Jacobi sequence or recurrence violates its invariants."""


class FamilySpecError(ValueError):
    """A family specification string could not be parsed."""


def to_float(x) -> float:
    return float(x)


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class JacobiSequence:
    """Weights ``omega(n)`` for ``n >= 1``.

    ``cutoff`` is ``None`` for infinite type.  For finite type with cutoff
    ``c``, ``omega(n) > 0`` for ``n < c`` and ``omega(n) == 0`` for ``n >= c``;
    the Fock space is then spanned by ``Phi_0 .. Phi_{c-1}``.
    """

    omega_fn: Callable[[int], object] = field(repr=False)
    cutoff: int | None = None
    family_tag: str = "custom"
    exact: bool = True

    @property
    def kind(self) -> str:
        return "infinite" if self.cutoff is None else "finite"

    @property
    def dimension(self) -> int | None:
        return self.cutoff

    def __call__(self, n: int):
        return self.omega(n)

    def omega(self, n: int):
        if n < 1:
            raise IndexError(f"omega is indexed from n = 1, got {n}")
        if self.cutoff is not None and n >= self.cutoff:
            return 0
        return self.omega_fn(n)

    def values(self, n_max: int) -> list:
        """``[omega(1), ..., omega(n_max)]``."""
        return [self.omega(n) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class Recurrence:
    """Paired coefficients ``(alpha, omega)`` of a family of monic polynomials."""

    alpha_fn: Callable[[int], object] = field(repr=False)
    omega: JacobiSequence
    symmetric: bool = False

    @property
    def family_tag(self) -> str:
        return self.omega.family_tag

    @property
    def exact(self) -> bool:
        return self.omega.exact

    @property
    def cutoff(self) -> int | None:
        return self.omega.cutoff

    def alpha(self, n: int):
        if n < 1:
            raise IndexError(f"alpha is indexed from n = 1, got {n}")
        if self.symmetric:
            return 0
        return self.alpha_fn(n)

    def w(self, n: int):
        """Shorthand for ``omega.omega(n)``."""
        return self.omega.omega(n)


def q_number(n: int, q):
    """``[n]_q = 1 + q + ... + q^(n-1)``, via the closed form when ``q != 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if q == 1:
        return n if _is_exact(q) else float(n)
    if _is_exact(q):
        val = Fraction(1 - q**n) / (1 - q)
        return val.numerator if val.denominator == 1 else val
    return (1 - q**n) / (1 - q)


def _coerce_scalar(x):
    """Exact scalars for ints, Fractions and decimal/fraction strings."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Rational):
        return Fraction(x) if not isinstance(x, int) else x
    if isinstance(x, str):
        try:
            val = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FamilySpecError(f"not a number: {x!r}") from exc
        return val.numerator if val.denominator == 1 else val
    if isinstance(x, float):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _zero(n):
    return 0


def _oscillator() -> Recurrence:
    seq = JacobiSequence(lambda n: n, family_tag="oscillator")
    return Recurrence(_zero, seq, symmetric=True)


def _free() -> Recurrence:
    seq = JacobiSequence(lambda n: 1, family_tag="free")
    return Recurrence(_zero, seq, symmetric=True)


def _laguerre() -> Recurrence:
    # alpha(n+1) = 2n + 1 is the diagonal coefficient multiplying l_n
    seq = JacobiSequence(lambda n: n * n, family_tag="laguerre")
    return Recurrence(lambda n: 2 * n - 1, seq, symmetric=False)


def _q_gaussian(q) -> Recurrence:
    q = _coerce_scalar(q)
    if not (-1 < q <= 1):
        raise JacobiError(f"q must satisfy -1 < q <= 1, got {q}")
    exact = _is_exact(q)

    @lru_cache(maxsize=4096)
    def omega(n):
        return q_number(n, q)

    seq = JacobiSequence(omega, family_tag=f"q:{q}", exact=exact)
    return Recurrence(_zero, seq, symmetric=True)


def _custom(omega: Sequence, alpha: Sequence | None = None) -> Recurrence:
    omegas = [_coerce_scalar(w) for w in omega]
    if not omegas:
        raise JacobiError("custom family needs at least one omega value")
    cutoff = None
    for i, w in enumerate(omegas, start=1):
        if w < 0:
            raise JacobiError(f"omega({i}) = {w} is negative")
        if w == 0 and cutoff is None:
            cutoff = i
        elif w > 0 and cutoff is not None:
            raise JacobiError(f"omega({i}) = {w} is positive after the cutoff {cutoff}")
    if cutoff is None:
        # omega beyond the supplied list is zero
        cutoff = len(omegas) + 1
    omegas = tuple(omegas)
    alphas = tuple(_coerce_scalar(a) for a in (alpha or ()))
    exact = all(_is_exact(x) for x in omegas + alphas)
    symmetric = all(a == 0 for a in alphas)

    def omega_fn(n):
        return omegas[n - 1] if n <= len(omegas) else 0

    def alpha_fn(n):
        return alphas[n - 1] if n <= len(alphas) else 0

    tag = "custom:[" + ",".join(str(w) for w in omegas) + "]"
    seq = JacobiSequence(omega_fn, cutoff=cutoff, family_tag=tag, exact=exact)
    return Recurrence(alpha_fn, seq, symmetric=symmetric)


def make_family(name: str, q=None, omega: Sequence | None = None,
                alpha: Sequence | None = None) -> Recurrence:
    """Build a built-in recurrence.

    ``name`` is one of ``oscillator``, ``q_gaussian`` (needs ``q``),
    ``laguerre``, ``free`` or ``custom`` (needs ``omega``, optional ``alpha``).
    A custom ``omega`` list is finite type: the cutoff is the first zero entry,
    or ``len(omega) + 1`` if every entry is positive.
    """
    if name == "oscillator":
        return _oscillator()
    if name == "free":
        return _free()
    if name == "laguerre":
        return _laguerre()
    if name in ("q_gaussian", "q"):
        if q is None:
            raise JacobiError("q_gaussian needs a q parameter")
        return _q_gaussian(q)
    if name == "custom":
        if omega is None:
            raise JacobiError("custom family needs an omega list")
        return _custom(omega, alpha)
    raise FamilySpecError(f"unknown family {name!r}")


_CUSTOM_RE = re.compile(r"^custom:\[(.*)\]$")


def parse_family(spec: str) -> Recurrence:
    """Parse ``oscillator``, ``free``, ``laguerre``, ``q:<number>`` or
    ``custom:[w1,w2,...]``.  Numbers may be integers, decimals or fractions
    (``q:1/2``) and are kept exact.
    """
    spec = spec.strip()
    if spec in ("oscillator", "free", "laguerre"):
        return make_family(spec)
    if spec.startswith("q:"):
        q = _coerce_scalar(spec[2:])
        return make_family("q_gaussian", q=q)
    m = _CUSTOM_RE.match(spec)
    if m:
        items = [s for s in (t.strip() for t in m.group(1).split(",")) if s]
        if not items:
            raise FamilySpecError("custom list is empty")
        return make_family("custom", omega=items)
    raise FamilySpecError(f"unknown family spec {spec!r}")


@dataclass(frozen=True)
class RatioReport:
    ratios: list
    plausibly_convergent_to_1: bool


def ratio_limit_check(seq: JacobiSequence | Recurrence, n_max: int, tol=1e-2) -> RatioReport:
    """Ratios ``omega(n+1)/omega(n)`` for ``n = 1..n_max`` and a heuristic flag.

    The flag is true iff ``|ratio - 1|`` is nonincreasing over the second half
    of the range and the last ratio is within ``tol`` of 1.  It is a
    diagnostic, not a proof of convergence.
    """
    if isinstance(seq, Recurrence):
        seq = seq.omega
    if seq.kind != "infinite":
        raise JacobiError("ratio check needs an infinite-type sequence")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    ws = seq.values(n_max + 1)
    if seq.exact:
        ratios = [Fraction(ws[i + 1], ws[i]) for i in range(n_max)]
    else:
        ratios = [ws[i + 1] / ws[i] for i in range(n_max)]
    dev = [abs(r - 1) for r in ratios]
    tail = dev[len(dev) // 2:]
    monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    return RatioReport(ratios, bool(monotone and dev[-1] <= tol))
