"""Exact arithmetic in the Laurent ring Z[q^(1/2), q^(-1/2)].

Exponents of q are half-integers.  They are stored doubled, so the
monomial ``q^(k/2)`` is keyed by the integer ``k`` everywhere in the
package.  Coefficients are Python integers and never overflow.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import NotDivisible

__all__ = [
    "HalfInt",
    "QLaurent",
    "ZERO",
    "ONE",
    "qlaurent_mul",
    "qlaurent_bar",
    "qlaurent_eval_one",
    "t_binomial",
    "t_binomial_row",
]

# A half-integer k/2 is carried as the plain integer k.
HalfInt = int


class QLaurent:
    """Immutable element of Z[q^(+-1/2)] as a map ``twice_exponent -> coefficient``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        c: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, v in items:
                e = int(e)
                v = int(v)
                if v:
                    v += c.get(e, 0)
                    if v:
                        c[e] = v
                    else:
                        c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "QLaurent":
        # caller guarantees no zero values
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def q_power(cls, twice_exp: int, coeff: int = 1) -> "QLaurent":
        """Return ``coeff * q^(twice_exp/2)``."""
        return cls._raw({int(twice_exp): int(coeff)} if coeff else {})

    @classmethod
    def const(cls, n: int) -> "QLaurent":
        return cls.q_power(0, n)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, QLaurent):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    @staticmethod
    def _coerce(x) -> "QLaurent":
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, int):
            return QLaurent.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a QLaurent")

    def __add__(self, other) -> "QLaurent":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                del c[e]
        return QLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "QLaurent":
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "QLaurent":
        return (-self) + other

    def __mul__(self, other) -> "QLaurent":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QLaurent._raw(_mul_raw(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QLaurent":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def shift(self, twice: int) -> "QLaurent":
        """Multiply by ``q^(twice/2)``."""
        if not twice:
            return self
        return QLaurent._raw({e + twice: v for e, v in self._c.items()})

    def bar(self) -> "QLaurent":
        return QLaurent._raw({-e: v for e, v in self._c.items()})

    def eval_one(self) -> int:
        return sum(self._c.values())

    def monomial(self) -> tuple[int, int] | None:
        """``(twice_exponent, coeff)`` when this is a single term, else None."""
        if len(self._c) != 1:
            return None
        return next(iter(self._c.items()))

    def degree_range(self) -> tuple[int, int]:
        if not self._c:
            raise ValueError("zero has no degree")
        return min(self._c), max(self._c)

    def exact_div(self, other: "QLaurent | int") -> "QLaurent":
        """Quotient ``self / other`` when it lies in Z[q^(+-1/2)]; raise NotDivisible otherwise."""
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero in Z[q^(+-1/2)]")
        return QLaurent._raw(_div_raw(self._c, other._c))

    def to_json(self) -> list[list[int]]:
        return [[e, self._c[e]] for e in sorted(self._c)]

    @classmethod
    def from_json(cls, data) -> "QLaurent":
        return cls((int(e), int(v)) for e, v in data)

    def __repr__(self) -> str:
        return f"QLaurent({self.to_json()})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                qp = _q_power_str(e)
                body = qp if mag == 1 else f"{mag}{qp}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _q_power_str(twice: int) -> str:
    if twice == 2:
        return "q"
    ex = Fraction(twice, 2)
    return f"q^{{{ex}}}"


def _mul_raw(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    for e2, v2 in b.items():
        for e1, v1 in a.items():
            k = e1 + e2
            out[k] = get(k, 0) + v1 * v2
    return {e: v for e, v in out.items() if v}


def _div_raw(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    if len(den) == 1:
        (de, dv), = den.items()
        out = {}
        for e, v in num.items():
            qv, r = divmod(v, dv)
            if r:
                raise NotDivisible(f"{v} is not divisible by {dv}")
            out[e - de] = qv
        return out
    if not num:
        return {}
    rem = dict(num)
    dlo, dhi = min(den), max(den)
    lc = den[dhi]
    lo_bound = min(num) - dlo
    quot: dict[int, int] = {}
    while rem:
        hi = max(rem)
        qe = hi - dhi
        if qe < lo_bound:
            raise NotDivisible("Laurent polynomial division leaves a remainder")
        qv, r = divmod(rem[hi], lc)
        if r:
            raise NotDivisible(f"leading coefficient {rem[hi]} not divisible by {lc}")
        quot[qe] = qv
        for e, v in den.items():
            k = e + qe
            s = rem.get(k, 0) - qv * v
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot


ZERO = QLaurent()
ONE = QLaurent.const(1)


def qlaurent_mul(a: QLaurent, b: QLaurent) -> QLaurent:
    return a * b


def qlaurent_bar(a: QLaurent) -> QLaurent:
    """Bar involution ``q^(r/2) -> q^(-r/2)``."""
    return a.bar()


def qlaurent_eval_one(a: QLaurent) -> int:
    """Specialize ``q = 1``."""
    return a.eval_one()


@lru_cache(maxsize=None)
def t_binomial_row(r: int, d_half_units: int) -> tuple[QLaurent, ...]:
    """All coefficients of ``prod_{p=0}^{r-1} (1 + t^(r-1-2p) x)`` in x, with ``t = q^(d/2)``.

    Entry p of the result is the symmetric Gaussian binomial (r choose p)_t.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if d_half_units <= 0:
        raise ValueError("d must be positive")
    # polynomial in x with coefficients raw dicts over twice-exponents of q
    poly: list[dict[int, int]] = [{0: 1}]
    for p in range(r):
        # t^(r-1-2p) = q^(d (r-1-2p) / 2), i.e. twice exponent d (r-1-2p)
        tw = d_half_units * (r - 1 - 2 * p)
        nxt: list[dict[int, int]] = [dict(c) for c in poly] + [{}]
        for i, c in enumerate(poly):
            tgt = nxt[i + 1]
            for e, v in c.items():
                tgt[e + tw] = tgt.get(e + tw, 0) + v
        poly = [{e: v for e, v in c.items() if v} for c in nxt]
    return tuple(QLaurent._raw(c) for c in poly)


def t_binomial(r: int, p: int, d_half_units: int) -> QLaurent:
    """Gaussian binomial ``(r choose p)_t`` at ``t = q^(d/2)``; zero outside ``0 <= p <= r``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if p < 0 or p > r:
        return ZERO
    return t_binomial_row(r, d_half_units)[p]
