"""Based quantum tori over Z[q^(+-1/2)].

Basis monomials ``X^e`` (``e`` in Z^m) multiply by
``X^e X^f = q^(L(e,f)/2) X^(e+f)`` for an integer skew form ``L``.
Elements are finite sums of basis monomials with :class:`QLaurent`
coefficients.  Exponent vectors are tuples of ints.
"""
from __future__ import annotations

import heapq
from operator import add, mul, sub
from typing import Iterable, Mapping, Sequence

from ._fastmul import twisted_product
from .errors import NotDivisible, RankMismatch, NotSkewSymmetric
from .qscalar import ONE, QLaurent, _div_raw, _mul_raw

__all__ = [
    "ExpVec",
    "SkewForm",
    "TorusElement",
    "torus_mul",
    "torus_bar",
    "exact_left_divide",
    "exact_right_divide",
    "frame_product",
    "ordered_product",
]

ExpVec = tuple  # tuple[int, ...]

# products with at least this many term pairs go through numpy
_VECTOR_THRESHOLD = 4096


class SkewForm:
    """Integer skew-symmetric matrix defining the twist of a quantum torus."""

    __slots__ = ("matrix", "m", "_hash")

    def __init__(self, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        m = len(rows)
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValueError(f"skew form must be square, row {i} has length {len(row)}")
        for i in range(m):
            for j in range(i, m):
                if rows[i][j] != -rows[j][i]:
                    raise NotSkewSymmetric(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are {rows[i][j]} and {rows[j][i]}"
                    )
        self.matrix = rows
        self.m = m
        self._hash = hash(rows)

    @classmethod
    def zero(cls, m: int) -> "SkewForm":
        return cls([[0] * m for _ in range(m)])

    def __call__(self, e: Sequence[int], f: Sequence[int]) -> int:
        return sum(map(mul, self.row(e), f))

    def row(self, e: Sequence[int]) -> tuple[int, ...]:
        """The covector ``e^T L``."""
        out = [0] * self.m
        for ei, r in zip(e, self.matrix):
            if ei:
                for j, x in enumerate(r):
                    out[j] += ei * x
        return tuple(out)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.matrix[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewForm) and (self is other or self.matrix == other.matrix)

    def __hash__(self) -> int:
        return self._hash

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def __repr__(self) -> str:
        return f"SkewForm({self.to_json()})"


def _vec(e: Iterable[int]) -> ExpVec:
    return tuple(int(x) for x in e)


class TorusElement:
    """Immutable finite combination ``sum_e c_e X^e`` in a based quantum torus."""

    __slots__ = ("form", "_t", "_hash")

    def __init__(self, form: SkewForm, terms: Mapping[Sequence[int], QLaurent | int] | None = None):
        self.form = form
        t: dict[ExpVec, QLaurent] = {}
        if terms:
            for e, c in terms.items():
                e = _vec(e)
                if len(e) != form.m:
                    raise RankMismatch(f"exponent of length {len(e)} in a rank-{form.m} torus")
                c = QLaurent._coerce(c)
                if e in t:
                    c = t[e] + c
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, form: SkewForm, t: dict[ExpVec, QLaurent]) -> "TorusElement":
        obj = cls.__new__(cls)
        obj.form = form
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def _from_raw_dicts(cls, form: SkewForm, acc: dict[ExpVec, dict[int, int]]) -> "TorusElement":
        t = {}
        for e, c in acc.items():
            c = {r: v for r, v in c.items() if v}
            if c:
                t[e] = QLaurent._raw(c)
        return cls._raw(form, t)

    @classmethod
    def monomial(cls, form: SkewForm, e: Sequence[int], coeff: QLaurent | int = 1) -> "TorusElement":
        return cls(form, {_vec(e): coeff})

    @classmethod
    def one(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {(0,) * form.m: ONE})

    @classmethod
    def zero(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {})

    @property
    def terms(self) -> dict[ExpVec, QLaurent]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def coefficient(self, e: Sequence[int]) -> QLaurent:
        return self._t.get(_vec(e), QLaurent())

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1 and next(iter(self._t.values())).monomial() is not None

    def leading_term(self) -> tuple[ExpVec, QLaurent]:
        """Lexicographically largest exponent with its coefficient."""
        if not self._t:
            raise ValueError("zero element has no leading term")
        e = max(self._t)
        return e, self._t[e]

    def __eq__(self, other) -> bool:
        if isinstance(other, TorusElement):
            return self.form == other.form and self._t == other._t
        if isinstance(other, (int, QLaurent)):
            return self == TorusElement(self.form, {(0,) * self.form.m: other})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def _check(self, other: "TorusElement") -> None:
        if self.form != other.form:
            raise RankMismatch("operands belong to quantum tori with different skew forms")

    def _lift(self, other) -> "TorusElement | None":
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, (int, QLaurent)):
            return TorusElement(self.form, {(0,) * self.form.m: other})
        return None

    def __add__(self, other) -> "TorusElement":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            s = t[e] + c if e in t else c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return TorusElement._raw(self.form, t)

    __radd__ = __add__

    def __neg__(self) -> "TorusElement":
        return TorusElement._raw(self.form, {e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> "TorusElement":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TorusElement":
        return (-self) + other

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        if isinstance(other, TorusElement):
            return torus_mul(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "TorusElement":
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            raise ValueError("use exact division for negative powers")
        out = TorusElement.one(self.form)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def scale(self, c: QLaurent | int) -> "TorusElement":
        c = QLaurent._coerce(c)
        if not c:
            return TorusElement.zero(self.form)
        return TorusElement._raw(self.form, {e: v * c for e, v in self._t.items()})

    def shift_q(self, twice: int) -> "TorusElement":
        """Multiply every coefficient by ``q^(twice/2)``."""
        if not twice:
            return self
        return TorusElement._raw(self.form, {e: c.shift(twice) for e, c in self._t.items()})

    def bar(self) -> "TorusElement":
        return TorusElement._raw(self.form, {e: c.bar() for e, c in self._t.items()})

    def times_monomial(self, f: Sequence[int], left: bool = False) -> "TorusElement":
        """``self * X^f`` (or ``X^f * self`` when ``left``); cheaper than a full product."""
        f = _vec(f)
        row_f = self.form.row(f)
        t = {}
        for e, c in self._t.items():
            tw = sum(map(mul, row_f, e))  # L(f, e)
            t[tuple(map(add, e, f))] = c.shift(tw if left else -tw)
        return TorusElement._raw(self.form, t)

    def to_json(self) -> list[dict]:
        return [{"exponent": list(e), "coefficient": self._t[e].to_json()} for e in sorted(self._t)]

    @classmethod
    def from_json(cls, form: SkewForm, data) -> "TorusElement":
        return cls(form, {tuple(d["exponent"]): QLaurent.from_json(d["coefficient"]) for d in data})

    def __repr__(self) -> str:
        return f"TorusElement({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mono = "" if not any(e) else "X^(" + ",".join(map(str, e)) + ")"
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif len(c) > 1:
                parts.append(f"({cs}){mono}")
            else:
                parts.append(f"{cs}{mono}")
        return " + ".join(parts)


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    """Twisted product ``a * b``."""
    a._check(b)
    form = a.form
    if len(a._t) * len(b._t) >= _VECTOR_THRESHOLD:
        raw = twisted_product(form.matrix, a._t, b._t, form.m)
        if raw is not None:
            return TorusElement._raw(form, {e: QLaurent._raw(c) for e, c in raw.items()})
    acc: dict[ExpVec, dict[int, int]] = {}
    bt = [(f, cb._c) for f, cb in b._t.items()]
    for e, ca in a._t.items():
        row = form.row(e)
        ca = ca._c
        for f, cb in bt:
            tw = sum(map(mul, row, f))
            key = tuple(map(add, e, f))
            tgt = acc.get(key)
            if tgt is None:
                tgt = acc[key] = {}
            get = tgt.get
            for r1, v1 in ca.items():
                r1 += tw
                for r2, v2 in cb.items():
                    k = r1 + r2
                    tgt[k] = get(k, 0) + v1 * v2
    return TorusElement._from_raw_dicts(form, acc)


def torus_bar(a: TorusElement) -> TorusElement:
    """Bar involution: conjugate every coefficient, keep the basis monomials."""
    return a.bar()


def _box(t: Iterable[ExpVec], m: int) -> tuple[list[int], list[int]]:
    lo = [None] * m
    hi = [None] * m
    for e in t:
        for i, x in enumerate(e):
            if lo[i] is None or x < lo[i]:
                lo[i] = x
            if hi[i] is None or x > hi[i]:
                hi[i] = x
    return lo, hi


def _exact_divide(divisor: TorusElement, numerator: TorusElement, left: bool) -> TorusElement:
    divisor._check(numerator)
    if not divisor:
        raise ZeroDivisionError("division by the zero element")
    form = divisor.form
    m = form.m
    if not numerator:
        return TorusElement.zero(form)
    lead_d, lc_d = divisor.leading_term()
    lc_d = lc_d._c
    d_terms = [(g, c._c) for g, c in divisor._t.items()]

    # Newton polytope of the quotient sits in this box
    nlo, nhi = _box(numerator._t, m)
    dlo, dhi = _box(divisor._t, m)
    qlo = list(map(sub, nlo, dlo))
    qhi = list(map(sub, nhi, dhi))

    rem: dict[ExpVec, dict[int, int]] = {e: dict(c._c) for e, c in numerator._t.items()}
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot: dict[ExpVec, QLaurent] = {}
    while rem:
        while True:
            e = tuple(-x for x in heapq.heappop(heap))
            if e in rem:
                break
        f = tuple(map(sub, e, lead_d))
        if any(x < lo or x > hi for x, lo, hi in zip(f, qlo, qhi)):
            raise NotDivisible("quotient would leave the Newton box of numerator / divisor")
        row_f = form.row(f)
        tw = sum(map(mul, row_f, lead_d))  # L(f, lead)
        tw = -tw if left else tw  # left: L(lead, f)
        cq = _div_raw(rem[e], lc_d)
        if tw:
            cq = {r - tw: v for r, v in cq.items()}
        quot[f] = QLaurent._raw(cq)
        for g, cg in d_terms:
            twg = sum(map(mul, row_f, g))  # L(f, g)
            if left:
                twg = -twg
            key = tuple(map(add, g, f))
            tgt = rem.get(key)
            if tgt is None:
                tgt = rem[key] = {}
                heapq.heappush(heap, tuple(-x for x in key))
            get = tgt.get
            for r1, v1 in cg.items():
                r1 += twg
                for r2, v2 in cq.items():
                    k = r1 + r2
                    s = get(k, 0) - v1 * v2
                    if s:
                        tgt[k] = s
                    else:
                        tgt.pop(k, None)
            if not tgt:
                del rem[key]
        if e in rem:
            raise NotDivisible("leading term failed to cancel")
    return TorusElement._raw(form, quot)


def exact_left_divide(divisor: TorusElement, numerator: TorusElement) -> TorusElement:
    """Return ``Q`` with ``divisor * Q == numerator``; raise NotDivisible if none exists in the torus."""
    return _exact_divide(divisor, numerator, left=True)


def exact_right_divide(numerator: TorusElement, divisor: TorusElement) -> TorusElement:
    """Return ``Q`` with ``Q * divisor == numerator``."""
    return _exact_divide(divisor, numerator, left=False)


def frame_product(form: SkewForm, factors: Sequence[tuple[Sequence[int], int]], q_shift: int = 0) -> TorusElement:
    """``q^(q_shift/2) * prod (X^c)^p`` over the ordered factors; ``q_shift`` is a doubled exponent."""
    total = [0] * form.m
    tw = int(q_shift)
    for c, p in factors:
        if p < 0:
            raise ValueError("frame_product takes nonnegative powers")
        if not p:
            continue
        v = [p * int(x) for x in c]
        tw += form(total, v)
        total = list(map(add, total, v))
    return TorusElement._raw(form, {tuple(total): QLaurent.q_power(tw)})


def ordered_product(form: SkewForm, factors: Sequence[tuple[TorusElement, int]], q_shift: int = 0) -> TorusElement:
    """``q^(q_shift/2) * prod A_i^(p_i)`` in the listed order."""
    out = TorusElement.one(form)
    for a, p in factors:
        if p < 0:
            raise ValueError("ordered_product takes nonnegative powers")
        if p:
            out = out * (a ** p)
    return out.shift_q(q_shift)

