"""Commutative cluster combinatorics: matrix mutation, F-polynomials,
g-vectors, extended g-vectors and denominator vectors.

This module deliberately shares no arithmetic with the quantum torus code.
It serves as the q = 1 oracle for the quantum engine.

Directions and vertex labels are 1-based throughout the public API, so a
mutation word is written ``(2, 1, 2)`` in the order the mutations are applied.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from operator import add, sub
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadDirection,
    EpsilonMismatch,
    InexactDivision,
    NotSkewSymmetrizable,
)

__all__ = [
    "Matrix",
    "ExchangeData",
    "CommPoly",
    "as_matrix",
    "find_symmetrizer",
    "matrix_mutate",
    "mutate_matrix",
    "reduce_word",
    "principal_matrix",
    "matrix_path",
    "classical_f_polys",
    "g_vectors",
    "g_vector_step",
    "extended_g_vectors",
    "denominator_vectors",
]

Matrix = tuple  # tuple[tuple[int, ...], ...]


def _pos(x: int) -> int:
    return x if x > 0 else 0


def as_matrix(b: Iterable[Iterable[int]]) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in b)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def _check_symmetrizer(b0: Matrix, d: Sequence[int]) -> None:
    n = len(b0)
    for i in range(n):
        for j in range(i, n):
            if d[i] * b0[i][j] != -d[j] * b0[j][i]:
                raise NotSkewSymmetrizable(
                    f"d_{i + 1} b_{i + 1}{j + 1} = {d[i] * b0[i][j]} but "
                    f"-d_{j + 1} b_{j + 1}{i + 1} = {-d[j] * b0[j][i]} (pair ({i + 1},{j + 1}))"
                )


def find_symmetrizer(b0: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Smallest positive integer vector ``d`` with ``d_i b_ij = -d_j b_ji``.

    Each connected component is normalised so that its entries are coprime.
    Raises NotSkewSymmetrizable when no such vector exists.
    """
    b0 = as_matrix(b0)
    n = len(b0)
    for row in b0:
        if len(row) != n:
            raise ValueError("principal part must be square")
    for i in range(n):
        if b0[i][i]:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at ({i + 1},{i + 1})")
        for j in range(n):
            if (b0[i][j] == 0) != (b0[j][i] == 0) or (b0[i][j] * b0[j][i] > 0):
                raise NotSkewSymmetrizable(
                    f"sign pattern of ({i + 1},{j + 1}) and ({j + 1},{i + 1}) is not skew"
                )
    ratio: list[Fraction | None] = [None] * n
    d = [0] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b0[i][j] == 0:
                    continue
                # d_j = -d_i b_ij / b_ji
                r = ratio[i] * Fraction(-b0[i][j], b0[j][i])
                if ratio[j] is None:
                    ratio[j] = r
                    comp.append(j)
                    stack.append(j)
                elif ratio[j] != r:
                    raise NotSkewSymmetrizable(f"no consistent symmetrizer around pair ({i + 1},{j + 1})")
        den = lcm(*(ratio[i].denominator for i in comp))
        ints = [int(ratio[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = x // g
    out = tuple(d)
    _check_symmetrizer(b0, out)
    return out


def mutate_matrix(b: Matrix, k: int) -> Matrix:
    """Matrix mutation of an ``m x n`` integer matrix in 1-based direction ``k``."""
    n = len(b[0]) if b else 0
    if not 1 <= k <= n:
        raise BadDirection(f"direction {k} outside [1, {n}]")
    k -= 1
    out = []
    for i, row in enumerate(b):
        bik = row[k]
        new = []
        for j, bij in enumerate(row):
            if i == k or j == k:
                new.append(-bij)
            else:
                bkj = b[k][j]
                prod = bik * bkj
                if prod > 0:
                    new.append(bij + (prod if bik > 0 else -prod))
                else:
                    new.append(bij)
        out.append(tuple(new))
    return tuple(out)


def reduce_word(word: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent repeated directions (mutation is an involution)."""
    stack: list[int] = []
    for k in word:
        k = int(k)
        if stack and stack[-1] == k:
            stack.pop()
        else:
            stack.append(k)
    return tuple(stack)


def _check_word(word: Iterable[int], n: int) -> tuple[int, ...]:
    w = tuple(int(k) for k in word)
    for k in w:
        if not 1 <= k <= n:
            raise BadDirection(f"direction {k} outside [1, {n}]")
    return w


@dataclass(frozen=True)
class ExchangeData:
    """An ``m x n`` exchange matrix together with its skew-symmetrizer ``d``."""

    btilde: Matrix
    d: tuple[int, ...]

    def __post_init__(self):
        bt = as_matrix(self.btilde)
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "btilde", bt)
        object.__setattr__(self, "d", d)
        m = len(bt)
        n = len(bt[0]) if bt else 0
        if m < n:
            raise ValueError(f"exchange matrix has {m} rows but {n} columns")
        if len(d) != n:
            raise ValueError(f"symmetrizer has length {len(d)}, expected {n}")
        if any(x <= 0 for x in d):
            raise ValueError("symmetrizer entries must be positive")
        _check_symmetrizer(bt[:n], d)

    @classmethod
    def from_matrix(cls, btilde: Iterable[Iterable[int]], d: Sequence[int] | int | None = None) -> "ExchangeData":
        bt = as_matrix(btilde)
        n = len(bt[0]) if bt else 0
        if d is None:
            d = find_symmetrizer(bt[:n])
        elif isinstance(d, int):
            d = (d,) * n
        return cls(bt, tuple(d))

    @classmethod
    def principal(cls, b0: Iterable[Iterable[int]], d: Sequence[int] | int | None = None) -> "ExchangeData":
        b0 = as_matrix(b0)
        return cls.from_matrix(principal_matrix(b0), d)

    @property
    def m(self) -> int:
        return len(self.btilde)

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def principal_part(self) -> Matrix:
        return self.btilde[: self.n]

    def column(self, j: int) -> tuple[int, ...]:
        """1-based column ``j`` of the full exchange matrix."""
        return tuple(row[j - 1] for row in self.btilde)

    def mutate(self, k: int) -> "ExchangeData":
        return ExchangeData(mutate_matrix(self.btilde, k), self.d)

    def to_json(self) -> dict:
        return {"btilde": [list(r) for r in self.btilde], "d": list(self.d)}

    @classmethod
    def from_json(cls, data: Mapping) -> "ExchangeData":
        return cls.from_matrix(data["btilde"], data.get("d"))


def matrix_mutate(b: ExchangeData, k: int) -> ExchangeData:
    return b.mutate(k)


def principal_matrix(b0: Iterable[Iterable[int]]) -> Matrix:
    """Stack the identity under ``b0``."""
    b0 = as_matrix(b0)
    n = len(b0)
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return b0 + eye


def matrix_path(b: Matrix, word: Sequence[int]) -> Iterator[tuple[int, Matrix]]:
    """Yield ``(k, B_t)`` for every step, where ``B_t`` is the matrix before mutating at ``k``."""
    for k in word:
        yield k, b
        b = mutate_matrix(b, k)


def _b0_and_d(b0) -> tuple[Matrix, tuple[int, ...]]:
    if isinstance(b0, ExchangeData):
        return b0.principal_part, b0.d
    b0 = as_matrix(b0)
    return b0, find_symmetrizer(b0)


class CommPoly:
    """Polynomial with integer coefficients in commuting variables ``u1..un``."""

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[Sequence[int], int] | None = None):
        self.n = n
        t: dict[tuple[int, ...], int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError("exponent length mismatch")
            if any(x < 0 for x in e):
                raise ValueError("CommPoly exponents must be nonnegative")
            c = int(c) + t.get(e, 0)
            if c:
                t[e] = c
            else:
                t.pop(e, None)
        self._t = t

    @classmethod
    def _raw(cls, n: int, t: dict) -> "CommPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = t
        return obj

    @classmethod
    def one(cls, n: int) -> "CommPoly":
        return cls._raw(n, {(0,) * n: 1})

    @classmethod
    def variable(cls, n: int, i: int) -> "CommPoly":
        """The variable ``u_i`` (1-based)."""
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1})

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._t)

    def __eq__(self, other) -> bool:
        return isinstance(other, CommPoly) and self.n == other.n and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._t.items())))

    def __add__(self, other: "CommPoly") -> "CommPoly":
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return CommPoly._raw(self.n, t)

    def __mul__(self, other: "CommPoly") -> "CommPoly":
        acc: dict[tuple[int, ...], int] = {}
        get = acc.get
        for e, c in self._t.items():
            for f, d in other._t.items():
                k = tuple(map(add, e, f))
                acc[k] = get(k, 0) + c * d
        return CommPoly._raw(self.n, {e: c for e, c in acc.items() if c})

    def __pow__(self, k: int) -> "CommPoly":
        out = CommPoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, other: "CommPoly") -> "CommPoly":
        """Quotient by lexicographic leading terms; InexactDivision on a remainder."""
        if not other._t:
            raise ZeroDivisionError("division by zero polynomial")
        lead = max(other._t)
        lc = other._t[lead]
        rem = dict(self._t)
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            while True:
                e = tuple(-x for x in heapq.heappop(heap))
                if e in rem:
                    break
            f = tuple(map(sub, e, lead))
            if min(f, default=0) < 0:
                raise InexactDivision(f"term u^{e} is not divisible by the leading term u^{lead}")
            c, r = divmod(rem[e], lc)
            if r:
                raise InexactDivision(f"coefficient {rem[e]} not divisible by {lc}")
            quot[f] = c
            for g, cg in other._t.items():
                k = tuple(map(add, g, f))
                s = rem.get(k, 0) - c * cg
                if k not in rem:
                    heapq.heappush(heap, tuple(-x for x in k))
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return CommPoly._raw(self.n, quot)

    def constant_term(self) -> int:
        return self._t.get((0,) * self.n, 0)

    def evaluate(self, values: Sequence) -> object:
        """Substitute ``values[i-1]`` for ``u_i``; values may be any commutative ring elements."""
        total = 0
        for e, c in self._t.items():
            term = c
            for v, x in zip(values, e):
                if x:
                    term = term * v**x
            total = total + term
        return total

    def to_json(self) -> list[dict]:
        return [{"a": list(e), "coeff": self._t[e]} for e in sorted(self._t)]

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = ""
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mono = "*".join(
                (f"u{i + 1}" if x == 1 else f"u{i + 1}^{x}") for i, x in enumerate(e) if x
            )
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"CommPoly({self})"


def classical_f_polys(b0, word: Sequence[int]) -> list[CommPoly]:
    """F-polynomials ``F_{1;t}, ..., F_{n;t}`` at the end of ``word`` (principal coefficients)."""
    b0, _ = _b0_and_d(b0)
    n = len(b0)
    word = _check_word(word, n)
    us = [CommPoly.variable(n, j) for j in range(1, n + 1)]
    f = [CommPoly.one(n) for _ in range(n)]
    for k, b in matrix_path(principal_matrix(b0), word):
        col = [row[k - 1] for row in b]
        plus = CommPoly.one(n)
        minus = CommPoly.one(n)
        for i in range(n):
            if col[i] > 0:
                plus = plus * f[i] ** col[i]
            elif col[i] < 0:
                minus = minus * f[i] ** (-col[i])
        for j in range(n):
            c = col[n + j]
            if c > 0:
                plus = plus * us[j] ** c
            elif c < 0:
                minus = minus * us[j] ** (-c)
        f[k - 1] = (plus + minus).exact_div(f[k - 1])
    return f


def g_vector_step(prin: Matrix, g: Sequence[Sequence[int]], k: int, b0: Matrix) -> tuple[int, ...]:
    """New g-vector in direction ``k`` from the principal matrix ``prin`` at the current vertex.

    ``g`` holds the current g-vectors of the cluster indices.  Both sign
    branches are evaluated in Z^(2n), where frozen indices carry standard
    basis vectors, and must agree.
    """
    n = len(b0)
    kk = k - 1
    cols = [tuple(b0[i][j] for i in range(n)) + tuple(int(i == j) for i in range(n)) for j in range(n)]
    ext = [tuple(v) + (0,) * n for v in g] + [tuple(int(i == j) for i in range(2 * n)) for j in range(n, 2 * n)]
    results = []
    for eps in (1, -1):
        v = [-x for x in ext[kk]]
        for i in range(2 * n):
            c = _pos(eps * prin[i][kk])
            if c:
                v = [x + c * y for x, y in zip(v, ext[i])]
        for j in range(n):
            c = _pos(eps * prin[n + j][kk])
            if c:
                v = [x - c * y for x, y in zip(v, cols[j])]
        if any(v[n:]):
            raise EpsilonMismatch(f"g-vector leaves the cluster lattice in direction {k}: {v}")
        results.append(tuple(v[:n]))
    if results[0] != results[1]:
        raise EpsilonMismatch(f"sign branches disagree in direction {k}: {results[0]} vs {results[1]}")
    return results[0]


def g_vectors(b0, word: Sequence[int]) -> list[tuple[int, ...]]:
    """g-vectors at the end of ``word``; both sign branches are evaluated and compared."""
    b0, _ = _b0_and_d(b0)
    n = len(b0)
    word = _check_word(word, n)
    g = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for k, prin in matrix_path(principal_matrix(b0), word):
        g[k - 1] = g_vector_step(prin, g, k, b0)
    return g


def extended_g_vectors(btilde: ExchangeData, word: Sequence[int]) -> list[tuple[int, ...]]:
    """Extended g-vectors in Z^m for all ``m`` indices (frozen ones stay standard basis vectors)."""
    n, m = btilde.n, btilde.m
    word = _check_word(word, n)
    b0_cols = [btilde.column(j) for j in range(1, n + 1)]
    g = [tuple(int(i == j) for i in range(m)) for j in range(m)]
    bt = btilde.btilde
    prin = principal_matrix(btilde.principal_part)
    for k in word:
        kk = k - 1
        v = [-x for x in g[kk]]
        for i in range(m):
            c = _pos(-bt[i][kk])
            if c:
                v = [x + c * y for x, y in zip(v, g[i])]
        for j in range(n):
            c = _pos(-prin[n + j][kk])
            if c:
                v = [x - c * y for x, y in zip(v, b0_cols[j])]
        g[kk] = tuple(v)
        bt = mutate_matrix(bt, k)
        prin = mutate_matrix(prin, k)
    return g


def denominator_vectors(b0, word: Sequence[int]) -> list[tuple[int, ...]]:
    """Denominator vectors, starting from ``d_j = -e_j``."""
    b0, _ = _b0_and_d(b0)
    n = len(b0)
    word = _check_word(word, n)
    dv = [tuple(-int(i == j) for i in range(n)) for j in range(n)]
    for k, b in matrix_path(b0, word):
        kk = k - 1
        plus = [0] * n
        minus = [0] * n
        for i in range(n):
            c = b[i][kk]
            if c > 0:
                plus = [x + c * y for x, y in zip(plus, dv[i])]
            elif c < 0:
                minus = [x - c * y for x, y in zip(minus, dv[i])]
        dv[kk] = tuple(-x + max(p, q) for x, p, q in zip(dv[kk], plus, minus))
    return dv
