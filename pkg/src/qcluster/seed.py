"""Compatible pairs, quantum seeds and their mutation.

Every cluster variable is stored as a :class:`TorusElement` of the initial
quantum torus.  The exchange relation produces ``X_k^{-1} * (sum of two
frame monomials)``, which is evaluated by one exact left division.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classical import (
    ExchangeData,
    Matrix,
    as_matrix,
    find_symmetrizer,
    mutate_matrix,
    principal_matrix,
    reduce_word,
)
from .errors import BadDirection, EpsilonMismatch, NotCompatible, NotDivisible, UnsupportedExponent
from .qscalar import QLaurent, t_binomial
from .torus import SkewForm, TorusElement, exact_left_divide, exact_right_divide

__all__ = [
    "CompatiblePair",
    "QuantumSeed",
    "YHat",
    "SeedCache",
    "check_compatible",
    "principal_lambda",
    "principal_pair",
    "extended_principal_pair",
    "lambda_mutate",
    "e_matrix",
    "seed_monomial",
    "seed_mutate",
    "seed_along",
    "yhat_current",
    "yhat_recurrence",
    "toric_frame_mutation",
    "yhat_mutation_residual",
    "laurent_cluster_variables",
]


def _obj(a) -> np.ndarray:
    return np.array(a, dtype=object)


def _to_rows(a: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


def _btilde_of(exchange) -> Matrix:
    return exchange.btilde if isinstance(exchange, ExchangeData) else as_matrix(exchange)


def check_compatible(lam: SkewForm, exchange) -> tuple[int, ...]:
    """Verify ``B^T L = (D | 0)`` with positive ``D``; return the diagonal of ``D``."""
    bt = _btilde_of(exchange)
    m = len(bt)
    n = len(bt[0]) if bt else 0
    if lam.m != m:
        raise NotCompatible(f"skew form has rank {lam.m} but the exchange matrix has {m} rows")
    prod = _obj(bt).T.dot(_obj(lam.matrix)) if m else np.zeros((n, 0), dtype=object)
    d = []
    for j in range(n):
        for i in range(m):
            v = int(prod[j, i])
            if i == j:
                if v <= 0:
                    raise NotCompatible(f"diagonal entry ({j + 1},{i + 1}) of B^T L is {v}, must be positive")
            elif v:
                raise NotCompatible(f"entry ({j + 1},{i + 1}) of B^T L is {v}, expected 0")
        d.append(int(prod[j, j]))
    return tuple(d)


@dataclass(frozen=True)
class CompatiblePair:
    """A skew form and an exchange matrix with ``B^T L = (D | 0)``."""

    lam: SkewForm
    exchange: ExchangeData

    def __post_init__(self):
        d = check_compatible(self.lam, self.exchange)
        if d != self.exchange.d:
            object.__setattr__(self, "exchange", ExchangeData(self.exchange.btilde, d))

    @classmethod
    def from_matrices(cls, lam: Sequence[Sequence[int]] | SkewForm, btilde: Sequence[Sequence[int]]) -> "CompatiblePair":
        lam = lam if isinstance(lam, SkewForm) else SkewForm(lam)
        d = check_compatible(lam, btilde)
        return cls(lam, ExchangeData(as_matrix(btilde), d))

    @property
    def d(self) -> tuple[int, ...]:
        return self.exchange.d

    @property
    def n(self) -> int:
        return self.exchange.n

    @property
    def m(self) -> int:
        return self.exchange.m

    def mutate(self, k: int, epsilon: int | None = None) -> "CompatiblePair":
        return CompatiblePair(lambda_mutate(self.lam, self.exchange, k, epsilon), self.exchange.mutate(k))


def principal_lambda(b0, d: Sequence[int] | int, lam: SkewForm | Sequence[Sequence[int]] | None = None) -> SkewForm:
    """The quantization of the principal matrix built from an ``n x n`` skew form ``lam``."""
    b0 = as_matrix(b0)
    n = len(b0)
    if isinstance(d, int):
        d = (d,) * n
    ExchangeData(b0, tuple(d))  # validates skew-symmetrizability
    if lam is None:
        lam = SkewForm.zero(n)
    elif not isinstance(lam, SkewForm):
        lam = SkewForm(lam)
    if lam.m != n:
        raise ValueError(f"lam must be {n} x {n}")
    B = _obj(b0)
    L = _obj(lam.matrix) if n else np.zeros((0, 0), dtype=object)
    D = _obj(np.diag(d)) if n else np.zeros((0, 0), dtype=object)
    top = np.hstack([L, -L.dot(B) - D])
    bottom = np.hstack([-B.T.dot(L) + D, B.T.dot(L).dot(B) + B.T.dot(D)])
    return SkewForm(_to_rows(np.vstack([top, bottom])))


def principal_pair(b0, d: Sequence[int] | int | None = None, lam=None) -> CompatiblePair:
    """Principal exchange matrix with its quantization (``lam`` defaults to zero)."""
    b0 = as_matrix(b0)
    if d is None:
        d = find_symmetrizer(b0)
    return CompatiblePair.from_matrices(principal_lambda(b0, d, lam), principal_matrix(b0))


def extended_principal_pair(
    b0,
    d: Sequence[int] | int,
    extra_rows: Sequence[Sequence[int]],
    lam=None,
    extra_lam: Sequence[Sequence[int]] | None = None,
    cross: Sequence[Sequence[int]] | None = None,
) -> CompatiblePair:
    """Compatible pair for the principal matrix with further frozen rows appended.

    The extra rows ``R`` are removed by the unimodular change of basis ``P``
    that subtracts ``R`` times the identity block.  On the reduced matrix
    ``[B0; I; 0]`` the form is block diagonal up to a free cross block
    ``cross`` (``n x r``) and a free skew block ``extra_lam`` (``r x r``).
    Pulling back by ``P`` yields a form compatible with ``[B0; I; R]``.
    """
    b0 = as_matrix(b0)
    n = len(b0)
    R = as_matrix(extra_rows)
    r = len(R)
    if isinstance(d, int):
        d = (d,) * n
    m = 2 * n + r
    lam0 = _obj(principal_lambda(b0, d, lam).matrix)
    A = _obj(cross) if cross is not None else np.zeros((n, r), dtype=object)
    E = _obj(extra_lam) if extra_lam is not None else np.zeros((r, r), dtype=object)
    B = _obj(b0)
    pe = np.zeros((m, m), dtype=object)
    pe[: 2 * n, : 2 * n] = lam0
    pe[:n, 2 * n:] = A
    pe[n: 2 * n, 2 * n:] = -B.T.dot(A)
    pe[2 * n:, :n] = -A.T
    pe[2 * n:, n: 2 * n] = A.T.dot(B)
    pe[2 * n:, 2 * n:] = E
    P = np.zeros((m, m), dtype=object)
    for i in range(m):
        P[i, i] = 1
    if r:
        P[2 * n:, n: 2 * n] = -_obj(R)
    lam_full = P.T.dot(pe).dot(P)
    btilde = principal_matrix(b0) + R
    return CompatiblePair.from_matrices(SkewForm(_to_rows(lam_full)), btilde)


def e_matrix(btilde: Matrix, k: int, epsilon: int) -> np.ndarray:
    """The ``m x m`` matrix ``E_eps`` for direction ``k``."""
    m = len(btilde)
    kk = k - 1
    E = np.zeros((m, m), dtype=object)
    for i in range(m):
        E[i, i] = 1
    for i in range(m):
        E[i, kk] = -1 if i == kk else max(0, -epsilon * btilde[i][kk])
    return E


def lambda_mutate(lam: SkewForm, exchange, k: int, epsilon: int | None = None) -> SkewForm:
    """``E^T L E``.  With ``epsilon=None`` both signs are computed and must agree."""
    bt = _btilde_of(exchange)
    n = len(bt[0]) if bt else 0
    if not 1 <= k <= n:
        raise BadDirection(f"direction {k} outside [1, {n}]")
    L = _obj(lam.matrix)
    signs = (1, -1) if epsilon is None else (epsilon,)
    outs = []
    for eps in signs:
        E = e_matrix(bt, k, eps)
        outs.append(_to_rows(E.T.dot(L).dot(E)))
    if len(outs) == 2 and outs[0] != outs[1]:
        raise EpsilonMismatch(f"E^T L E depends on the sign in direction {k}")
    return SkewForm(outs[0])


@dataclass(frozen=True, eq=False)
class QuantumSeed:
    """Pair at a vertex plus the expansions of its cluster in the initial torus."""

    pair: CompatiblePair
    cluster: tuple[TorusElement, ...]
    word: tuple[int, ...] = ()
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def initial(cls, pair: CompatiblePair) -> "QuantumSeed":
        form = pair.lam
        m = pair.m
        cluster = tuple(
            TorusElement.monomial(form, tuple(int(i == j) for i in range(m))) for j in range(m)
        )
        return cls(pair, cluster, ())

    @property
    def initial_form(self) -> SkewForm:
        return self.cluster[0].form if self.cluster else self.pair.lam

    def power(self, i: int, p: int) -> TorusElement:
        """``X_{i;t}^p`` (1-based ``i``), memoised on the seed."""
        key = (i, p)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.cluster[i - 1] ** p
            self._powers[key] = hit
        return hit

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumSeed):
            return NotImplemented
        return self.pair == other.pair and self.cluster == other.cluster

    def __hash__(self) -> int:
        return hash((self.pair, self.cluster))

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "lambda": self.pair.lam.to_json(),
            "btilde": [list(r) for r in self.pair.exchange.btilde],
            "cluster": [x.to_json() for x in self.cluster],
        }


def _positive_monomial(seed: QuantumSeed, c: Sequence[int]) -> TorusElement:
    """``M_t(c)`` for ``c >= 0``: normalising q-power times the ordered product."""
    lam = seed.pair.lam.matrix
    tw = 0
    for k, ck in enumerate(c):
        if ck:
            row = lam[k]
            for l in range(k):
                if c[l]:
                    tw += ck * c[l] * row[l]
    out = None
    for i, ci in enumerate(c):
        if ci:
            f = seed.power(i + 1, ci)
            out = f if out is None else out * f
    if out is None:
        out = TorusElement.one(seed.initial_form)
    return out.shift_q(tw)


def seed_monomial(seed: QuantumSeed, c: Sequence[int]) -> TorusElement:
    """``M_t(c)`` in the initial torus.  At most one entry may be negative and it must be -1."""
    c = tuple(int(x) for x in c)
    if len(c) != seed.pair.m:
        raise ValueError(f"exponent has length {len(c)}, expected {seed.pair.m}")
    neg = [i for i, x in enumerate(c) if x < 0]
    if not neg:
        return _positive_monomial(seed, c)
    if len(neg) > 1 or c[neg[0]] != -1:
        raise UnsupportedExponent(f"exponent {list(c)} has more than a single -1 entry")
    k = neg[0]
    v = list(c)
    v[k] = 0
    ek = [0] * len(c)
    ek[k] = 1
    # M(v - e_k) = q^{L(e_k, v)/2} X_k^{-1} M(v)
    tw = seed.pair.lam(ek, v)
    return exact_left_divide(seed.cluster[k], _positive_monomial(seed, v).shift_q(tw))


def seed_mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Quantum seed mutation in direction ``k``."""
    pair = seed.pair
    n, m = pair.n, pair.m
    if not 1 <= k <= n:
        raise BadDirection(f"direction {k} outside [1, {n}]")
    kk = k - 1
    col = [row[kk] for row in pair.exchange.btilde]
    ek = [int(i == kk) for i in range(m)]
    numerator = None
    for sign in (1, -1):
        v = [max(0, sign * x) for x in col]
        term = _positive_monomial(seed, v).shift_q(pair.lam(ek, v))
        numerator = term if numerator is None else numerator + term
    new_var = exact_left_divide(seed.cluster[kk], numerator)
    cluster = seed.cluster[:kk] + (new_var,) + seed.cluster[kk + 1:]
    return QuantumSeed(pair.mutate(k), cluster, seed.word + (k,))


def seed_along(pair_or_seed, word: Iterable[int]) -> QuantumSeed:
    seed = pair_or_seed if isinstance(pair_or_seed, QuantumSeed) else QuantumSeed.initial(pair_or_seed)
    for k in word:
        seed = seed_mutate(seed, int(k))
    return seed


class SeedCache:
    """Memo of seeds reached from one initial pair, keyed by the reduced mutation word.

    Lookups and insertions are guarded by a lock, so several threads may
    share one cache.  Seeds themselves are immutable.
    """

    def __init__(self, pair: CompatiblePair):
        self.pair = pair
        self._seeds: dict[tuple[int, ...], QuantumSeed] = {(): QuantumSeed.initial(pair)}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._seeds)

    def get(self, word: Iterable[int]) -> QuantumSeed:
        key = reduce_word(word)
        with self._lock:
            hit = self._seeds.get(key)
            if hit is not None:
                return hit
            start = max(i for i in range(len(key) + 1) if key[:i] in self._seeds)
            seed = self._seeds[key[:start]]
        for i in range(start, len(key)):
            seed = seed_mutate(seed, key[i])
            with self._lock:
                seed = self._seeds.setdefault(key[: i + 1], seed)
        return seed


@dataclass(frozen=True)
class YHat:
    """``Y_{j;t} = numerator * denominator^{-1}`` with both factors in the initial torus.

    ``element`` holds the single torus element when the quotient is Laurent,
    otherwise it is None.
    """

    index: int
    numerator: TorusElement
    denominator: TorusElement
    element: TorusElement | None


def _split(c: Sequence[int]) -> tuple[list[int], list[int]]:
    return [max(0, x) for x in c], [max(0, -x) for x in c]


def yhat_current(seed: QuantumSeed, j: int) -> YHat:
    """``Y_{j;t} = M_t(column j of B_t)`` expressed in the initial torus."""
    pair = seed.pair
    if not 1 <= j <= pair.n:
        raise BadDirection(f"index {j} outside [1, {pair.n}]")
    c = pair.exchange.column(j)
    cp, cm = _split(c)
    # M(c) = q^{L(c+, c-)/2} M(c+) M(c-)^{-1}
    num = _positive_monomial(seed, cp).shift_q(pair.lam(cp, cm))
    den = _positive_monomial(seed, cm)
    try:
        elem = exact_right_divide(num, den)
    except NotDivisible:
        elem = None
    negs = [x for x in c if x < 0]
    if not negs or (len(negs) == 1 and negs[0] == -1):
        try:
            direct = seed_monomial(seed, c)
        except NotDivisible:
            direct = None
        if direct != elem:
            raise AssertionError(f"two evaluations of Y_{j} disagree at word {seed.word}")
    return YHat(j, num, den, elem)


def _y_factor(form: SkewForm, y_k: TorusElement, d_k: int, p: int, inverted: bool) -> TorusElement:
    # 1 + q^{-d_k p - d_k/2} Y_k, or Y_k + q^{-d_k p - d_k/2}
    tw = -2 * d_k * p - d_k
    one = TorusElement.one(form)
    if inverted:
        return y_k + one.shift_q(tw)
    return one + y_k.shift_q(tw)


def yhat_recurrence(pair0: CompatiblePair, word: Iterable[int]) -> list[TorusElement | None]:
    """All ``Y_{j;t}`` at the end of ``word``, replaying the Y-mutation rule in the initial torus.

    An entry becomes None once the rule requires inverting a non-monomial,
    i.e. once the element is no longer Laurent in the initial variables.
    """
    form = pair0.lam
    n = pair0.n
    ys: list[TorusElement | None] = [
        TorusElement.monomial(form, pair0.exchange.column(j)) for j in range(1, n + 1)
    ]
    pair = pair0
    for k in word:
        kk = k - 1
        b = pair.exchange.btilde
        dk = pair.d[kk]
        yk = ys[kk]
        new = list(ys)
        for jj in range(n):
            if jj == kk:
                new[jj] = _invert_monomial(yk)
                continue
            bkj = b[kk][jj]
            yj = ys[jj]
            if yj is None or (bkj != 0 and yk is None):
                new[jj] = None
            elif bkj <= 0:
                out = yj
                for p in range(-bkj):
                    out = out * _y_factor(form, yk, dk, p, inverted=False)
                new[jj] = out
            else:
                num = yj * yk ** bkj
                den = TorusElement.one(form)
                for p in range(bkj):
                    den = den * _y_factor(form, yk, dk, p, inverted=True)
                try:
                    new[jj] = exact_right_divide(num, den)
                except NotDivisible:
                    new[jj] = None
        ys = new
        pair = pair.mutate(k)
    return ys


def _invert_monomial(y: TorusElement | None) -> TorusElement | None:
    if y is None or not y.is_monomial():
        return None
    (e, c), = y.items()
    tw, v = c.monomial()
    if v not in (1, -1):
        return None
    # (c X^e)^{-1} = c^{-1} X^{-e}
    return TorusElement.monomial(y.form, tuple(-x for x in e), QLaurent.q_power(-tw, v))


def toric_frame_mutation(pair: CompatiblePair, k: int, c: Sequence[int], epsilon: int = 1) -> TorusElement:
    """``M'(c)`` for ``c_k >= 0``, written in the basis ``M(v) = X^v`` of the frame at ``pair``."""
    c = tuple(int(x) for x in c)
    kk = k - 1
    if c[kk] < 0:
        raise UnsupportedExponent("the raw frame mutation needs a nonnegative k-th entry")
    form = pair.lam
    bt = pair.exchange.btilde
    bk = [row[kk] for row in bt]
    E = e_matrix(bt, k, epsilon)
    ec = [int(x) for x in E.dot(_obj(c))]
    dk = pair.d[kk]
    terms: dict[tuple[int, ...], QLaurent] = {}
    for p in range(c[kk] + 1):
        v = tuple(x + epsilon * p * y for x, y in zip(ec, bk))
        terms[v] = terms.get(v, QLaurent()) + t_binomial(c[kk], p, dk)
    return TorusElement(form, terms)


def yhat_mutation_residual(pair: CompatiblePair, k: int, j: int, epsilon: int = 1) -> TorusElement:
    """Difference of both sides of the Y-mutation rule in the frame at ``pair``; zero when it holds.

    The case ``b_kj > 0`` is compared after clearing the denominator.
    """
    form = pair.lam
    kk, jj = k - 1, j - 1
    bt = pair.exchange.btilde
    dk = pair.d[kk]
    after = pair.exchange.mutate(k)
    ycol = [TorusElement.monomial(form, pair.exchange.column(i)) for i in range(1, pair.n + 1)]
    yk = ycol[kk]
    if jj == kk:
        lhs = toric_frame_mutation(pair, k, after.column(j), epsilon)
        return lhs - TorusElement.monomial(form, tuple(-x for x in pair.exchange.column(k)))
    b = bt[kk][jj]
    if b <= 0:
        lhs = toric_frame_mutation(pair, k, after.column(j), epsilon)
        rhs = ycol[jj]
        for p in range(-b):
            rhs = rhs * _y_factor(form, yk, dk, p, inverted=False)
        return lhs - rhs
    inv = toric_frame_mutation(pair, k, tuple(-x for x in after.column(j)), epsilon)
    lhs = inv * (ycol[jj] * yk ** b)
    rhs = TorusElement.one(form)
    for p in range(b):
        rhs = rhs * _y_factor(form, yk, dk, p, inverted=True)
    return lhs - rhs


def laurent_cluster_variables(btilde, word: Iterable[int]) -> list[TorusElement]:
    """Commutative cluster variables (zero skew form, q = 1) by the classical exchange relation."""
    ex = btilde if isinstance(btilde, ExchangeData) else ExchangeData.from_matrix(btilde)
    m, n = ex.m, ex.n
    form = SkewForm.zero(m)
    xs = [TorusElement.monomial(form, tuple(int(i == j) for i in range(m))) for j in range(m)]
    b = ex.btilde
    for k in word:
        kk = k - 1
        plus = TorusElement.one(form)
        minus = TorusElement.one(form)
        for i in range(m):
            c = b[i][kk]
            if c > 0:
                plus = plus * xs[i] ** c
            elif c < 0:
                minus = minus * xs[i] ** (-c)
        xs[kk] = exact_left_divide(xs[kk], plus + minus)
        b = mutate_matrix(b, k)
    return xs[:n]
