"""Quantum F-polynomials.

A quantum F-polynomial lives in the ``n``-variable quantum torus spanned by
normalized monomials ``Z^a`` with ``Z_i Z_j = q^(d_i b_ij) Z_j Z_i``.  That
torus is itself a based quantum torus with skew form ``(d_i b_ij)``, so
:class:`QFPoly` wraps a :class:`TorusElement` over that form.

Two independent routes produce them:

* :func:`extract_qfpoly` mutates the principal quantum seed and reads the
  polynomial off ``X_{j;t} * M_0(-g)``.
* :func:`qfpolys_by_recurrence` runs the recurrence driven by the L-operator,
  the rho table and the lambda corrections, entirely inside the Z-torus.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .classical import (
    CommPoly,
    ExchangeData,
    Matrix,
    as_matrix,
    classical_f_polys,
    extended_g_vectors,
    find_symmetrizer,
    g_vector_step,
    g_vectors,
    principal_matrix,
    reduce_word,
)
from .errors import NegativeExponent, NotDivisible, NotInColumnSpan, NotProportional
from .qscalar import QLaurent
from .sampling import random_skew
from .seed import (
    CompatiblePair,
    SeedCache,
    check_compatible,
    lambda_mutate,
    principal_pair,
    seed_along,
)
from .torus import SkewForm, TorusElement, exact_left_divide

__all__ = [
    "QFPoly",
    "RhoTable",
    "LambdaShift",
    "RecurrenceState",
    "z_form",
    "substitute_yhat",
    "extract_qfpoly",
    "extract_all",
    "l_apply",
    "qfpoly_mutate",
    "advance",
    "qfpolys_by_recurrence",
    "rho_definition",
    "rho_update",
    "right_fpoly",
    "coefficient_symmetry_check",
    "verify_general_coefficients",
]


def _normalize_b0_d(b0, d) -> tuple[Matrix, tuple[int, ...]]:
    b0 = as_matrix(b0)
    n = len(b0)
    if d is None:
        d = find_symmetrizer(b0)
    elif isinstance(d, int):
        d = (d,) * n
    d = tuple(int(x) for x in d)
    ExchangeData(b0, d)
    return b0, d


def z_form(b0, d) -> SkewForm:
    """Skew form ``(d_i b_ij)`` of the Z-torus."""
    b0, d = _normalize_b0_d(b0, d)
    return SkewForm([[d[i] * b0[i][j] for j in range(len(b0))] for i in range(len(b0))])


class QFPoly:
    """Polynomial in normalized monomials ``Z^a`` (``a >= 0``) over Z[q^(+-1/2)]."""

    __slots__ = ("b0", "d", "element")

    def __init__(self, b0, d, terms: Mapping[Sequence[int], QLaurent | int] | TorusElement | None = None):
        b0, d = _normalize_b0_d(b0, d)
        self.b0 = b0
        self.d = d
        form = z_form(b0, d)
        if isinstance(terms, TorusElement):
            if terms.form != form:
                raise ValueError("element does not live in the Z-torus of (b0, d)")
            elem = terms
        else:
            elem = TorusElement(form, terms or {})
        for a in elem._t:
            if min(a, default=0) < 0:
                raise NegativeExponent(f"exponent {list(a)} has a negative entry")
        self.element = elem

    @classmethod
    def _wrap(cls, b0: Matrix, d: tuple[int, ...], elem: TorusElement) -> "QFPoly":
        obj = cls.__new__(cls)
        obj.b0 = b0
        obj.d = d
        obj.element = elem
        return obj

    @classmethod
    def one(cls, b0, d) -> "QFPoly":
        b0, d = _normalize_b0_d(b0, d)
        return cls._wrap(b0, d, TorusElement.one(z_form(b0, d)))

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def terms(self) -> dict[tuple[int, ...], QLaurent]:
        return self.element.terms

    def items(self):
        return self.element.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QFPoly):
            return NotImplemented
        return self.b0 == other.b0 and self.d == other.d and self.element == other.element

    def __hash__(self) -> int:
        return hash((self.b0, self.d, self.element))

    def __len__(self) -> int:
        return len(self.element)

    def specialize(self) -> CommPoly:
        """Set ``q = 1`` and ``Z_i = u_i``."""
        return CommPoly(self.n, {a: c.eval_one() for a, c in self.element.items()})

    def constant_term(self) -> QLaurent:
        return self.element.coefficient((0,) * self.n)

    def to_json(self) -> dict:
        return {
            "b0": [list(r) for r in self.b0],
            "d": list(self.d),
            "terms": [{"a": list(a), "coeff": self.element._t[a].to_json()} for a in sorted(self.element._t)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QFPoly":
        return cls(
            data["b0"],
            data["d"],
            {tuple(t["a"]): QLaurent.from_json(t["coeff"]) for t in data["terms"]},
        )

    def __str__(self) -> str:
        if not self.element:
            return "0"
        parts = []
        for a in sorted(self.element._t, key=lambda a: (sum(a), a), reverse=True):
            c = self.element._t[a]
            cs = str(c)
            if not any(a):
                parts.append(cs)
                continue
            mono = "Z^{(" + ",".join(map(str, a)) + ")}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif len(c) > 1:
                parts.append(f"({cs}){mono}")
            else:
                parts.append(cs + mono)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QFPoly({self})"


@dataclass(frozen=True)
class RhoTable:
    """Integer table ``rho_ij = L_t(e_i, e_j) - L_0(g_i, g_j)`` over all ``2n`` indices."""

    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.values[i][j]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.values)


@dataclass(frozen=True)
class LambdaShift:
    """``X_{j;t} = q^(twice_value/2) F(Y) M_0(g~)`` for one index and word."""

    j: int
    word: tuple[int, ...]
    twice_value: int


def _principal_inputs(b0, d, lam) -> tuple[Matrix, tuple[int, ...], CompatiblePair]:
    b0, d = _normalize_b0_d(b0, d)
    return b0, d, principal_pair(b0, d, lam)


def substitute_yhat(f: QFPoly, btilde0, lambda0: SkewForm) -> TorusElement:
    """``F(Y)``: send ``Z^a`` to the basis monomial ``X^(B a)`` with the same coefficient."""
    bt = btilde0.btilde if isinstance(btilde0, ExchangeData) else as_matrix(btilde0)
    check_compatible(lambda0, bt)
    n = f.n
    if len(bt[0]) != n:
        raise ValueError("exchange matrix and polynomial have different ranks")
    terms = {}
    for a, c in f.element.items():
        e = tuple(sum(row[i] * a[i] for i in range(n)) for row in bt)
        terms[e] = c
    return TorusElement._raw(lambda0, terms)


def _to_qfpoly(fy: TorusElement, b0: Matrix, d: tuple[int, ...]) -> QFPoly:
    n = len(b0)
    form = z_form(b0, d)
    terms = {}
    for e, c in fy.items():
        a = e[n:]
        top = tuple(sum(b0[i][l] * a[l] for l in range(n)) for i in range(n))
        if top != e[:n]:
            raise NotInColumnSpan(f"exponent {list(e)} is not B~ a for a = {list(a)}")
        if min(a, default=0) < 0:
            raise NegativeExponent(f"F-polynomial exponent {list(a)} has a negative entry")
        terms[a] = c
    return QFPoly._wrap(b0, d, TorusElement._raw(form, terms))


def extract_all(
    b0,
    d=None,
    lam=None,
    word: Iterable[int] = (),
    cache: SeedCache | None = None,
) -> list[tuple[QFPoly, tuple[int, ...]]]:
    """``(F_{j;t}, g_{j;t})`` for every ``j``, read off the principal quantum seed at ``word``."""
    b0, d, pair = _principal_inputs(b0, d, lam)
    word = tuple(word)
    n = len(b0)
    if cache is not None:
        if cache.pair != pair:
            raise ValueError("seed cache belongs to a different quantization")
        seed = cache.get(word)
    else:
        seed = seed_along(pair, reduce_word(word))
    gs = g_vectors(b0, word)
    out = []
    for j in range(n):
        g = gs[j]
        fy = seed.cluster[j].times_monomial(tuple(-x for x in g) + (0,) * n)
        out.append((_to_qfpoly(fy, b0, d), g))
    return out


def extract_qfpoly(
    b0,
    d=None,
    lam=None,
    word: Iterable[int] = (),
    j: int = 1,
    cache: SeedCache | None = None,
    verify: bool = False,
    rng: random.Random | None = None,
) -> tuple[QFPoly, tuple[int, ...]]:
    """``(F_{j;t}, g_{j;t})`` by expanding ``X_{j;t}`` in the principal quantization.

    With ``verify=True`` the result is also compared with the classical
    recurrence at ``q = 1`` and with an extraction under a second, random
    choice of ``lam``.
    """
    b0, d = _normalize_b0_d(b0, d)
    n = len(b0)
    if not 1 <= j <= n:
        raise ValueError(f"index {j} outside [1, {n}]")
    word = tuple(word)
    f, g = extract_all(b0, d, lam, word, cache)[j - 1]
    if verify:
        classical = classical_f_polys(b0, word)[j - 1]
        if f.specialize() != classical:
            raise AssertionError(f"q = 1 specialization {f.specialize()} differs from {classical}")
        other = random_skew(n, rng or random.Random(0))
        f2, _ = extract_all(b0, d, other, word)[j - 1]
        if f2 != f:
            raise AssertionError("quantum F-polynomial depends on the choice of lam")
    return f, g


def l_apply(a: Sequence[int], f: QFPoly | TorusElement, d: Sequence[int] | None = None) -> QFPoly | TorusElement:
    """Twist ``Z^b`` by ``q^(-(a.b.d))``, where ``a.b.d = sum a_i b_i d_i``.

    This is conjugation by ``M_0(a)``: ``M_0(a) F(Y) = L[a](F)(Y) M_0(a)``.
    """
    if isinstance(f, QFPoly):
        return QFPoly._wrap(f.b0, f.d, _l_apply_elem(a, f.element, f.d))
    if d is None:
        raise ValueError("d is required for bare torus elements")
    return _l_apply_elem(a, f, d)


def _l_apply_elem(a: Sequence[int], f: TorusElement, d: Sequence[int]) -> TorusElement:
    w = [int(x) * int(y) for x, y in zip(a, d)]
    if not any(w):
        return f
    t = {}
    for b, c in f.items():
        s = sum(x * y for x, y in zip(w, b))
        t[b] = c.shift(-2 * s)
    return TorusElement._raw(f.form, t)


def rho_definition(lam_t: SkewForm, lam_0: SkewForm, gvecs: Sequence[Sequence[int]]) -> RhoTable:
    """Table from its definition, with frozen extended g-vectors equal to basis vectors."""
    m = lam_t.m
    n = len(gvecs)
    ext = [tuple(g) + (0,) * (m - n) for g in gvecs] + [tuple(int(i == j) for i in range(m)) for j in range(n, m)]
    rows = []
    for i in range(m):
        row_i = lam_0.row(ext[i])
        rows.append(tuple(lam_t.matrix[i][j] - sum(x * y for x, y in zip(row_i, ext[j])) for j in range(m)))
    return RhoTable(tuple(rows))


def rho_update(
    rho: RhoTable,
    k: int,
    prin: Matrix,
    gvecs: Sequence[Sequence[int]],
    d: Sequence[int],
) -> RhoTable:
    """Advance the table across an edge in direction ``k``.

    ``prin`` and ``gvecs`` are the principal matrix and g-vectors before the
    step.  Column ``k`` changes by
    ``rho'_ik = -rho_ik + sum_l [-b_lk]_+ rho_il - sum_l [-b_{n+l,k}]_+ g_il d_l``.
    """
    m = len(rho.values)
    n = len(d)
    kk = k - 1
    vals = [list(r) for r in rho.values]
    ext = [tuple(g) for g in gvecs] + [(0,) * n] * (m - n)
    for i in range(m):
        if i == kk:
            continue
        v = -rho.values[i][kk]
        for l in range(m):
            c = -prin[l][kk]
            if c > 0:
                v += c * rho.values[i][l]
        for l in range(n):
            c = -prin[n + l][kk]
            if c > 0:
                v -= c * ext[i][l] * d[l]
        vals[i][kk] = v
        vals[kk][i] = -v
    vals[kk][kk] = 0
    return RhoTable(tuple(tuple(r) for r in vals))


@dataclass
class RecurrenceState:
    """Everything the recurrence needs at one vertex of the principal pattern."""

    b0: Matrix
    d: tuple[int, ...]
    pair: CompatiblePair
    lam0: SkewForm
    fpolys: list[TorusElement]
    gvecs: list[tuple[int, ...]]
    rho: RhoTable
    word: tuple[int, ...] = ()
    history: list = field(default_factory=list, repr=False)

    @classmethod
    def initial(cls, b0, d=None, lam=None) -> "RecurrenceState":
        b0, d, pair = _principal_inputs(b0, d, lam)
        n = len(b0)
        form = z_form(b0, d)
        gs = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        return cls(
            b0,
            d,
            pair,
            pair.lam,
            [TorusElement.one(form) for _ in range(n)],
            gs,
            rho_definition(pair.lam, pair.lam, gs),
        )

    @property
    def n(self) -> int:
        return len(self.b0)

    def qfpolys(self) -> list[QFPoly]:
        return [QFPoly._wrap(self.b0, self.d, f) for f in self.fpolys]


def _branch(state: RecurrenceState, k: int, eps: int, g_new: Sequence[int]) -> TorusElement:
    """One of the two summands, without the inverse of the hatted ``F_k``."""
    n = state.n
    kk = k - 1
    prin = state.pair.exchange.btilde
    d = state.d
    form = state.fpolys[0].form
    v = [max(0, eps * prin[i][kk]) for i in range(n)]
    w = [max(0, eps * prin[n + l][kk]) for l in range(n)]
    gs = state.gvecs
    shift = [-x for x in gs[kk]]
    prod = TorusElement.one(form)
    for i in range(n):
        if not v[i]:
            continue
        # ordered product of L[(s-1) g_i](F_i), s = 1..v_i
        g_part = TorusElement.one(form)
        for s in range(v[i]):
            g_part = g_part * _l_apply_elem([s * x for x in gs[i]], state.fpolys[i], d)
        prod = prod * _l_apply_elem(shift, g_part, d)
        shift = [x + v[i] * y for x, y in zip(shift, gs[i])]
    if any(w):
        prod = prod.times_monomial(tuple(w))
    rho = state.rho.values
    twice_rho = -sum(max(0, eps * prin[i][kk]) * rho[i][kk] for i in range(2 * n))
    twice_rho += sum(v[i] * v[j] * rho[j][i] for i in range(n) for j in range(i + 1, n))
    twice_rho += sum(v[i] * w[j] * rho[n + j][i] for i in range(n) for j in range(n))
    twice_lam = sum(w[i] * g_new[i] * d[i] for i in range(n))
    return prod.shift_q(twice_rho - twice_lam)


def qfpoly_mutate(state: RecurrenceState, k: int) -> QFPoly:
    """``F_{k;t'}`` from the data at ``t`` for the edge in direction ``k``."""
    kk = k - 1
    g_new = g_vector_step(state.pair.exchange.btilde, state.gvecs, k, state.b0)
    numerator = _branch(state, k, 1, g_new) + _branch(state, k, -1, g_new)
    hat_fk = _l_apply_elem([-x for x in state.gvecs[kk]], state.fpolys[kk], state.d)
    return QFPoly._wrap(state.b0, state.d, exact_left_divide(hat_fk, numerator))


def advance(state: RecurrenceState, k: int, check_rho: bool = True) -> RecurrenceState:
    """Move the whole state across the edge in direction ``k``."""
    kk = k - 1
    new_f = qfpoly_mutate(state, k).element
    prin = state.pair.exchange.btilde
    g_new = g_vector_step(prin, state.gvecs, k, state.b0)
    gvecs = list(state.gvecs)
    gvecs[kk] = g_new
    fpolys = list(state.fpolys)
    fpolys[kk] = new_f
    pair = state.pair.mutate(k)
    rho = rho_definition(pair.lam, state.lam0, gvecs)
    if check_rho:
        rec = rho_update(state.rho, k, prin, state.gvecs, state.d)
        if rec != rho:
            raise AssertionError(f"rho recurrence disagrees with its definition after word {state.word + (k,)}")
    return RecurrenceState(
        state.b0, state.d, pair, state.lam0, fpolys, gvecs, rho, state.word + (k,), state.history
    )


def qfpolys_by_recurrence(b0, d=None, word: Iterable[int] = (), lam=None, check_rho: bool = True) -> RecurrenceState:
    """Run the recurrence along ``word``; the returned state holds all ``F_{i;t}``."""
    state = RecurrenceState.initial(b0, d, lam)
    for k in word:
        state = advance(state, int(k), check_rho)
    return state


def right_fpoly(f: QFPoly) -> QFPoly:
    """The polynomial with ``X = M_0(g) F(Y)``: bar applied to each coefficient."""
    return QFPoly._wrap(f.b0, f.d, f.element.bar())


def coefficient_symmetry_check(f: QFPoly, g: Sequence[int], d: Sequence[int] | None = None) -> bool:
    """Check ``P_a(q^(1/2)) = q^(-g.a.d) P_a(q^(-1/2))`` for every coefficient ``P_a``.

    A single-term coefficient ``c q^e`` must moreover have ``e = -(g.a.d)/2``.
    """
    d = f.d if d is None else tuple(d)
    for a, c in f.element.items():
        gad = sum(x * y * z for x, y, z in zip(g, a, d))
        if c != c.bar().shift(-2 * gad):
            return False
        mono = c.monomial()
        if mono is not None and mono[0] != -gad:
            return False
    return True


def verify_general_coefficients(
    btilde0,
    lambda0,
    word: Iterable[int],
    j: int,
    cache: SeedCache | None = None,
    principal_cache: SeedCache | None = None,
) -> LambdaShift:
    """Find ``lambda`` with ``X_{j;t} = q^lambda F_{j;t}(Y) M_0(g~_{j;t})`` for an arbitrary compatible pair.

    ``btilde0`` may be an :class:`ExchangeData` or a plain matrix; the
    symmetrizer is recovered from the compatibility condition.  Optional
    caches (one for the given pair, one for the principal pair with the
    same ``d`` and zero ``lam``) avoid re-mutating shared prefixes.
    """
    word = tuple(word)
    bt = btilde0.btilde if isinstance(btilde0, ExchangeData) else btilde0
    pair0 = CompatiblePair.from_matrices(lambda0, bt)
    ex = pair0.exchange
    n = ex.n
    b0 = ex.principal_part
    if cache is not None and cache.pair != pair0:
        raise ValueError("seed cache belongs to a different pair")
    seed = cache.get(word) if cache is not None else seed_along(pair0, reduce_word(word))
    x = seed.cluster[j - 1]
    f, _ = extract_qfpoly(b0, ex.d, None, word, j, cache=principal_cache)
    gt = extended_g_vectors(ex, word)[j - 1]
    p = substitute_yhat(f, ex, pair0.lam).times_monomial(gt)
    if set(x._t) != set(p._t):
        raise NotProportional(f"supports differ for X_{j} at word {list(word)}")
    e, cx = x.leading_term()
    try:
        ratio = cx.exact_div(p._t[e])
    except NotDivisible:
        ratio = None
    mono = ratio.monomial() if ratio is not None else None
    if mono is None or mono[1] != 1 or x != p.shift_q(mono[0]):
        raise NotProportional(f"X_{j} at word {list(word)} is not a q-power multiple of F(Y) M_0(g~)")
    twice = mono[0]
    constants_nonzero = all(
        fp.constant_term() != 0 for i in range(len(word) + 1) for fp in classical_f_polys(b0, word[:i])
    )
    if constants_nonzero and twice != 0:
        raise AssertionError(f"nonzero q-shift {twice}/2 although every constant term is nonzero")
    return LambdaShift(j, word, twice)
