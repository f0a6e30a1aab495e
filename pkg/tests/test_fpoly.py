import random

import pytest
from hypothesis import given, settings, strategies as st

from qcluster import (
    ExchangeData,
    NegativeExponent,
    QFPoly,
    QLaurent,
    TorusElement,
    extract_qfpoly,
    g_vectors,
    principal_pair,
    substitute_yhat,
)
from qcluster.fpoly import (
    RecurrenceState,
    advance,
    coefficient_symmetry_check,
    extract_all,
    l_apply,
    qfpolys_by_recurrence,
    rho_definition,
    right_fpoly,
    verify_general_coefficients,
)
from qcluster.sampling import random_skew_symmetrizable, random_word
from qcluster.seed import seed_along, seed_mutate, QuantumSeed
from helpers import A2, A4, mono, q, zpoly

D2 = (2, 2)


def a2(terms):
    return zpoly(A2, D2, terms)


F1_T2 = a2({(1, 1): q(2), (1, 0): q(2), (0, 0): 1})


def test_qfpoly_construction_and_serialization():
    f = a2({(1, 1): q(2), (0, 0): 1})
    assert QFPoly.from_json(f.to_json()) == f
    assert str(F1_T2) == "qZ^{(1,1)} + qZ^{(1,0)} + 1"
    assert f.specialize().terms == {(1, 1): 1, (0, 0): 1}
    assert f.constant_term() == QLaurent.const(1)
    with pytest.raises(NegativeExponent):
        a2({(-1, 0): 1})


def test_substitute_examples():
    pair = principal_pair(A2, 2)
    one = QFPoly.one(A2, D2)
    assert substitute_yhat(one, pair.exchange, pair.lam) == TorusElement.one(pair.lam)
    for k in (1, 2):
        ek = tuple(int(i == k - 1) for i in range(2))
        assert substitute_yhat(a2({ek: 1}), pair.exchange, pair.lam) == mono(pair.lam, pair.exchange.column(k))
    f = a2({(0, 1): q(2), (0, 0): 1})
    x2 = seed_mutate(QuantumSeed.initial(pair), 2).cluster[1]
    assert substitute_yhat(f, pair.exchange, pair.lam).times_monomial((0, -1, 0, 0)) == x2


def test_extraction_examples():
    for w in ([], [1, 1], [2, 1, 1, 2]):
        for j in (1, 2):
            f, g = extract_qfpoly(A2, D2, None, w, j)
            assert f == QFPoly.one(A2, D2)
            assert g == tuple(int(i == j - 1) for i in range(2))
    f, g = extract_qfpoly(A2, D2, None, [2, 1], 1)
    assert f == F1_T2 and g == (-1, 0)


def test_extraction_self_check():
    f, _ = extract_qfpoly(A4, 2, None, [2, 3, 4], 4, verify=True, rng=random.Random(1))
    assert f == zpoly(A4, (2,) * 4, {(0, 1, 1, 1): q(2), (0, 1, 0, 1): q(4), (0, 1, 0, 0): q(2), (0, 0, 0, 1): q(2), (0, 0, 0, 0): 1})


def test_one_step_law_skew_symmetrizable():
    rng = random.Random(13)
    for _ in range(10):
        b0, d = random_skew_symmetrizable(rng.randint(1, 4), rng)
        n = len(b0)
        for k in range(1, n + 1):
            ek = tuple(int(i == k - 1) for i in range(n))
            want = zpoly(b0, d, {ek: q(d[k - 1]), (0,) * n: 1})
            assert extract_qfpoly(b0, d, None, [k], k)[0] == want
            assert qfpolys_by_recurrence(b0, d, [k]).qfpolys()[k - 1] == want


def test_l_operator_uses_the_full_exponent():
    # L[e1] Z^{e1} with d1 = 2 gives q^{-2}, the value forced by the defining identity below
    f = a2({(1, 0): 1})
    assert l_apply((0, 0), F1_T2) == F1_T2
    assert l_apply((1, 0), f) == a2({(1, 0): q(-4)})


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, 10**6),
    st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4),
)
def test_l_operator_commutes_monomials_past_substitution(seed, terms):
    rng = random.Random(seed)
    b0, d = random_skew_symmetrizable(2, rng)
    pair = principal_pair(b0, d)
    f = zpoly(b0, d, {a: q(rng.randint(-3, 3), c) for a, c in terms.items()})
    a = (rng.randint(-2, 2), rng.randint(-2, 2))
    ma = mono(pair.lam, a + (0, 0))
    lhs = ma * substitute_yhat(f, pair.exchange, pair.lam)
    rhs = substitute_yhat(l_apply(a, f), pair.exchange, pair.lam) * ma
    assert lhs == rhs


def test_worked_recurrence_steps():
    st0 = RecurrenceState.initial(A2, D2)
    st1 = advance(st0, 2)
    assert st1.qfpolys()[1] == a2({(0, 1): q(2), (0, 0): 1})
    st2 = advance(st1, 1)
    assert st2.qfpolys()[0] == F1_T2
    st3 = advance(st2, 2)
    assert st3.qfpolys()[1] == a2({(1, 0): q(2), (0, 0): 1})
    st4 = advance(st3, 1)
    assert st4.qfpolys()[0] == QFPoly.one(A2, D2)
    st5 = advance(st4, 2)
    assert st5.qfpolys()[1] == QFPoly.one(A2, D2)
    for s in (st0, st1, st2, st3, st4, st5):
        assert s.rho.is_zero()


def test_rho_definition_at_t0_and_frozen_rows():
    rng = random.Random(9)
    for _ in range(15):
        b0, d = random_skew_symmetrizable(rng.randint(1, 3), rng)
        n = len(b0)
        s = qfpolys_by_recurrence(b0, d, random_word(n, rng, 4))
        assert all(not any(row) for row in s.rho.values[n:])
    s0 = RecurrenceState.initial(A4, 1)
    assert s0.rho.is_zero()
    pair = principal_pair(A4, 1)
    assert rho_definition(pair.lam, pair.lam, [tuple(int(i == j) for i in range(8)) for j in range(8)]).is_zero()


def test_right_fpoly():
    assert right_fpoly(QFPoly.one(A2, D2)) == QFPoly.one(A2, D2)
    assert right_fpoly(a2({(0, 1): q(2), (0, 0): 1})) == a2({(0, 1): q(-2), (0, 0): 1})
    pair = principal_pair(A2, 2)
    x = seed_along(pair, [2, 1]).cluster[0]
    left = mono(pair.lam, (-1, 0, 0, 0)) * substitute_yhat(right_fpoly(F1_T2), pair.exchange, pair.lam)
    assert left == x


def test_coefficient_symmetry_examples():
    assert coefficient_symmetry_check(QFPoly.one(A2, D2), (1, 0))
    rng = random.Random(17)
    for _ in range(10):
        b0, d = random_skew_symmetrizable(rng.randint(1, 4), rng)
        n = len(b0)
        for k in range(1, n + 1):
            f, g = extract_qfpoly(b0, d, None, [k], k)
            assert g == g_vectors(b0, [k])[k - 1]
            assert coefficient_symmetry_check(f, g)
    assert not coefficient_symmetry_check(a2({(1, 0): q(1), (0, 0): 1}), (-1, 0))


def test_lambda_independence_of_extraction():
    rng = random.Random(31)
    lam = [[0, 3], [-3, 0]]
    for w in ([2, 1], [1, 2, 1], [2, 1, 2, 1]):
        assert [f for f, _ in extract_all(A2, D2, lam, w)] == [f for f, _ in extract_all(A2, D2, None, w)]


def test_verify_general_coefficients_principal_and_empty_word():
    pair = principal_pair(A2, 2)
    for w in ([], [1], [2, 1, 2]):
        for j in (1, 2):
            assert verify_general_coefficients(ExchangeData(pair.exchange.btilde, (2, 2)), pair.lam, w, j).twice_value == 0
