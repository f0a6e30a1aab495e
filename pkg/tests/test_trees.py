import random

import pytest

from qcluster import EntriesOutOfRange, NotSkewSymmetric, NotTypeA, QFPoly
from qcluster.fpoly import extract_qfpoly
from qcluster.trees import (
    Quiver,
    check_type_a,
    closed_subsets,
    gamma_data,
    gamma_rank,
    leaf_order,
    linear_a_matrix,
    quiver_from_matrix,
    random_type_a_matrix,
    tree_gvector,
    tree_qfpoly,
    typeA_chains,
    typeA_gvector,
)
from helpers import A2, A4, q, zpoly

QA4 = quiver_from_matrix(A4)


def test_quiver_from_matrix():
    assert quiver_from_matrix([[0, 0], [0, 0]]).arcs == ()
    assert set(QA4.arcs) == {(2, 1), (1, 3), (3, 2), (3, 4)}
    assert quiver_from_matrix([[0, -2], [2, 0]]).arcs == ((1, 2), (1, 2))
    assert QA4.matrix == A4
    with pytest.raises(NotSkewSymmetric):
        quiver_from_matrix([[0, 1], [1, 0]])


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(2, ((1, 1),))
    with pytest.raises(ValueError):
        Quiver(2, ((1, 2), (2, 1)))


def test_closed_subsets():
    assert closed_subsets([], QA4) == [(frozenset(), 0)]
    got = dict(closed_subsets([2, 3, 4], QA4))
    want = {frozenset(): 0, frozenset({2}): 1, frozenset({4}): 1, frozenset({2, 4}): 2, frozenset({2, 3, 4}): 1}
    assert got == want
    assert dict(closed_subsets([3], QA4)) == {frozenset(): 0, frozenset({3}): 1}


def test_tree_qfpoly_examples():
    want = zpoly(A4, (2,) * 4, {(0, 1, 1, 1): q(2), (0, 1, 0, 1): q(4), (0, 1, 0, 0): q(2), (0, 0, 0, 1): q(2), (0, 0, 0, 0): 1})
    assert tree_qfpoly([2, 3, 4], QA4, 2) == want
    for d in (1, 2, 3):
        for k in range(1, 5):
            ek = tuple(int(i == k - 1) for i in range(4))
            assert tree_qfpoly([k], QA4, d) == zpoly(A4, (d,) * 4, {ek: q(d), (0,) * 4: 1})
    assert tree_qfpoly([], QA4, 2) == QFPoly.one(A4, (2,) * 4)


def test_gamma_rank():
    assert gamma_rank(gamma_data([3], QA4, 1)) == 0
    g = gamma_data([2, 3, 4], QA4, 1)
    assert (g.i_out, g.i_in) == (frozenset({3}), frozenset({2}))
    assert gamma_rank(g) == 1
    # 5 -> 1 -> 2 -> 5 and 5 -> 3 -> 4 -> 5: two vertex-disjoint out-to-in paths
    q5 = Quiver(5, ((5, 1), (1, 2), (2, 5), (5, 3), (3, 4), (4, 5)))
    g5 = gamma_data([1, 2, 3, 4], q5, 5)
    assert gamma_rank(g5) == 2


def test_tree_gvector_examples():
    assert tree_gvector([2, 3, 4], QA4) == (0, -1, 1, -1)
    assert tree_gvector([1, 3, 4], QA4) == (0, 0, 0, -1)
    assert tree_gvector([], QA4) == (0, 0, 0, 0)


def test_typea_gvector_examples():
    assert typeA_gvector([3, 4], QA4) == (1, 0, 0, -1)
    assert typeA_gvector([1, 2], QA4) == (-1, 0, 0, 0)
    assert typeA_gvector([2], QA4) == (0, -1, 1, 0)


def test_chains():
    qa2 = quiver_from_matrix(A2)
    assert qa2.arcs == ((2, 1),)
    assert {c.as_set for c in typeA_chains(qa2)} == {frozenset({1}), frozenset({2}), frozenset({1, 2})}
    assert len(typeA_chains(QA4)) == 10
    assert [c.as_set for c in typeA_chains(Quiver(1, ()))] == [frozenset({1})]


def test_chain_word_is_a_leaf_order():
    for c in typeA_chains(QA4):
        assert leaf_order(c.vertices, QA4).as_set == c.as_set
        f, g = extract_qfpoly(A4, 1, None, c.word, c.word[-1])
        assert f == tree_qfpoly(c, QA4, 1)
        assert g == tree_gvector(c, QA4) == typeA_gvector(c, QA4)


def test_type_a_recognition():
    rng = random.Random(0)
    for n in range(1, 8):
        check_type_a(quiver_from_matrix(random_type_a_matrix(n, rng)))
    check_type_a(quiver_from_matrix(linear_a_matrix(5)))
    square = Quiver(4, ((1, 2), (2, 3), (3, 4), (4, 1)))
    with pytest.raises(NotTypeA):
        check_type_a(square)
    d4 = Quiver(4, ((1, 2), (1, 3), (1, 4)))
    with pytest.raises(NotTypeA):
        check_type_a(d4)
    double = quiver_from_matrix([[0, -2], [2, 0]])
    with pytest.raises(NotTypeA, match="condition \\(1\\)"):
        typeA_chains(double)
    with pytest.raises(EntriesOutOfRange):
        tree_gvector([1, 2], double)
