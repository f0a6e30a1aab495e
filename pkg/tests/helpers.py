"""Small builders shared by the test modules."""
from hypothesis import strategies as st

from qcluster import QFPoly, QLaurent, SkewForm, TorusElement

A2 = ((0, 1), (-1, 0))
A4 = ((0, 1, -1, 0), (-1, 0, 1, 0), (1, -1, 0, -1), (0, 0, 1, 0))


def q(twice: int, c: int = 1) -> QLaurent:
    return QLaurent.q_power(twice, c)


def zpoly(b0, d, terms: dict) -> QFPoly:
    return QFPoly(b0, d, {tuple(a): c for a, c in terms.items()})


def mono(form: SkewForm, e, c=1) -> TorusElement:
    return TorusElement.monomial(form, tuple(e), c)


qlaurents = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4).map(QLaurent)


def torus_elements(form: SkewForm, max_terms: int = 4, span: int = 2):
    vec = st.tuples(*[st.integers(-span, span)] * len(form.matrix))
    return st.dictionaries(vec, qlaurents, max_size=max_terms).map(lambda t: TorusElement(form, t))
