"""Hypothesis strategies for exact rational data."""
from fractions import Fraction

from gmpy2 import mpq
from hypothesis import strategies as st

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(
    lambda f: mpq(f.numerator, f.denominator)
)
small_ints = st.integers(-6, 6)


def vectors(d, elements=rationals):
    return st.tuples(*[elements] * d)


def matrices(n, elements=rationals):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def polys(draw, nvars=2, max_terms=5, max_deg=3):
    from polyadjoint.algebra import MultiPoly

    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * nvars), rationals, max_size=max_terms
        )
    )
    return MultiPoly.from_dict(nvars, terms)


@st.composite
def forms(draw, nvars=2):
    from polyadjoint.algebra import LinearForm

    u = draw(vectors(nvars, small_ints).filter(any))
    return LinearForm(draw(rationals), tuple(mpq(a) for a in u))
