from fractions import Fraction

import hypothesis
from hypothesis import strategies as st

from alpreduce.kfield import Poly, RatFunc

hypothesis.settings.register_profile("ci", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("ci")


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def polys(draw, max_degree=6, nonzero=False):
    coeffs = draw(st.lists(rationals, min_size=0, max_size=max_degree + 1))
    p = Poly(coeffs)
    if nonzero and p.is_zero():
        p = Poly([draw(rationals.filter(bool))])
    return p


@st.composite
def ratfuncs(draw, max_degree=6):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree, nonzero=True))
    return RatFunc(num, den)


nonzero_ratfuncs = ratfuncs().filter(lambda f: not f.is_zero())
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=20)
