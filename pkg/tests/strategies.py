"""Hypothesis strategies for Laurent polynomials and expansions."""

from fractions import Fraction

from hypothesis import strategies as st

from jacobi_tower.laurent import LaurentPoly
from jacobi_tower.qexpansion import QExpansion

rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6))
big_ints = st.integers(-(1 << 70), 1 << 70)


def exponent_vectors(nvars, span=4, half=True):
    step = st.integers(-span, span)
    if half:
        return st.tuples(*[step] * nvars)
    return st.tuples(*[step.map(lambda x: 2 * x)] * nvars)


@st.composite
def laurent(draw, nvars=2, max_terms=6, coeffs=rationals, half=True):
    terms = draw(st.dictionaries(exponent_vectors(nvars, half=half), coeffs, max_size=max_terms))
    return LaurentPoly.from_dict(terms, nvars)


@st.composite
def nonzero_laurent(draw, nvars=2, max_terms=4):
    p = draw(laurent(nvars, max_terms))
    if p.is_zero():
        p = LaurentPoly.constant(draw(st.integers(1, 5)), nvars)
    return p


@st.composite
def series(draw, nvars=1, levels=4, trunc=None):
    t = trunc if trunc is not None else draw(st.integers(1, levels))
    coeffs = {24 * k: draw(laurent(nvars, 3)) for k in range(t)}
    return QExpansion(nvars, coeffs, 24 * t)
