from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotmodel.errors import ParameterOutOfRange, ZeroRank
from quotmodel.stability_poly import (DeltaParams, FramingCase, RationalPoly, framed_hilbert_poly,
                                      lemma26_case_check, slope)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, max_size=5).map(lambda cs: RationalPoly(tuple(cs)))


def test_framed_hilbert_poly_examples():
    P = RationalPoly((1, 0, 1))
    assert framed_hilbert_poly(P, 0, RationalPoly((0, 1))) == P
    assert framed_hilbert_poly(P, 1, P) == RationalPoly(())
    assert framed_hilbert_poly(P, 1, RationalPoly((0, 1))) == RationalPoly((1, -1, 1))


def test_poly_trims_and_degree():
    assert RationalPoly((1, 2, 0, 0)).degree == 1
    assert RationalPoly(()).degree == -1
    assert RationalPoly((1, -1, 1))(3) == 7


def test_delta_params():
    d = DeltaParams(3, (2, F(1, 2), 5))
    # 2 k^2 / 2! + (1/2) k + 5
    assert d.to_poly() == RationalPoly((5, F(1, 2), 1))
    assert d.delta1 == 2
    with pytest.raises(ParameterOutOfRange):
        DeltaParams(2, (0, 1))


def test_slope_examples():
    assert slope(0, 1, 1, 2) == F(-1, 2)
    assert slope(0, 0, 7, 3) == 0
    assert slope(3, 1, 1, 2) == 1
    with pytest.raises(ZeroRank):
        slope(1, 1, 1, 0)


def test_lemma_examples():
    assert lemma26_case_check(2, 1, 1, 0, FramingCase.FRAMING_SURVIVES)
    assert lemma26_case_check(3, 1, 2, -1, "FramingDies")
    with pytest.raises(ParameterOutOfRange):
        lemma26_case_check(2, 1, 2, 0, FramingCase.FRAMING_SURVIVES)
    with pytest.raises(ParameterOutOfRange):
        lemma26_case_check(2, 2, 1, 0, FramingCase.FRAMING_SURVIVES)


def test_case_two_needs_negative_slope():
    # a submodule inside E(-D) with H-slope 0 would violate the inequality
    assert not lemma26_case_check(3, 1, 2, 0, FramingCase.FRAMING_DIES)


@given(polys, polys, polys)
def test_framed_poly_linear(P, Q, delta):
    assert framed_hilbert_poly(P + Q, 1, delta) == framed_hilbert_poly(P, 1, delta) + Q
    assert framed_hilbert_poly(P, 0, delta) == P


@given(rationals, st.sampled_from([0, 1]), rationals, st.fractions(min_value=F(1, 10), max_value=10),
       st.fractions(min_value=F(1, 10), max_value=10))
def test_slope_scale_invariant(c1, eps, d1, rank, lam):
    assert slope(lam * c1, eps, lam * d1, lam * rank) == slope(c1, eps, d1, rank)


@given(st.integers(2, 8), st.data())
def test_case_one_always_holds(r, data):
    rp = data.draw(st.integers(1, r - 1))
    d1 = data.draw(st.fractions(min_value=0, max_value=r, max_denominator=8).filter(lambda x: 0 < x < r))
    mu = data.draw(st.fractions(max_value=0, min_value=-10, max_denominator=8))
    assert lemma26_case_check(r, rp, d1, mu, FramingCase.FRAMING_SURVIVES)
