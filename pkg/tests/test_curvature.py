from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from yamabe_check.curvature import (BOUNDARY, HALFSPACE, RIEM, RN, RN_DERIV, ContractionPattern, CurvatureScalar,
                                    UnsupportedPattern, numeric_contract, pattern_polynomial,
                                    random_curvature_sample, reduce_contraction, sphere_monomial)
from yamabe_check.moments import FINITE, ISymbol, MomentValue
from yamabe_check.profiles import RadialProfile as R


def weight(n):
    return R.q_power(3 * n + 8) + R.q_power(3 * n + 12, F(-2, 7))


@given(st.integers(5, 8), st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_sample_axioms(n, seed):
    s = random_curvature_sample(n, seed)
    assert s.trace_residual() == 0
    assert s.bianchi_residual() == 0
    assert s.symmetry_residual() == 0
    assert s.scalar("rn_sq") >= 0 and s.scalar("wbar_sq") >= 0


def test_sample_deterministic():
    a, b = random_curvature_sample(7, 3), random_curvature_sample(7, 3)
    assert a.scalar("wbar_sq") == b.scalar("wbar_sq")
    assert a.scalar("rn_sq") != random_curvature_sample(7, 4).scalar("rn_sq")


def test_riemann_quartic_vanishes_pointwise():
    s = random_curvature_sample(7, 1)
    assert pattern_polynomial(ContractionPattern((RIEM,), weight(7)), s) == {}


@pytest.mark.parametrize("slots", [(RN,), (RIEM,), (RN, RIEM), (RIEM, RIEM)])
def test_zero_reductions(slots):
    assert reduce_contraction(ContractionPattern(slots, weight(7)), 7).is_zero()


def test_sym5_reduction():
    n = 7
    red = reduce_contraction(ContractionPattern((RN, RN), R.q_power(14)), n)
    assert red.get("rn_sq").equals(MomentValue(FINITE, ((ISymbol(14, 9), F(2, 48)),), 5))


@pytest.mark.parametrize("n", [6, 7, 8])
def test_reduction_matches_brute_force(n):
    for seed in range(3):
        s = random_curvature_sample(n, seed)
        for slots in [(RN,), (RN, RN), (RIEM,), (RN, RIEM), (RIEM, RIEM), (RN_DERIV,)]:
            pat = ContractionPattern(slots, weight(n))
            red = reduce_contraction(pat, n)
            num = numeric_contract(pat, s)
            if red.is_zero():
                assert abs(num.value) <= 1e-9 * num.scale
            else:
                assert red.evaluate(s) == pytest.approx(num.value, rel=1e-8)


def test_halfspace_pattern():
    n = 7
    w = R.monomial(1, 0, 2, 3 * n + 8)
    pat = ContractionPattern((RN, RN), w, HALFSPACE)
    s = random_curvature_sample(n, 2)
    assert reduce_contraction(pat, n).evaluate(s) == pytest.approx(numeric_contract(pat, s).value, rel=1e-8)


def test_pattern_validation():
    with pytest.raises(ValueError):
        ContractionPattern((RN,), R.monomial(1, 0, 1, 10), BOUNDARY)
    with pytest.raises(ValueError):
        ContractionPattern(("X",), R.q_power(10))
    with pytest.raises(UnsupportedPattern):
        reduce_contraction(ContractionPattern((RN, RN, RN), R.q_power(40)), 7)
    with pytest.raises(ValueError):
        numeric_contract(ContractionPattern((RN, RN), R.q_power(4)), random_curvature_sample(7, 0))


def test_sphere_monomial():
    import math

    assert sphere_monomial((0, 0, 0)) == pytest.approx(4 * math.pi)
    assert sphere_monomial((2, 0, 0)) == pytest.approx(4 * math.pi / 3)
    assert sphere_monomial((1, 1, 0)) == 0.0


def test_curvature_scalar_text():
    m = MomentValue(FINITE, ((ISymbol(14, 9), 1),), 5)
    c = CurvatureScalar((("rn_sq", m), ("rn_sq", m)))
    assert str(c) == "[2 * w5 * I(7,9)] * rn_sq"
    assert CurvatureScalar.zero().to_string() == "0"
    with pytest.raises(ValueError):
        CurvatureScalar((("bogus", m),))
