from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from yamabe_check.profiles import (HarmonicFactor, RadialProfile as R, differentiate, dump_profile, eval_mp,
                                   laplacian_harmonic, parse_profile, restrict_boundary, term_algebra)
from yamabe_check.quadrature import numeric_laplacian

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
terms = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 14), st.integers(0, 1))
profiles = st.lists(st.tuples(terms, fracs), max_size=5).map(R)
log_free = st.lists(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 14), st.just(0)),
                              fracs), max_size=5).map(R)


def test_monomial_and_text():
    p = R.monomial(F(3, 4), rho2=1, t=2, s=7)
    assert dump_profile(p) == "3/4 * rho^2 * t^2 * Q^(-7/2) * logQ^0"
    assert parse_profile(dump_profile(p)) == p
    assert dump_profile(R()) == "0"


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        R.constant(0.5)


@given(profiles)
@settings(max_examples=60, deadline=None)
def test_dump_parse_round_trip(p):
    q = parse_profile(dump_profile(p))
    assert q.same_terms(p)


@given(profiles, profiles, profiles)
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R()
    assert term_algebra("scale", a, 3) == a + a + a


def test_rho_square_normal_form():
    # rho^2 + (1+t)^2 is Q^{+1}, i.e. s = -2
    lhs = R.rho_sq() + R.t_poly([1, 2, 1])
    assert lhs == R.q_power(-2)
    assert not lhs.same_terms(R.q_power(-2))
    assert (lhs - R.q_power(-2)).is_zero()


@given(log_free)
@settings(max_examples=30, deadline=None)
def test_derivatives_match_finite_differences(p):
    rho, t = mpmath.mpf("0.7"), mpmath.mpf("0.3")
    with mpmath.workdps(30):
        f = lambda r, s: eval_mp(p, r, s, mpmath.mp.prec)
        dt = mpmath.diff(lambda s: f(rho, s), t)
        dr = mpmath.diff(lambda r: f(r, t), rho)
        assert abs(eval_mp(differentiate(p, "d_t"), rho, t, 100) - dt) < mpmath.mpf(10) ** -20 * (1 + abs(dt))
        assert abs(eval_mp(differentiate(p, "inv_rho_d_rho"), rho, t, 100) * rho - dr) < \
            mpmath.mpf(10) ** -20 * (1 + abs(dr))


@pytest.mark.parametrize("factor", list(HarmonicFactor))
@pytest.mark.parametrize("n", [5, 6, 8])
def test_laplacian_matches_numeric(factor, n):
    p = R.monomial(F(2, 3), 1, 1, n + 1) + R.q_power(n - 2, -1) + R.monomial(1, 0, 2, 5, log=1)
    for rho, t in ((0.5, 0.2), (2.0, 3.0)):
        with mpmath.workdps(40):
            num = numeric_laplacian(p, factor.degree, n, mpmath.mpf(rho), mpmath.mpf(t))
            ex = eval_mp(laplacian_harmonic(p, factor, n), rho, t, 133)
            assert abs(num - ex) <= mpmath.mpf(10) ** -25 * (1 + abs(ex))


def test_degree4_factor_brute_force():
    # Delta(H B) for an explicit traceless quartic H in R^4 (n = 5), by finite differences in Cartesian coordinates
    n = 5
    B = R.q_power(7) + R.monomial(1, 1, 1, 9)

    def H(y):
        y1, y2, y3, y4 = y
        return y1 ** 4 - 6 * y1 ** 2 * y2 ** 2 + y2 ** 4 + 3 * y3 * y4 * (y1 ** 2 - y2 ** 2)

    def full(*z):
        y, t = z[:4], z[4]
        rho = mpmath.sqrt(sum(c * c for c in y))
        return H(y) * eval_mp(B, rho, t, mpmath.mp.prec)

    pt = [mpmath.mpf(x) for x in ("0.3", "-0.4", "0.5", "0.2", "0.6")]
    with mpmath.workdps(40):
        lap = 0
        for i in range(5):
            order = [0] * 5
            order[i] = 2
            lap += mpmath.diff(full, pt, tuple(order))
        rho = mpmath.sqrt(sum(c * c for c in pt[:4]))
        ex = H(pt[:4]) * eval_mp(laplacian_harmonic(B, HarmonicFactor.RIEM_QUAD, n), rho, pt[4], 120)
        assert abs(lap - ex) < 1e-20


def test_restrict_boundary_drops_t_terms():
    p = R.t_poly([1, 2, 3]) * R.q_power(4)
    assert restrict_boundary(p) == R.q_power(4)


def test_monomial_power():
    u = R.q_power(5)
    assert u.monomial_power(F(7, 5)) == R.q_power(7)
    with pytest.raises(ValueError):
        R.q_power(5).monomial_power(F(1, 2))
