import math
from fractions import Fraction as F

import mpmath
import pytest

from yamabe_check import named
from yamabe_check.moments import FINITE, ISymbol, MomentValue, i_mp, omega_mp
from yamabe_check.profiles import HarmonicFactor, RadialProfile as R, eval_mp, restrict_boundary, differentiate
from yamabe_check.quadrature import (QuadratureSpec, RefinementLimit, crosscheck, default_precision,
                                     integrate_interval, integrate_quadrant, integrate_ray, numeric_laplacian,
                                     residual_max, validation_set)


def test_validation_set_within_bounds():
    cases = validation_set()
    assert len(cases) == 10
    for c in cases:
        assert c.within_bound, c
        assert c.error <= 1e-12 * abs(c.value) or c.error <= 1e-14


def test_ray_beta_closed_form():
    r = integrate_ray(R.q_power(14), 9)
    assert r.value == pytest.approx(float(i_mp(ISymbol(14, 9))), rel=1e-10)


def test_t_integral_by_quadrature():
    r = integrate_ray(lambda x: (1 + x) ** -5.0, 2)
    assert abs(r.value - 1 / 12) < 1e-10


def test_ada1_crosscheck():
    a = named.a_profile(7)
    weight = restrict_boundary(a) * restrict_boundary(differentiate(a, "d_t"))
    r = integrate_ray(weight, 5 + 4)
    w5 = float(omega_mp(5))
    exact = MomentValue(FINITE, ((ISymbol(14, 9), F(-85, 24)),), 5)
    cc = crosscheck(exact, (r.value * w5, r.error * w5))
    assert cc.ok and abs(cc.ratio - 1) < 1e-8


def test_crosscheck_zero_and_kind():
    assert crosscheck(MomentValue.zero(), (1e-12, 0.0), scale=1.0).ok
    assert not crosscheck(MomentValue.zero(), (1e-3, 0.0), scale=1.0).ok
    with pytest.raises(ValueError):
        crosscheck(MomentValue.divergent(5), (1.0, 0.0))


def test_determinism_bitwise():
    p = named.a_profile(8) * named.a_profile(8) * R.q_power(2)
    a = integrate_quadrant(p, 10)
    b = integrate_quadrant(p, 10)
    assert a == b


def test_halving_tolerance_never_increases_bound():
    p = R.monomial(1, 0, 2, 16)
    prev = None
    for tol in (1e-6, 5e-7, 2.5e-7, 1e-9, 5e-10, 1e-12):
        r = integrate_quadrant(p, 4, QuadratureSpec(tol=tol))
        if prev is not None:
            assert r.error <= prev
        prev = r.error


def test_finite_box_and_interval():
    # int_0^1 int_0^1 rho^2 drho dt = 1/3
    assert integrate_quadrant(lambda r, t: 1.0 + 0 * r * t, 2, limits=(1.0, 1.0)).value == pytest.approx(1 / 3)
    assert integrate_interval(lambda x: x ** 2, 0.0, 2.0).value == pytest.approx(8 / 3, rel=1e-13)


def test_refinement_limit():
    with pytest.raises(RefinementLimit):
        integrate_ray(lambda x: (1 + x) ** -1.05, 0, QuadratureSpec(tol=1e-14, max_level=4))


def test_multiprecision_fallback():
    spec = QuadratureSpec(precision=100)
    r = integrate_ray(R.q_power(14), 9, spec)
    assert r.value == pytest.approx(float(i_mp(ISymbol(14, 9))), rel=1e-14)


def test_env_precision(monkeypatch):
    monkeypatch.setenv("YAMABE_CHECK_PRECISION", "80")
    assert default_precision() == 80
    assert QuadratureSpec().precision == 80


def _grid(body, rhs, deg, n):
    def residual(r, t):
        return -numeric_laplacian(body, deg, n, r, t) - eval_mp(rhs, r, t, 133)

    return residual_max(residual, lambda r, t: eval_mp(rhs, r, t, 133), n)


def test_residual_grid_exact_identity():
    f = named.build_named("PhiTilde2", 7)
    (fac, body), (_, rhs) = f.body[0], f.rhs[0]
    g = _grid(body, rhs, fac.degree, 7)
    assert g.size == 256 and g.max_rel <= 1e-9


def test_residual_grid_detects_perturbation():
    f = named.build_named("PhiTilde2", 7)
    (fac, body), (_, rhs) = f.body[0], f.rhs[0]
    (key, c), = body.items()
    perturbed = R({key: c * F(101, 100)})
    assert _grid(perturbed, rhs, fac.degree, 7).max_rel >= 1e-3


def test_residual_grid_log_branch():
    f = named.build_named("PhiTilde0", 8)
    (fac, body), (_, rhs) = f.body[0], f.rhs[0]
    assert _grid(body, rhs, fac.degree, 8).max_rel <= 1e-9
