from fractions import Fraction as F

import pytest

from yamabe_check.named import (CORRECTED, PARAM_SAMPLES, PRINTED, ExcludedCombination, HarmonicFactor, build_named,
                                a_profile)
from yamabe_check.profiles import RadialProfile as R, laplacian_harmonic
from yamabe_check.suite import pde_residuals


def test_phitilde2_profile():
    f = build_named("PhiTilde2", 7, {"a1": 0})
    assert f.body[0][0] == HarmonicFactor.RIEM_QUAD
    assert f.radial() == R.q_power(7, F(5, 18))  # (n-2)/6 Q^{-n/2}, times 1/3


def test_phitilde0_log_branch():
    assert build_named("PhiTilde0", 8).radial() == R.monomial(F(-1, 12), log=1)
    with pytest.raises(ExcludedCombination):
        build_named("PhiTilde0", 8, branch="power")


@pytest.mark.parametrize("name", ["Phi0", "Phi1", "Phi2", "BetaKL"])
def test_musso_excludes_n6(name):
    with pytest.raises(ExcludedCombination):
        build_named(name, 6)


def test_n6_parameter_free_only():
    build_named("PhiTilde1", 6)
    with pytest.raises(ExcludedCombination):
        build_named("PhiTilde1", 6, {"a1": 1})
    with pytest.raises(ExcludedCombination):
        build_named("PhiTilde2", 6, {"a1": 1})


def test_unknown_inputs():
    with pytest.raises(ValueError):
        build_named("Nope", 7)
    with pytest.raises(ValueError):
        build_named("Phi0", 7, {"zz": 1})
    with pytest.raises(ExcludedCombination):
        build_named("U", 4)


def test_a7_matches_generic():
    assert build_named("A7", 7).radial() == a_profile(7)
    with pytest.raises(ExcludedCombination):
        build_named("A7", 8)


@pytest.mark.parametrize("a1,a1p,a2p", [(F(3, 2), -1, 1), (1, 0, 0), (0, 1, 0), (0, 0, -2)])
def test_phitilde1_corrected_for_any_parameters(a1, a1p, a2p):
    f = build_named("PhiTilde1", 7, {"a1": a1, "a1p": a1p, "a2p": a2p}, variant=CORRECTED)
    assert all(r.is_zero() for r in pde_residuals(f))


def test_phitilde1_printed_terms_fail():
    for p in ("a1", "a1p"):
        f = build_named("PhiTilde1", 7, {p: 1}, variant=PRINTED)
        assert not pde_residuals(f)[0].is_zero()
    assert pde_residuals(build_named("PhiTilde1", 7, {"a2p": 1}, variant=PRINTED))[0].is_zero()


@pytest.mark.parametrize("b", PARAM_SAMPLES)
def test_a8_solves_equation(b):
    f = build_named("A8", 8, {"b": b})
    assert pde_residuals(f)[0].is_zero()


def test_beta_two_components():
    f = build_named("BetaKL", 5, {"a1": 1, "a2": -2})
    assert [fac for fac, _ in f.body] == [HarmonicFactor.RN_PAIR, HarmonicFactor.SCALAR]
    assert all(r.is_zero() for r in pde_residuals(f))
