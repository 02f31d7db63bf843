from fractions import Fraction as F

import pytest

from yamabe_check import suite as S


@pytest.fixture(scope="module")
def n7():
    return {r.lemma_id: r for r in S.suite_n7()}


@pytest.fixture(scope="module")
def n8():
    return {r.lemma_id: r for r in S.suite_n8(F(-2))}


@pytest.fixture(scope="module")
def n6():
    reports, fits = S.suite_n6(fit=False)
    return {r.lemma_id: r for r in reports}


def test_n7_constants(n7):
    for lid, value in (("AdA-1", "-85/24"), ("A2-1", "191/72"), ("35A-1", "5/2"), ("stimafinalegamma", "29/432")):
        assert n7[lid].status == S.PASS
        assert n7[lid].computed_exact == f"{value} * w5 * I(7,9)"
        assert n7[lid].rel_err <= 1e-8
    assert n7["pohofinale7"].status == S.PASS
    assert "7/54 * rn_sq" in n7["pohofinale7"].computed_exact


def test_poho1_general_formula(n7, n8):
    assert S.poho1_bracket(7) == (F(25, 288), F(-5, 36))
    assert S.poho1_bracket(8) == (F(1, 35), F(0))
    assert n7["poho1-n7"].status == S.DISCREPANCY
    assert n8["poho1-n8"].status == S.PASS
    assert S.poho1_residue_n6() == (F(8, 45), F(-16, 15))
    with pytest.raises(ValueError):
        S.poho1_bracket(6)


def test_n8_quadratics(n8):
    q = S.n8_quadratics()
    assert q == [S.PRINTED_N8["AdA8"], S.PRINTED_N8["AA8"], S.PRINTED_N8["finale8"]]
    assert S.bracket8() == S.PRINTED_N8["bracket8"]
    for lid in ("AdA8", "AA8", "finale8", "bracket8", "pohofinale8"):
        assert n8[lid].status == S.PASS, n8[lid]
    r = n8["stimafinalegamma8"]
    assert r.status == S.DISCREPANCY
    assert "computed 121/13608 vs printed 121/13601; downstream 1089/34020 consistent with computed" in r.notes
    # consistency chain, exact
    assert 2 * F(121, 13608) * F(9, 5) == F(1089, 34020)


def test_n8_other_b_is_derived():
    reps = {r.lemma_id: r for r in S.suite_n8(F(-1))}
    assert reps["stimafinalegamma8"].status == S.PASS
    assert reps["stimafinalegamma8"].expected_provenance == S.DERIVED


def test_coefficient_suite_preconditions():
    with pytest.raises(ValueError):
        S.coefficient_suite(8)
    with pytest.raises(ValueError):
        S.coefficient_suite(7, b=1)
    with pytest.raises(ValueError):
        S.coefficient_suite(9)


def test_n6_exact(n6):
    ex = S.n6_exact()
    assert ex["R(UU)"] == {"wbar_sq": F(8, 45), "rn_sq": F(-16, 15), "rn_div": 0}
    assert ex["R(udelta)"]["rn_sq"] == F(24, 15)
    assert ex["pohofinale6"] == {"wbar_sq": F(8, 45), "rn_sq": F(8, 15)}
    assert all(r.status == S.PASS for r in n6.values())


def test_scan_b():
    res = S.scan_b([-3, -2, -1, 0])
    assert res.sign_text() == "+,+,+,-"
    assert res.vertex == F(-50, 21) and res.vertex_value == F(895, 3024)
    assert res.value_at_minus2 == F(121, 432)
    assert res.roots == pytest.approx(((-150 - 2 * 2685 ** 0.5) / 63, (-150 + 2 * 2685 ** 0.5) / 63))
    for r in res.roots:
        assert abs(float(S.poly_at(res.coeffs, F(r)))) < 1e-12
    with pytest.raises(ValueError):
        S.scan_b([])


@pytest.mark.parametrize("n,r", [(6, 1.0), (7, 2.0), (8, 1.0)])
def test_pohozaev_flat(n, r):
    case = S.PohozaevFlatCase(n, r)
    assert case.critical_coefficient() == 0
    rep = S.pohozaev_flat_check(case)
    assert rep.status == S.PASS and rep.rel_err <= 1e-8


def test_pohozaev_non_euclidean():
    with pytest.raises(ValueError):
        S.PohozaevFlatCase(7, 1.0, metric="umbilic")


def test_pde_example_with_parameters():
    rep = S.verify_pde("Phitilda1", 7, {"a1": F(3, 2), "a1p": -1, "a2p": 1})
    assert rep.status == S.PASS and rep.computed_exact == "0"
    with pytest.raises(ValueError):
        S.verify_pde("nope", 7)


def test_bubble_boundary_condition():
    rep = S.verify_pde("ProbBubble", 6, grid=False)
    assert rep.status == S.PASS
    assert any("exact zero" in n for n in rep.notes)


def test_printed_phitilda1_flagged():
    rep = S.verify_printed_phitilda1(7)
    assert rep.status == S.DISCREPANCY
    assert "a1" in rep.computed_exact and "a2p" not in rep.computed_exact


def test_structural_n7():
    reps = {r.lemma_id: r for r in S.structural_checks(7)}
    assert all(r.status == S.PASS for r in reps.values())
    assert reps["gradvq"].computed_numeric == pytest.approx(-3, abs=0.05)
    with pytest.raises(ValueError):
        S.structural_checks(4)


def test_report_round_trip():
    rep = S.verify_printed_phitilda1(5)
    assert S.VerificationReport.from_dict(rep.to_dict()) == rep
    with pytest.raises(ValueError):
        S.VerificationReport("x", "", "", S.PAPER, "", "maybe")
