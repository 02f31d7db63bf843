"""Verification suites: PDE identities, structural properties and coefficients.

Every check returns a VerificationReport.  Exact claims are decided by
rational equality; numeric cross-checks come from the quadrature oracle.
Values printed in the source that disagree with the exact pipeline are
reported as ``discrepancy_with_paper`` with both numbers, never corrected
silently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from . import named
from .curvature import (BOUNDARY, HALFSPACE, RIEM, RN, ContractionPattern, CurvatureScalar,
                        numeric_contract, random_curvature_sample, reduce_contraction, slot_polynomial)
from .moments import (FINITE, LOG, ISymbol, MomentValue, TruncationSpec, halfspace_moment, omega_mp,
                      t_integral, truncated_log_moment)
from .named import CORRECTED, PARAM_SAMPLES, PRINTED, Q, build_named
from .profiles import (HarmonicFactor, RadialProfile, differentiate, dump_profile, eval_mp, evaluate,
                       laplacian_harmonic, restrict_boundary)
from .quadrature import (QuadratureSpec, crosscheck, integrate_interval, integrate_quadrant, integrate_ray,
                         numeric_laplacian, residual_max)

F = Fraction
R = RadialProfile

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy_with_paper"
STATUSES = (PASS, FAIL, DISCREPANCY)

PAPER = "paper"
DERIVED = "derived"
TRIVIAL = "trivial"

I79 = ISymbol(14, 9)
I77 = ISymbol(14, 7)
I810 = ISymbol(16, 10)
I88 = ISymbol(16, 8)
I66 = ISymbol(12, 6)

NUMERIC_TOL = 1e-8
GRID_TOL = 1e-9
DEFAULT_DELTAS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class VerificationReport:
    lemma_id: str
    paper_ref: str
    expected: str
    expected_provenance: str
    computed_exact: str
    status: str
    computed_numeric: Optional[float] = None
    numeric_error: Optional[float] = None
    abs_err: Optional[float] = None
    rel_err: Optional[float] = None
    notes: tuple = ()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        object.__setattr__(self, "notes", tuple(self.notes))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d["notes"] = tuple(d.get("notes", ()))
        return cls(**d)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _fnum(x) -> Optional[float]:
    return None if x is None else float(x)


def _join(terms: Sequence[tuple[Fraction, str]]) -> str:
    """Signed sum of (coefficient, text) pairs: '1/35 * a - 5/36 * b'."""
    out = ""
    for c, body in terms:
        piece = f"{abs(c)}{body}"
        if not out:
            out = piece if c >= 0 else f"-{piece}"
        else:
            out += f" + {piece}" if c >= 0 else f" - {piece}"
    return out or "0"


def combo(coeffs: dict, unit: str = "", log: bool = False) -> str:
    """Render {basis: coefficient} as text, e.g. '(25/432 * wbar_sq + 7/54 * rn_sq) * w5 * I(7,7)'."""
    items = [(F(c), f" * {b}") for b, c in coeffs.items()]
    text = _join(items)
    if len(items) > 1 and unit:
        text = f"({text})"
    if unit:
        text = f"{text} * {unit}"
    if log:
        text += " * log(1/delta)"
    return text


def quad_poly(c: Sequence[Fraction], var: str = "b") -> str:
    out = []
    for k, v in enumerate(c):
        if v == 0 and k:
            continue
        out.append((F(v), "" if k == 0 else f" {var}" if k == 1 else f" {var}^{k}"))
    return _join(out)


# ---------------------------------------------------------------------------
# PDE identities
# ---------------------------------------------------------------------------

PDE_LEMMAS = {
    "ProbBubble": ("U", ()),
    "Phi0": ("Phi0", ("a1", "a2")),
    "Phi1": ("Phi1", ("a1",)),
    "Phi2": ("Phi2", ("a2", "a2p")),
    "Phitilda0": ("PhiTilde0", ("a1", "a2")),
    "beta": ("BetaKL", ("a1", "a2")),
    "Phitilda1": ("PhiTilde1", ("a1", "a1p", "a2p")),
    "Phitilda2": ("PhiTilde2", ("a1",)),
    "Phi1e2": (None, ()),
}
PDE_REFS = {
    "ProbBubble": "bubble: harmonic with the nonlinear boundary condition",
    "Phi0": "-Delta Phi0 = Q^{-(n-4)/2}",
    "Phi1": "-Delta Phi1 = (1+t) Q^{-(n-2)/2}",
    "Phi2": "-Delta Phi2 = Q^{-(n-2)/2}",
    "Phitilda0": "-Delta PhiTilde0 = Q^{-(n-6)/2}",
    "beta": "-Delta beta_kl = y_k y_l U",
    "Phitilda1": "-Delta PhiTilde1 = R_ninj t^2 d_ij U",
    "Phitilda2": "-Delta PhiTilde2 = 1/3 Rbar_ikjl y_k y_l d_ij U",
    "Phi1e2": "parameter-free correction terms solve both equations",
}
# representative nonzero parameters for the numeric grid
GRID_PARAMS = (F(3, 2), F(-1), F(1))


def pde_residuals(f: named.NamedFunction) -> list[RadialProfile]:
    out = []
    for (fac, p), (fac2, rhs) in zip(f.body, f.rhs):
        assert fac == fac2
        out.append(laplacian_harmonic(p, fac, f.n).scale(-1) - rhs)
    return out


def _param_sets(names: Sequence[str]) -> Iterable[dict]:
    for values in itertools.product(PARAM_SAMPLES, repeat=len(names)):
        yield dict(zip(names, values))


def pde_grid(f: named.NamedFunction, points=None):
    """Numeric residual grid for each component; returns the worst relative residual."""
    worst = None
    for (fac, p), (_, rhs) in zip(f.body, f.rhs):
        deg = fac.degree

        def residual(r, t, p=p, rhs=rhs, deg=deg):
            return -numeric_laplacian(p, deg, f.n, r, t) - eval_mp(rhs, r, t, 133)

        if rhs.is_empty():
            def scale(r, t, p=p, deg=deg):
                return sum(abs(x) for x in numeric_laplacian(p, deg, f.n, r, t, parts=True))
        else:
            def scale(r, t, rhs=rhs):
                return eval_mp(rhs, r, t, 133)
        g = residual_max(residual, scale, f.n, points)
        if worst is None or g.max_rel > worst.max_rel:
            worst = g
    return worst


def verify_pde(lemma_id: str, n: int, params: Optional[dict] = None, grid: bool = True,
               grid_points=None) -> VerificationReport:
    """Exact residual of -Delta(candidate) - rhs, swept over the parameter samples, plus a numeric grid."""
    if lemma_id not in PDE_LEMMAS:
        raise ValueError(f"unknown PDE lemma {lemma_id!r}")
    name, free = PDE_LEMMAS[lemma_id]
    notes: list[str] = []
    if lemma_id == "Phi1e2":
        funcs = [build_named("PhiTilde1", n), build_named("PhiTilde2", n)]
        sweeps = [funcs]
        grid_funcs = funcs
    else:
        if params is not None:
            sets = [params]
        else:
            sets = list(_param_sets(free)) or [{}]
        sweeps = [[build_named(name, n, ps, variant=CORRECTED)] for ps in sets]
        rep = params if params is not None else dict(zip(free, GRID_PARAMS))
        grid_funcs = [build_named(name, n, rep, variant=CORRECTED)]
        if len(sets) > 1:
            notes.append(f"exact residual checked for {len(sets)} parameter choices from {{0, 1, -1, 3/2, -2}}")
    bad = []
    for fs in sweeps:
        for f in fs:
            for res in pde_residuals(f):
                if not res.is_zero():
                    bad.append((f.id, dict(f.params), dump_profile(res.reduced())))
    exact_ok = not bad
    if lemma_id == "ProbBubble":
        u = named.bubble(n)
        bc = restrict_boundary(differentiate(u, "d_t") + u.monomial_power(F(n, n - 2)).scale(n - 2))
        bc_ok = bc.is_zero_on_boundary()
        notes.append("boundary condition dU/dt + (n-2) U^{n/(n-2)} = 0 at t = 0: " + ("exact zero" if bc_ok else "nonzero"))
        exact_ok = exact_ok and bc_ok
    if lemma_id == "Phi1":
        rel = named.phi1(n) == differentiate(named.phi0(n), "d_t").scale(F(-1, n - 4))
        notes.append(f"Phi1 = -d_t Phi0/(n-4) with a1 = 0: {'holds' if rel else 'fails'} (it needs a1 = 0 in both)")
    numeric = None
    grid_ok = True
    if grid:
        g = None
        for f in grid_funcs:
            gi = pde_grid(f, grid_points)
            if g is None or gi.max_rel > g.max_rel:
                g = gi
        numeric = g.max_rel
        grid_ok = g.max_rel <= GRID_TOL
        notes.append(f"finite-difference residual on a {g.size}-point grid: max relative {g.max_rel:.2e}")
    computed = "0" if exact_ok else "; ".join(f"{i} {p}: {r}" for i, p, r in bad[:3]) or "nonzero"
    return VerificationReport(
        lemma_id=f"{lemma_id}",
        paper_ref=f"{PDE_REFS[lemma_id]} (n = {n})",
        expected="0",
        expected_provenance=PAPER,
        computed_exact=computed,
        status=_status(exact_ok and grid_ok),
        computed_numeric=numeric,
        rel_err=numeric,
        notes=tuple(notes),
    )


def verify_printed_phitilda1(n: int) -> VerificationReport:
    """Residuals of the a1 and a1' terms exactly as printed."""
    findings = []
    for pname in ("a1", "a1p", "a2p"):
        f = build_named("PhiTilde1", n, {pname: 1}, variant=PRINTED)
        res = pde_residuals(f)[0]
        findings.append((pname, res.is_zero()))
    broken = [p for p, ok in findings if not ok]
    notes = [f"{p}: residual {'zero' if ok else 'nonzero'}" for p, ok in findings]
    if broken:
        notes.append("harmonic forms: a1 term needs (1+t)^2 where (1+t^2) is printed; a1' term needs a (1+t) factor")
    return VerificationReport(
        lemma_id="Phitilda1-printed",
        paper_ref=f"free-parameter terms of PhiTilde1 as printed (n = {n})",
        expected="0 for every a1, a1', a2'",
        expected_provenance=PAPER,
        computed_exact="nonzero for " + ", ".join(broken) if broken else "0",
        status=DISCREPANCY if broken else PASS,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# structural properties of Phi = PhiTilde1 + PhiTilde2
# ---------------------------------------------------------------------------

def _phi_parts(n: int):
    return named.a_profile(n), named.phi_tilde2_profile(n)


def _poly_eval(poly: dict, y: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Value, gradient and Hessian of a polynomial at y."""
    d = len(y)
    val = 0.0
    grad = np.zeros(d)
    hess = np.zeros((d, d))
    for e, c in poly.items():
        c = float(c)
        e = np.array(e)
        val += c * np.prod(y ** e)
        for i in range(d):
            if e[i]:
                ei = e.copy()
                ei[i] -= 1
                grad[i] += c * e[i] * np.prod(y ** ei)
                for j in range(d):
                    if ei[j]:
                        eij = ei.copy()
                        eij[j] -= 1
                        hess[i, j] += c * e[i] * ei[j] * np.prod(y ** eij)
    return val, grad, hess


def decay_profile(n: int, seed: int = 0, radii=None) -> dict:
    """|Phi|, |grad Phi|, |Hess Phi| along a boundary ray y = s e, t = 0."""
    sample = random_curvature_sample(n, seed)
    d = n - 1
    a, _ = _phi_parts(n)
    poly = slot_polynomial(RN, sample)
    e = np.arange(1, d + 1, dtype=float)
    e /= np.linalg.norm(e)
    radii = np.geomspace(10.0, 1e4, 25) if radii is None else np.asarray(radii)
    da = differentiate(a, "inv_rho_d_rho")
    dda = differentiate(da, "inv_rho_d_rho")
    at = differentiate(a, "d_t")
    dat = differentiate(da, "d_t")
    att = differentiate(a, "d_tt")
    out = {0: [], 1: [], 2: []}
    for s in radii:
        y = s * e
        h, gh, hh = _poly_eval(poly, y)
        A, DA, DDA, At, DAt, Att = (float(evaluate(p, s, 0.0)) for p in (a, da, dda, at, dat, att))
        phi = h * A
        grad = np.append(gh * A + h * y * DA, h * At)
        hess = np.zeros((d + 1, d + 1))
        hess[:d, :d] = (hh * A + np.outer(gh, y) * DA + np.outer(y, gh) * DA
                        + h * (np.eye(d) * DA + np.outer(y, y) * DDA))
        hess[:d, d] = hess[d, :d] = gh * At + h * y * DAt
        hess[d, d] = h * Att
        out[0].append(abs(phi))
        out[1].append(np.linalg.norm(grad))
        out[2].append(np.linalg.norm(hess))
    return {"radii": radii, **{k: np.array(v) for k, v in out.items()}}


def structural_checks(n: int, seed: int = 0, spec: Optional[QuadratureSpec] = None) -> list[VerificationReport]:
    if n < 5:
        raise ValueError("n must be at least 5")
    reports = []
    a, bq = _phi_parts(n)
    sample = random_curvature_sample(n, seed)

    # decay exponents
    data = decay_profile(n, seed)
    logs = np.log(data["radii"])
    slopes = [float(np.polyfit(logs, np.log(data[k]), 1)[0]) for k in (0, 1, 2)]
    targets = [4 - k - n for k in (0, 1, 2)]
    errs = [abs(s - t) for s, t in zip(slopes, targets)]
    reports.append(VerificationReport(
        lemma_id="gradvq",
        paper_ref=f"decay |grad^k Phi| ~ |y|^(4-k-n), k = 0, 1, 2 (n = {n})",
        expected=", ".join(str(t) for t in targets),
        expected_provenance=PAPER,
        computed_exact="n/a (numeric fit)",
        status=_status(max(errs) <= 0.05),
        computed_numeric=slopes[0],
        abs_err=max(errs),
        notes=(f"fitted slopes {', '.join(f'{s:.4f}' for s in slopes)} on |ybar| in [10, 1e4]",
               "the Riemann quartic part vanishes pointwise, so Phi = R_ninj y_i y_j A on the ray"),
    ))

    # orthogonality to U^{n/(n-2)} on the boundary
    un = named.bubble(n).monomial_power(F(n, n - 2))
    pats = [ContractionPattern((RN,), restrict_boundary(un * a)), ContractionPattern((RIEM,), restrict_boundary(un * bq))]
    red = [reduce_contraction(p, n) for p in pats]
    nums = [numeric_contract(p, sample, spec) for p in pats]
    ok = all(r.is_zero() for r in red) and all(abs(x.value) <= 1e-9 * x.scale for x in nums)
    reports.append(VerificationReport(
        lemma_id="Uvq",
        paper_ref=f"boundary orthogonality of Phi to U^(n/(n-2)) (n = {n})",
        expected="0",
        expected_provenance=PAPER,
        computed_exact=" + ".join(str(r) for r in red),
        status=_status(ok),
        computed_numeric=math.fsum(x.value for x in nums),
        abs_err=max(abs(x.value) / x.scale for x in nums),
        notes=("R_ninj y_i y_j part vanishes by tracelessness, quartic part by antisymmetry",
               f"brute force with random sample seed {seed}"),
    ))

    # Phi(0) and tangential gradient at 0, exactly
    zero = (0,) * (n - 1)
    vals = []
    for slot, prof in ((RN, a), (RIEM, bq)):
        poly = slot_polynomial(slot, sample)
        # value at the origin: Q = 1 there, so only rho- and t-free, log-free terms survive
        center = sum((c for (a_, k, _, l), c in prof.items() if a_ == 0 and k == 0 and l == 0), F(0))
        vals.append(poly.get(zero, F(0)) * center)
        for i in range(n - 1):
            unit = tuple(int(j == i) for j in range(n - 1))
            vals.append(poly.get(unit, F(0)) * center)
    ok = all(v == 0 for v in vals)
    reports.append(VerificationReport(
        lemma_id="dervq",
        paper_ref=f"Phi(0) = d_i Phi(0) = 0 (n = {n})",
        expected="0",
        expected_provenance=PAPER,
        computed_exact="0" if ok else "nonzero",
        status=_status(ok),
        notes=("exact: the polynomial factors have no constant or linear part and the radial parts are even in rho",),
    ))

    # cross terms between the two parts
    dta, dtb = differentiate(a, "d_t"), differentiate(bq, "d_t")
    lap_a = laplacian_harmonic(a, HarmonicFactor.RN_PAIR, n).scale(-1)
    lap_b = laplacian_harmonic(bq, HarmonicFactor.RIEM_QUAD, n).scale(-1)
    qinv = Q(2, n)
    cross = [
        ("dPhi1/dt Phi2", ContractionPattern((RN, RIEM), restrict_boundary(dta * bq))),
        ("dPhi2/dt Phi1", ContractionPattern((RIEM, RN), restrict_boundary(dtb * a))),
        ("n U^(2/(n-2)) Phi1 Phi2", ContractionPattern((RN, RIEM), restrict_boundary(qinv * a * bq))),
        ("dPhi2/dt Phi2", ContractionPattern((RIEM, RIEM), restrict_boundary(dtb * bq))),
        ("n U^(2/(n-2)) Phi2^2", ContractionPattern((RIEM, RIEM), restrict_boundary(qinv * bq * bq))),
        ("-Phi1 Delta Phi2", ContractionPattern((RN, RIEM), a * lap_b, HALFSPACE)),
        ("-Phi2 Delta Phi2", ContractionPattern((RIEM, RIEM), bq * lap_b, HALFSPACE)),
        ("-Phi2 Delta Phi1", ContractionPattern((RIEM, RN), bq * lap_a, HALFSPACE)),
    ]
    notes = []
    ok = True
    worst = 0.0
    for label, pat in cross:
        red = reduce_contraction(pat, n)
        ok = ok and red.is_zero()
        try:
            num = numeric_contract(pat, sample, spec)
            ratio = abs(num.value) / num.scale if num.scale else abs(num.value)
            worst = max(worst, ratio)
            ok = ok and ratio <= 1e-9
        except ValueError:
            notes.append(f"{label}: weight not integrable at n = {n}; vanishes pointwise")
    reports.append(VerificationReport(
        lemma_id="Phi1-cross",
        paper_ref=f"cross moments of the two correction terms (n = {n})",
        expected="0",
        expected_provenance=PAPER,
        computed_exact="0" if ok else "nonzero",
        status=_status(ok),
        computed_numeric=worst,
        abs_err=worst,
        notes=tuple(notes) + (f"{len(cross)} moments, brute force relative size <= {worst:.1e}",),
    ))
    return reports


# ---------------------------------------------------------------------------
# coefficient pipelines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GdgTerm:
    name: str
    domain: str
    weight: RadialProfile  # times |ybar|^4
    moment: MomentValue


def gdg_terms(a: RadialProfile, n: int) -> list[GdgTerm]:
    """The three moments whose sum, times 2/(n^2-1) R_ninj^2, bounds -int gamma Delta gamma."""
    ab = restrict_boundary(a)
    dab = restrict_boundary(differentiate(a, "d_t"))
    t1 = ab * dab
    t2 = (ab * ab * restrict_boundary(Q(2))).scale(n)
    t3 = a * laplacian_harmonic(a, HarmonicFactor.RN_PAIR, n).scale(-1)
    from .moments import boundary_moment

    return [
        GdgTerm("A dA/dt", BOUNDARY, t1, boundary_moment(t1, 4, n)),
        GdgTerm("n A^2/(1+rho^2)", BOUNDARY, t2, boundary_moment(t2, 4, n)),
        GdgTerm("A (-Delta A)", HALFSPACE, t3, halfspace_moment(t3, 4, n)),
    ]


def gdg_reduced(terms: list[GdgTerm], n: int) -> CurvatureScalar:
    total = CurvatureScalar.zero()
    for t in terms:
        total = total + reduce_contraction(ContractionPattern((RN, RN), t.weight, t.domain), n)
    return total


def numeric_term(t: GdgTerm, n: int, spec: Optional[QuadratureSpec] = None):
    spec = spec or QuadratureSpec()
    w = float(omega_mp(n - 2))
    if t.domain == BOUNDARY:
        r = integrate_ray(t.weight, n - 2 + 4, spec)
    else:
        r = integrate_quadrant(t.weight, n - 2 + 4, spec)
    return r.value * w, r.error * w


def _moment_report(lemma_id, ref, expected: MomentValue, computed: MomentValue, numeric, prov=PAPER,
                   notes=()) -> VerificationReport:
    cc = crosscheck(computed, numeric, NUMERIC_TOL)
    exact_ok = computed.equals(expected)
    return VerificationReport(
        lemma_id=lemma_id, paper_ref=ref, expected=str(expected), expected_provenance=prov,
        computed_exact=str(computed), status=_status(exact_ok and cc.ok),
        computed_numeric=cc.numeric, numeric_error=numeric[1], abs_err=cc.abs_err, rel_err=cc.rel_err,
        notes=tuple(notes) + (f"quadrature ratio {cc.ratio:.12f}" if cc.ratio is not None else "zero value",),
    )


def poho1_bracket(n: int) -> tuple[Fraction, Fraction]:
    """General-n R(U,U) bracket as stated in the source, units omega_{n-2} I_n^n.

    Returns the (|Wbar|^2, R_ninj^2) coefficients; valid for n >= 7.  Its
    residue at n = 6 must equal the log(1/delta) coefficients computed from
    the n = 6 integrands, which ties the closed form to the exact pipeline.
    """
    if n in (3, 5, 6) or n < 5:
        raise ValueError("bracket has a pole at this n")
    pre = F(n - 2, (n - 1) * (n - 3) * (n - 5) * (n - 6))
    return pre * F(n - 2, 6), pre * F(4 * (n - 8), n - 4)


def poho1_residue_n6() -> tuple[Fraction, Fraction]:
    n = 6
    pre = F(n - 2, (n - 1) * (n - 3) * (n - 5))
    return pre * F(n - 2, 6), pre * F(4 * (n - 8), n - 4)


PRINTED_POHO2 = {7: (F(25, 432), F(-5, 36)), 8: (F(1, 35), F(0))}


def suite_n7(spec: Optional[QuadratureSpec] = None) -> list[VerificationReport]:
    n = 7
    a = named.build_named("A7", 7).radial()
    terms = gdg_terms(a, n)
    nums = [numeric_term(t, n, spec) for t in terms]
    printed = [F(-85, 24), F(191, 72), F(5, 2)]
    ids = ["AdA-1", "A2-1", "35A-1"]
    refs = ["int A dA/dt |ybar|^4 over the boundary, n = 7", "7 int A^2 |ybar|^4/(1+|ybar|^2), n = 7",
            "35 int A |ybar|^4 t^2 Q^{-9/2} over the half-space, n = 7"]
    reports = []
    for lid, ref, t, num, c in zip(ids, refs, terms, nums, printed):
        exp = MomentValue(FINITE, ((I79, c),), n - 2)
        reports.append(_moment_report(lid, ref, exp, t.moment.rebase(I79), num))

    red = gdg_reduced(terms, n)
    stima = red.get("rn_sq").rebase(I79)
    c = 2 / (n * n - 1)
    num = (math.fsum(x[0] for x in nums) * c, math.fsum(x[1] for x in nums) * c)
    reports.append(_moment_report(
        "stimafinalegamma", "lower bound of -int gamma Delta gamma, coefficient of R_ninj^2, n = 7",
        MomentValue(FINITE, ((I79, F(29, 432)),), 5), stima, num,
        notes=("sum of the three moments times 2/(n^2-1) from the two-pair contraction",)))

    reports.append(_poho1_report(7))

    w_in, r_in = PRINTED_POHO2[7]
    stima77 = stima.coeff_in(I77)
    r_final = r_in + 2 * stima77
    comp = {"wbar_sq": w_in, "rn_sq": r_final}
    exp = {"wbar_sq": F(25, 432), "rn_sq": F(7, 54)}
    reports.append(VerificationReport(
        lemma_id="pohofinale7",
        paper_ref="final Pohozaev sign bracket, n = 7",
        expected=combo(exp, "w5 * I(7,7)"),
        expected_provenance=PAPER,
        computed_exact=combo(comp, "w5 * I(7,7)"),
        status=_status(comp == exp),
        notes=(f"rn_sq: {r_in} + 2 * {stima77} (I(7,9) = 2 I(7,7)) = {r_final}",
               "the wbar_sq coefficient is carried over from the R(U,U) bracket as printed"),
    ))
    return reports


def _poho1_report(n: int) -> VerificationReport:
    w, r = poho1_bracket(n)
    pw, pr = PRINTED_POHO2[n]
    res_w, res_r = poho1_residue_n6()
    n6 = n6_exact()
    res_ok = (res_w, res_r) == (n6["R(UU)"]["wbar_sq"], n6["R(UU)"]["rn_sq"])
    unit = f"w{n - 2} * I({n},{n})"
    notes = [f"general-n bracket evaluated at n = {n}; its residue at n = 6 is ({res_w}, {res_r}), "
             f"{'equal' if res_ok else 'NOT equal'} to the computed n = 6 log coefficients"]
    match = (w, r) == (pw, pr)
    if not match:
        notes.append(f"computed wbar_sq {w} vs printed {pw}; rn_sq {r} vs printed {pr}; "
                     "the dimension-specific value disagrees with the general-n formula")
    status = PASS if match and res_ok else (DISCREPANCY if res_ok else FAIL)
    return VerificationReport(
        lemma_id=f"poho1-n{n}",
        paper_ref=f"R(U,U) bracket entering the Pohozaev estimate, n = {n}",
        expected=combo({"wbar_sq": pw, "rn_sq": pr}, unit),
        expected_provenance=PAPER,
        computed_exact=combo({"wbar_sq": w, "rn_sq": r}, unit),
        status=status,
        notes=tuple(notes),
    )


def n8_coefficients(b) -> list[Fraction]:
    a = named.a8_profile(b)
    return [t.moment.coeff_in(I810) for t in gdg_terms(a, 8)]


def n8_quadratics() -> list[list[Fraction]]:
    """Exact quadratics in b of the three n = 8 moments, from values at b = 0, 1, -1."""
    v0, v1, vm = n8_coefficients(0), n8_coefficients(1), n8_coefficients(-1)
    out = []
    for c0, c1, cm in zip(v0, v1, vm):
        out.append([c0, (c1 - cm) / 2, (c1 + cm) / 2 - c0])
    return out


def poly_at(c: Sequence[Fraction], x) -> Fraction:
    return sum((ci * F(x) ** k for k, ci in enumerate(c)), F(0))


def bracket8(quads=None) -> list[Fraction]:
    quads = quads or n8_quadratics()
    return [sum(q[k] for q in quads) for k in range(3)]


PRINTED_N8 = {
    "AdA8": [F(-21, 4), F(-35, 12), F(-35, 64)],
    "AA8": [F(221, 54), F(85, 36), F(7, 16)],
    "finale8": [F(5, 6), F(5, 144), F(0)],
    "bracket8": [F(-35, 108), F(-25, 48), F(-7, 64)],
}


def suite_n8(b=F(-2), spec: Optional[QuadratureSpec] = None) -> list[VerificationReport]:
    n = 8
    b = F(b)
    quads = n8_quadratics()
    a = named.a8_profile(b)
    terms = gdg_terms(a, n)
    nums = [numeric_term(t, n, spec) for t in terms]
    # the fitted quadratics must reproduce the pipeline at two further points
    check_pts = sorted({F(2), b})
    fit_ok = all(poly_at(q, x) == v for x in check_pts for q, v in zip(quads, n8_coefficients(x)))
    reports = []
    refs = {"AdA8": "(1/w6) int A dA/dt |ybar|^4, n = 8", "AA8": "(8/w6) int A^2 |ybar|^4/(1+|ybar|^2), n = 8",
            "finale8": "(48/w6) int A |ybar|^4 t^2 Q^{-5}, n = 8"}
    for (lid, ref), q, t, num in zip(refs.items(), quads, terms, nums):
        cc = crosscheck(t.moment, num, NUMERIC_TOL)
        ok = q == PRINTED_N8[lid] and fit_ok and cc.ok
        reports.append(VerificationReport(
            lemma_id=lid, paper_ref=ref,
            expected=f"({quad_poly(PRINTED_N8[lid])}) * I(8,10)", expected_provenance=PAPER,
            computed_exact=f"({quad_poly(q)}) * I(8,10)", status=_status(ok),
            computed_numeric=cc.numeric, numeric_error=num[1], abs_err=cc.abs_err, rel_err=cc.rel_err,
            notes=(f"at b = {b}: exact {t.moment.rebase(I810)}, quadrature ratio {cc.ratio:.12f}",
                   "quadratic reconstructed from b = 0, 1, -1 and confirmed at " + ", ".join(map(str, check_pts))),
        ))
    br = bracket8(quads)
    at_b = poly_at(br, b)
    ok = br == PRINTED_N8["bracket8"]
    notes = [f"value at b = {b}: {at_b}"]
    if b == -2:
        ok = ok and at_b == F(121, 432)
    num_sum = math.fsum(x[0] for x in nums)
    exact_sum = MomentValue(FINITE, ((I810, at_b),), 6)
    cc = crosscheck(exact_sum, (num_sum, math.fsum(x[1] for x in nums)), NUMERIC_TOL)
    reports.append(VerificationReport(
        lemma_id="bracket8", paper_ref="quadratic bracket in b, n = 8",
        expected=f"({quad_poly(PRINTED_N8['bracket8'])}) * I(8,10)", expected_provenance=PAPER,
        computed_exact=f"({quad_poly(br)}) * I(8,10)", status=_status(ok and cc.ok),
        computed_numeric=cc.numeric, abs_err=cc.abs_err, rel_err=cc.rel_err, notes=tuple(notes),
    ))

    stima = F(2, 63) * at_b
    notes = [f"(2/63) * {at_b} = {stima}"]
    if b == -2:
        printed = F(121, 13601)
        status = PASS if stima == printed else DISCREPANCY
        if stima != printed:
            notes.append(f"computed {stima} vs printed {printed}; downstream 1089/34020 consistent with computed")
        expected = f"{printed} * w6 * I(8,10)"
        prov = PAPER
    else:
        status, expected, prov = PASS, f"{stima} * w6 * I(8,10)", DERIVED
    reports.append(VerificationReport(
        lemma_id="stimafinalegamma8", paper_ref="lower bound of -int gamma Delta gamma, coefficient of R_ninj^2, n = 8",
        expected=expected, expected_provenance=prov, computed_exact=f"{stima} * w6 * I(8,10)", status=status,
        computed_numeric=2 / 63 * num_sum, notes=tuple(notes),
    ))

    reports.append(_poho1_report(8))

    w_in, r_in = PRINTED_POHO2[8]
    ratio = MomentValue(FINITE, ((I810, F(1)),), 6).coeff_in(I88)  # I(8,10) = 9/5 I(8,8)
    r_final = r_in + 2 * stima * ratio
    comp = {"wbar_sq": w_in, "rn_sq": r_final}
    if b == -2:
        exp, prov = {"wbar_sq": F(1, 35), "rn_sq": F(1089, 34020)}, PAPER
    else:
        exp, prov = comp, DERIVED
    reports.append(VerificationReport(
        lemma_id="pohofinale8", paper_ref="final Pohozaev sign bracket, n = 8",
        expected=combo(exp, "w6 * I(8,8)"), expected_provenance=prov,
        computed_exact=combo(comp, "w6 * I(8,8)"), status=_status(comp == exp),
        notes=(f"rn_sq: 2 * {stima} * {ratio} = {r_final} (= {r_final.numerator * 9}/{r_final.denominator * 9} "
               "in the printed form)" if b == -2 else f"rn_sq: 2 * {stima} * {ratio} = {r_final}",),
    ))
    return reports


# ---------------------------------------------------------------------------
# n = 6: log(1/delta) coefficients
# ---------------------------------------------------------------------------

def _y2m1() -> RadialProfile:
    return R.rho_sq() + R.t_poly([-1, 0, 1])


def r_uu_integrands() -> dict:
    """The A_1 .. A_4 integrands (profile in (rho, t), explicit rho powers), keyed by group and basis."""
    y = _y2m1()
    mono = R.monomial
    return {
        "A1-1": {"rn_sq": (y * mono(1, 1, 4, 14)).scale(F(24, 5)),
                 "rn_div": (y * mono(1, 2, 2, 14)).scale(F(48, 35))},
        "A2+A3-1": {"rn_sq": (y * mono(1, 0, 4, 12)).scale(-4),
                    "rn_div": (y * mono(1, 1, 2, 12)).scale(F(-8, 5))},
        "A4-1": {"wbar_sq": (y * mono(1, 1, 0, 10)).scale(F(1, 150)),
                 "rn_sq": (y * mono(1, 0, 2, 10)).scale(F(2, 5)),
                 "rn_div": (y * mono(1, 0, 2, 10)).scale(F(2, 5))},
    }


def _sym_sum(*syms) -> tuple:
    return tuple((ISymbol(*s), F(1)) for s in syms)


PRINTED_N6 = {
    "A1-1": {"rn_sq": (F(24, 5), _sym_sum((14, 8), (14, 6))), "rn_div": (F(48, 35), _sym_sum((14, 10), (14, 8)))},
    "A2+A3-1": {"rn_sq": (F(-4), _sym_sum((12, 6), (12, 4))), "rn_div": (F(-8, 5), _sym_sum((12, 8), (12, 6)))},
    "A4-1": {"wbar_sq": (F(1, 150), _sym_sum((10, 8), (10, 6))), "rn_sq": (F(2, 5), _sym_sum((10, 6), (10, 4))),
             "rn_div": (F(2, 5), _sym_sum((10, 6), (10, 4)))},
}


def r_udelta_integrand() -> RadialProfile:
    """2 * (2/(n^2-1)) * A (-Delta A) |ybar|^4 at n = 6, as a profile (rho^4 included)."""
    n = 6
    a = named.build_named("PhiTilde1", 6).radial()
    body = a * laplacian_harmonic(a, HarmonicFactor.RN_PAIR, n).scale(-1)
    return (body * R.monomial(1, 2)).scale(2 * F(2, n * n - 1))


def n6_exact(trunc: Optional[TruncationSpec] = None) -> dict:
    """All n = 6 log coefficients in units w4 * I(6,6)."""
    trunc = trunc or TruncationSpec(F(1, 100))
    groups = {}
    total = {"wbar_sq": F(0), "rn_sq": F(0), "rn_div": F(0)}
    moments = {}
    for gid, parts in r_uu_integrands().items():
        moments[gid] = {}
        for basis, prof in parts.items():
            m = truncated_log_moment(prof, 0, 6, trunc)
            moments[gid][basis] = m
            total[basis] += m.coeff_in(I66)
    groups["R(UU)"] = total
    ud = truncated_log_moment(r_udelta_integrand(), 0, 6, trunc)
    groups["R(udelta)"] = {"rn_sq": ud.coeff_in(I66)}
    groups["pohofinale6"] = {"wbar_sq": total["wbar_sq"], "rn_sq": total["rn_sq"] + groups["R(udelta)"]["rn_sq"]}
    groups["moments"] = moments
    groups["udelta_moment"] = ud
    return groups


@dataclass
class LogFitGroup:
    """Regression of truncated integrals v(delta) ~ intercept + slope log(1/delta) + delta_coeff delta.

    The remainder after the logarithm is O(delta): the integrand's next
    order decays one power faster, so its tail beyond r/delta is O(delta).
    ``plain_slope`` is the two-parameter fit without that term, kept for
    comparison.
    """

    name: str
    exact_coeff: Fraction  # units w4 * I(6,6)
    exact_slope: float
    deltas: tuple
    values: tuple
    slope: float
    intercept: float
    delta_coeff: float
    plain_slope: float

    @property
    def rel_err(self) -> float:
        return abs(self.slope - self.exact_slope) / abs(self.exact_slope)

    @property
    def plain_rel_err(self) -> float:
        return abs(self.plain_slope - self.exact_slope) / abs(self.exact_slope)

    def model(self, delta):
        delta = np.asarray(delta, dtype=float)
        return self.intercept + self.slope * np.log(1.0 / delta) + self.delta_coeff * delta


def log_fit_groups() -> dict:
    ints = r_uu_integrands()
    groups = {
        "wbar_sq in R(U,U)": [ints["A4-1"]["wbar_sq"]],
        "rn_sq in R(U,U)": [ints["A1-1"]["rn_sq"], ints["A2+A3-1"]["rn_sq"], ints["A4-1"]["rn_sq"]],
        "rn_sq in R(U,delta^2 gamma)": [r_udelta_integrand()],
    }
    groups["rn_sq final"] = groups["rn_sq in R(U,U)"] + groups["rn_sq in R(U,delta^2 gamma)"]
    out = {}
    for name, profs in groups.items():
        total = R()
        for p in profs:
            total = total + p
        out[name] = total
    return out


def fit_log(deltas: Sequence[float], values: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares (intercept, slope, delta_coeff) for v = a + b log(1/delta) + c delta."""
    d = np.asarray(deltas, dtype=float)
    design = np.column_stack([np.ones_like(d), np.log(1.0 / d), d])
    coef, *_ = np.linalg.lstsq(design, np.asarray(values, dtype=float), rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def log_fit_n6(deltas: Sequence[float] = DEFAULT_DELTAS, r: float = 1.0,
               spec: Optional[QuadratureSpec] = None) -> list[LogFitGroup]:
    """Truncated cylinder integrals regressed against log(1/delta)."""
    if len(deltas) < 3:
        raise ValueError("the log fit needs at least three deltas")
    spec = spec or QuadratureSpec(tol=1e-10)
    w4 = float(omega_mp(4))
    i66 = float(mpmath.mpf(1) * _i_num(I66))
    out = []
    for name, prof in log_fit_groups().items():
        exact = truncated_log_moment(prof, 0, 6, TruncationSpec(F(1, 100))).coeff_in(I66)
        vals = []
        for d in deltas:
            L = r / d
            q = integrate_quadrant(prof, 4, spec, limits=(L, L))
            vals.append(q.value * w4)
        icpt, slope, cdelta = fit_log(deltas, vals)
        plain = float(np.polyfit(np.log(1.0 / np.asarray(deltas)), np.asarray(vals), 1)[0])
        out.append(LogFitGroup(name, exact, float(exact) * w4 * i66, tuple(deltas), tuple(vals), slope, icpt,
                               cdelta, plain))
    return out


def _i_num(sym: ISymbol):
    from .moments import i_mp

    return i_mp(sym, 64)


def suite_n6(deltas: Sequence[float] = DEFAULT_DELTAS, spec: Optional[QuadratureSpec] = None,
             fit: bool = True) -> tuple[list[VerificationReport], Optional[list[LogFitGroup]]]:
    ex = n6_exact()
    reports = []
    unit = "w4 * I(6,6)"
    for gid, parts in PRINTED_N6.items():
        ok = True
        comp_txt, exp_txt = [], []
        for basis, (c, syms) in parts.items():
            expected = MomentValue(LOG, tuple((s, c * v) for s, v in syms), 4)
            computed = ex["moments"][gid][basis]
            ok = ok and computed.equals(expected)
            comp_txt.append(f"{basis}: {computed}")
            exp_txt.append(f"{basis}: {expected}")
        reports.append(VerificationReport(
            lemma_id=gid, paper_ref=f"log(1/delta) coefficient of the {gid.rstrip('-1')} integrand, n = 6",
            expected="; ".join(exp_txt), expected_provenance=PAPER, computed_exact="; ".join(comp_txt),
            status=_status(ok)))
    ruu = ex["R(UU)"]
    exp = {"wbar_sq": F(8, 45), "rn_sq": F(-16, 15)}
    comp = {"wbar_sq": ruu["wbar_sq"], "rn_sq": ruu["rn_sq"]}
    reports.append(VerificationReport(
        lemma_id="R(UU)", paper_ref="R(U,U) log(1/delta) coefficient, n = 6",
        expected=combo(exp, unit, log=True), expected_provenance=PAPER,
        computed_exact=combo(comp, unit, log=True), status=_status(comp == exp)))
    reports.append(VerificationReport(
        lemma_id="Rdiv-cancellation", paper_ref="R_ninj,ij coefficient summed over A_1 .. A_4, n = 6",
        expected="0", expected_provenance=DERIVED, computed_exact=str(ruu["rn_div"]),
        status=_status(ruu["rn_div"] == 0),
        notes=("R_ninj,ji and R_ninj,ij are identified",)))
    ud = ex["R(udelta)"]["rn_sq"]
    b_form = MomentValue(LOG, ((ISymbol(12, 8), F(8, 35)), (ISymbol(14, 8), F(64, 35))), 4)
    reports.append(VerificationReport(
        lemma_id="R(udelta)", paper_ref="R(U, delta^2 gamma) + R(delta^2 gamma, U) log coefficient, n = 6",
        expected=combo({"rn_sq": F(24, 15)}, unit, log=True), expected_provenance=PAPER,
        computed_exact=combo({"rn_sq": ud}, unit, log=True),
        status=_status(ud == F(24, 15) and ex["udelta_moment"].equals(b_form)),
        notes=(f"moment {ex['udelta_moment']}, i.e. 8/35 (I(6,8) + 8 I(7,8))",
               "parameter-free correction term; untruncated the moment diverges")))
    fin = ex["pohofinale6"]
    exp = {"wbar_sq": F(8, 45), "rn_sq": F(8, 15)}
    reports.append(VerificationReport(
        lemma_id="pohofinale6", paper_ref="final Pohozaev sign bracket, n = 6",
        expected=combo(exp, unit, log=True), expected_provenance=PAPER,
        computed_exact=combo(fin, unit, log=True), status=_status(fin == exp),
        notes=(f"rn_sq: {ruu['rn_sq']} + {ud} = {fin['rn_sq']}",)))
    fits = None
    if fit:
        fits = log_fit_n6(deltas, spec=spec)
        worst = max(g.rel_err for g in fits)
        reports.append(VerificationReport(
            lemma_id="logfit-n6", paper_ref="regression of truncated integrals against log(1/delta), n = 6",
            expected="exact log coefficients within 1%", expected_provenance=DERIVED,
            computed_exact=", ".join(f"{g.name}: {g.exact_coeff}" for g in fits),
            status=_status(worst <= 0.01), computed_numeric=worst, rel_err=worst,
            notes=tuple(f"{g.name}: fitted slope {g.slope:.8g} vs exact {g.exact_slope:.8g} "
                        f"(rel {g.rel_err:.2e}; without the O(delta) term {g.plain_rel_err:.2e})" for g in fits)
            + ("model: a + b log(1/delta) + c delta; the remainder after the log is O(delta)",) + (f"deltas {', '.join(f'{d:g}' for d in deltas)}",)))
    return reports, fits


def coefficient_suite(n: int, b=None, deltas: Sequence[float] = DEFAULT_DELTAS,
                      spec: Optional[QuadratureSpec] = None) -> list[VerificationReport]:
    if n == 7:
        if b is not None:
            raise ValueError("b applies to n = 8 only")
        return suite_n7(spec)
    if n == 8:
        if b is None:
            raise ValueError("n = 8 needs the parameter b")
        return suite_n8(F(b), spec)
    if n == 6:
        if b is not None:
            raise ValueError("b applies to n = 8 only")
        return suite_n6(deltas, spec)[0]
    raise ValueError(f"coefficient suite exists for n = 6, 7, 8, not {n}")


# ---------------------------------------------------------------------------
# scan of the n = 8 parameter
# ---------------------------------------------------------------------------

def _sqrt_split(x: Fraction) -> tuple[Fraction, int]:
    """x = c^2 * m with m squarefree integer (x >= 0)."""
    num, den = x.numerator * x.denominator, x.denominator ** 2
    out, m, p = 1, num, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            out *= p
        p += 1
    return F(out, x.denominator), m


@dataclass(frozen=True)
class ScanResult:
    coeffs: tuple  # c0 + c1 b + c2 b^2
    rows: tuple  # (b, value, sign)
    vertex: Fraction
    vertex_value: Fraction
    value_at_minus2: Fraction
    roots_exact: tuple  # text
    roots: tuple  # floats, ascending

    def sign_text(self) -> str:
        return ",".join(s for _, _, s in self.rows)


SCAN_GRID = tuple(F(k, 2) for k in range(-10, 3))


def scan_b(grid: Sequence) -> ScanResult:
    if not grid:
        raise ValueError("empty grid")
    c = bracket8()
    rows = []
    for x in grid:
        v = poly_at(c, x)
        rows.append((F(x), v, "+" if v > 0 else "-" if v < 0 else "0"))
    c0, c1, c2 = c
    vertex = -c1 / (2 * c2)
    disc = c1 * c1 - 4 * c2 * c0
    roots_exact, roots = (), ()
    if disc >= 0:
        k, m = _sqrt_split(disc)
        centre = -c1 / (2 * c2)
        half = k / (2 * abs(c2))
        roots_exact = (f"{centre} - {half} * sqrt({m})", f"{centre} + {half} * sqrt({m})")
        roots = tuple(sorted(float(centre) + s * float(half) * math.sqrt(m) for s in (-1, 1)))
    return ScanResult(tuple(c), tuple(rows), vertex, poly_at(c, vertex), poly_at(c, -2), roots_exact, roots)


def scan_report(res: ScanResult) -> VerificationReport:
    ok = res.vertex == F(-50, 21) and res.value_at_minus2 == F(121, 432) and res.vertex_value > 0
    return VerificationReport(
        lemma_id="scan-b", paper_ref="sign of the n = 8 bracket as a function of b",
        expected="vertex -50/21 with positive value; 121/432 at b = -2", expected_provenance=DERIVED,
        computed_exact=f"vertex {res.vertex}, value {res.vertex_value}; at -2: {res.value_at_minus2}",
        status=_status(ok),
        notes=(f"positive for b in ({res.roots_exact[0]}, {res.roots_exact[1]})" if res.roots_exact else "no real roots",
               "signs on grid: " + res.sign_text(),
               "printed vertex value 625/1344 - 35/108 does not reproduce; exact value "
               f"{res.vertex_value}, sign unchanged"))


# ---------------------------------------------------------------------------
# flat Pohozaev identity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PohozaevFlatCase:
    n: int
    r: float
    metric: str = "euclidean"
    tau: Fraction = F(0)

    def __post_init__(self):
        if self.metric != "euclidean":
            raise ValueError("only the Euclidean case is evaluated")
        if self.tau != 0:
            raise ValueError("only the critical exponent (tau = 0) is evaluated")
        if self.n < 3 or not self.r > 0:
            raise ValueError("need n >= 3 and r > 0")

    @property
    def p(self) -> Fraction:
        return F(self.n, self.n - 2)

    def critical_coefficient(self) -> Fraction:
        return F(self.n - 1) / (self.p + 1) - F(self.n - 2, 2)


def pohozaev_bar(case: PohozaevFlatCase, spec: Optional[QuadratureSpec] = None) -> tuple[float, float, float]:
    """(P-bar, quadrature error, scale) for the bubble on the half-ball of radius r."""
    n, r = case.n, float(case.r)
    u = named.bubble(n)
    du = differentiate(u, "inv_rho_d_rho")
    ut_p = differentiate(u, "d_t")

    def pieces(th):
        rho, t = r * np.cos(th), r * np.sin(th)
        val = evaluate(u, rho, t)
        ur = rho * evaluate(du, rho, t)
        ut = evaluate(ut_p, rho, t)
        urad = np.cos(th) * ur + np.sin(th) * ut
        w = np.cos(th) ** (n - 2) * r ** (n - 1)
        return w * (n - 2) / 2 * val * urad, -w * r / 2 * (ur ** 2 + ut ** 2), w * r * urad ** 2

    spec = spec or QuadratureSpec(transform="tanh-sinh")
    main = integrate_interval(lambda th: sum(pieces(th)), 0.0, math.pi / 2, spec)
    size = integrate_interval(lambda th: sum(np.abs(x) for x in pieces(th)), 0.0, math.pi / 2, spec)
    omega = float(omega_mp(n - 2))
    circle = r * (n - 2) / float(case.p + 1) * r ** (n - 2) * (1 + r * r) ** (-(n - 1))
    value = omega * (main.value + circle)
    return value, omega * main.error, omega * (size.value + abs(circle))


def pohozaev_flat_check(case: PohozaevFlatCase, spec: Optional[QuadratureSpec] = None) -> VerificationReport:
    crit = case.critical_coefficient()
    value, err, scale = pohozaev_bar(case, spec)
    ok = crit == 0 and abs(value) <= 1e-8 * scale
    return VerificationReport(
        lemma_id="poho", paper_ref=f"P-bar(U, r) = P(U, r) for the flat bubble (n = {case.n}, r = {case.r:g})",
        expected="0", expected_provenance=DERIVED, computed_exact="P = 0",
        status=_status(ok), computed_numeric=value, numeric_error=err, abs_err=abs(value),
        rel_err=abs(value) / scale,
        notes=("P vanishes term by term: L - Delta = 0, h = 0, tau = 0, "
               f"critical coefficient (n-1)/(p+1) - (n-2)/2 = {crit}",
               f"P-bar by quadrature over the half-sphere plus the boundary circle, scale {scale:.3e}"))


# ---------------------------------------------------------------------------
# integral engine checks
# ---------------------------------------------------------------------------

def integral_engine_report() -> VerificationReport:
    from .moments import canonical_I, gamma_ratio, i_mp, walk_diagonal_first, walk_m_first

    syms = []
    for twice_m in range(1, 25):
        for alpha in range(0, 13):
            s = ISymbol(twice_m, alpha)
            if s.convergent:
                syms.append(s)
    confluent = True
    worst = 0.0
    by_class: dict = {}
    for s in syms:
        by_class.setdefault(s.lattice_class, []).append(s)
    for cls, members in by_class.items():
        base = members[0]
        for s in members:
            c1, c2, c3 = walk_m_first(s, base), walk_diagonal_first(s, base), gamma_ratio(s, base)
            confluent = confluent and c1 == c2 == c3
            c, b = canonical_I(s)
            with mpmath.workprec(120):
                ratio = mpmath.mpf(c.numerator) / c.denominator * i_mp(b, 100) / i_mp(s, 100)
            worst = max(worst, float(abs(ratio - 1)))
    t_ok = all(t_integral(k, m).coeff == F(math.factorial(k)) * F(math.factorial(m - k - 2), math.factorial(m - 1))
               for m in range(2, 16) for k in range(0, m - 1))
    t_div = all(t_integral(k, m).is_divergent for m in range(1, 16) for k in range(m - 1, m + 3) if k >= 0)
    ok = confluent and worst <= 1e-12 and t_ok and t_div
    return VerificationReport(
        lemma_id="Iam", paper_ref="recurrences for I_m^alpha and the t-integral closed form",
        expected="confluent recurrences; ratios to 1e-12; closed-form t-integrals", expected_provenance=PAPER,
        computed_exact=f"{len(syms)} symbols, confluence {'holds' if confluent else 'FAILS'}",
        status=_status(ok), computed_numeric=worst, rel_err=worst,
        notes=(f"t_integral checked against k! (m-k-2)!/(m-1)! for k < m <= 15: {'ok' if t_ok else 'FAIL'}",))


def symmetry_report(n: int, seeds: Sequence[int] = range(10), spec: Optional[QuadratureSpec] = None) -> VerificationReport:
    """Brute-force oracle for the five contraction identities."""
    f = Q(3 * n + 8) + Q(3 * n + 12, F(-2, 7))
    patterns = {
        "Sym1": (RN,), "Sym2": (RIEM,), "Sym3": (RN, RIEM), "Sym4": (RIEM, RIEM), "Sym5": (RN, RN),
    }
    worst_rel, worst_zero = 0.0, 0.0
    ok = True
    for seed in seeds:
        sample = random_curvature_sample(n, seed)
        for name, slots in patterns.items():
            pat = ContractionPattern(slots, restrict_boundary(f))
            red = reduce_contraction(pat, n)
            num = numeric_contract(pat, sample, spec)
            if red.is_zero():
                z = abs(num.value) / num.scale
                worst_zero = max(worst_zero, z)
                ok = ok and z <= 1e-9
            else:
                ev = red.evaluate(sample)
                rel = abs(ev - num.value) / abs(ev)
                worst_rel = max(worst_rel, rel)
                ok = ok and rel <= 1e-8
    return VerificationReport(
        lemma_id="Sym", paper_ref=f"curvature contraction identities, n = {n}",
        expected="symbolic reduction = brute force", expected_provenance=PAPER,
        computed_exact="Sym1-Sym4 -> 0; Sym5 -> 2/(n^2-1) R_ninj^2 int f |ybar|^4",
        status=_status(ok), computed_numeric=max(worst_rel, worst_zero), rel_err=worst_rel, abs_err=worst_zero,
        notes=(f"{len(list(seeds))} samples; worst relative {worst_rel:.1e}, worst zero test {worst_zero:.1e}",))


# ---------------------------------------------------------------------------
# full run
# ---------------------------------------------------------------------------

PDE_PLAN = [
    ("ProbBubble", (6, 7, 8)),
    ("Phi0", (5, 7, 8)), ("Phi1", (5, 7, 8)), ("Phi2", (5, 7, 8)),
    ("Phitilda0", (5, 7, 8)),
    ("beta", (5, 7)),
    ("Phitilda2", (5, 7, 8)), ("Phitilda1", (5, 7, 8)),
    ("Phi1e2", (5, 6, 7, 8)),
]


def pde_suite(ns: Optional[Iterable[int]] = None, grid: bool = True) -> list[VerificationReport]:
    keep = set(ns) if ns is not None else None
    out = []
    for lemma, dims in PDE_PLAN:
        for n in dims:
            if keep is None or n in keep:
                out.append(verify_pde(lemma, n, grid=grid))
        if lemma == "Phitilda1":
            for n in dims:
                if keep is None or n in keep:
                    out.append(verify_printed_phitilda1(n))
    return out


def run_all(ns: Optional[Sequence[int]] = None, b=F(-2), deltas=DEFAULT_DELTAS, seed: int = 0,
            spec: Optional[QuadratureSpec] = None, extras: Optional[dict] = None) -> list[VerificationReport]:
    """Every suite, in source order; ``ns`` filters by dimension.

    When ``extras`` is a dict it receives the scan result ("scan") and the
    n = 6 regression groups ("logfit") for plotting.
    """
    ns = tuple(ns) if ns else (5, 6, 7, 8)
    pdes = pde_suite(ns)
    # bubble, symmetry identities, integral engine, flat Pohozaev
    out = [r for r in pdes if r.lemma_id == "ProbBubble"]
    for n in ns:
        if n >= 6:
            out.append(symmetry_report(n, range(seed, seed + 10), spec))
    out.append(integral_engine_report())
    for n in ns:
        if n >= 6:
            for r in (1.0, 2.0):
                out.append(pohozaev_flat_check(PohozaevFlatCase(n, r)))
    for n in ns:
        out.extend(structural_checks(n, seed, spec))
    out.extend(r for r in pdes if r.lemma_id != "ProbBubble")
    if 7 in ns:
        out.extend(suite_n7(spec))
    if 8 in ns:
        out.extend(suite_n8(b, spec))
        scan = scan_b(SCAN_GRID)
        out.append(scan_report(scan))
        if extras is not None:
            extras["scan"] = scan
    if 6 in ns:
        reports, fits = suite_n6(deltas, spec)
        out.extend(reports)
        if extras is not None:
            extras["logfit"] = fits
    return out
