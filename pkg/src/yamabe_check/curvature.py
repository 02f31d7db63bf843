"""Contractions of curvature symbols with boundary monomials.

The boundary variables are ybar in R^d with d = n - 1.  Three tensor slots
occur: R_ninj y_i y_j (``RN``), the Riemann quartic (``RIEM``) and the
scalar divergence R_ninj,ij (``RN_DERIV``).  Symbolic reduction lands on the
basis {|Wbar|^2, R_ninj^2, R_ninj,ij}; a concrete random tensor and the
quadrature oracle give an independent brute-force value.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .moments import FINITE, MomentValue, boundary_moment, halfspace_moment
from .profiles import RadialProfile, restrict_boundary
from .quadrature import QuadratureSpec, integrate_quadrant, integrate_ray

RN = "RN"
RIEM = "RIEM"
RN_DERIV = "RN_DERIV"
SLOT_DEGREE = {RN: 2, RIEM: 4, RN_DERIV: 0}

BASIS = ("wbar_sq", "rn_sq", "rn_div")

BOUNDARY = "boundary"
HALFSPACE = "halfspace"


class UnsupportedPattern(ValueError):
    pass


@dataclass(frozen=True)
class ContractionPattern:
    """Product of tensor slots, each contracted with boundary coordinates, under a radial weight."""

    slots: tuple
    weight: RadialProfile
    domain: str = BOUNDARY

    def __post_init__(self):
        slots = tuple(self.slots)
        object.__setattr__(self, "slots", slots)
        for s in slots:
            if s not in SLOT_DEGREE:
                raise ValueError(f"unknown slot {s!r}")
        if self.domain not in (BOUNDARY, HALFSPACE):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.domain == BOUNDARY and self.weight.max_t_deg:
            raise ValueError("boundary weight must be restricted to t = 0")

    @property
    def degree(self) -> int:
        return sum(SLOT_DEGREE[s] for s in self.slots)


@dataclass(frozen=True)
class CurvatureScalar:
    """Coefficients over {wbar_sq, rn_sq, rn_div}, each a MomentValue."""

    parts: tuple = ()

    def __post_init__(self):
        merged: dict = {}
        for name, val in self.parts:
            if name not in BASIS:
                raise ValueError(f"unknown basis symbol {name!r}")
            merged[name] = merged[name] + val if name in merged else val
        parts = tuple((b, merged[b]) for b in BASIS if b in merged and not merged[b].is_zero())
        object.__setattr__(self, "parts", parts)

    @classmethod
    def zero(cls) -> "CurvatureScalar":
        return cls(())

    def get(self, name: str) -> MomentValue:
        return dict(self.parts).get(name, MomentValue.zero())

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other: "CurvatureScalar") -> "CurvatureScalar":
        return CurvatureScalar(self.parts + other.parts)

    def scale(self, c) -> "CurvatureScalar":
        return CurvatureScalar(tuple((b, v.scale(c)) for b, v in self.parts))

    def evaluate(self, sample: "ConcreteCurvatureSample") -> float:
        total = 0.0
        for name, val in self.parts:
            total += float(sample.scalar(name)) * val.numeric()
        return total

    def to_string(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join(f"[{v}] * {b}" for b, v in self.parts)

    def __str__(self) -> str:
        return self.to_string()


def _moment(weight: RadialProfile, extra: int, n: int, domain: str) -> MomentValue:
    if domain == BOUNDARY:
        return boundary_moment(weight, extra, n)
    return halfspace_moment(weight, extra, n)


def reduce_contraction(pat: ContractionPattern, n: int) -> CurvatureScalar:
    """Symbolic value of the contracted integral.

    Any Riemann quartic vanishes pointwise (antisymmetry); a single R_ninj
    pair integrates to zero (tracelessness); two pairs give
    2/(n^2-1) R_ninj^2 int f |ybar|^4; a lone derivative slot is the scalar
    R_ninj,ij times int f.
    """
    if n < 5:
        raise ValueError("n must be at least 5")
    slots = pat.slots
    if RIEM in slots and all(s in (RN, RIEM) for s in slots):
        return CurvatureScalar.zero()
    if slots == (RN,):
        return CurvatureScalar.zero()
    if slots == (RN, RN):
        m = _moment(pat.weight, 4, n, pat.domain).scale(Fraction(2, n * n - 1))
        return CurvatureScalar((("rn_sq", m),))
    if slots == (RN_DERIV,):
        return CurvatureScalar((("rn_div", _moment(pat.weight, 0, n, pat.domain)),))
    raise UnsupportedPattern(f"no reduction rule for slots {slots}")


# ---------------------------------------------------------------------------
# concrete samples
# ---------------------------------------------------------------------------

def _rand_sym(rng: random.Random, d: int) -> list[list[Fraction]]:
    m = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            m[i][j] = m[j][i] = Fraction(rng.randint(-9, 9))
    return m


def kulkarni_nomizu(h, k, d: int) -> np.ndarray:
    out = np.empty((d, d, d, d), dtype=object)
    for a, b, c, e in itertools.product(range(d), repeat=4):
        out[a, b, c, e] = h[a][c] * k[b][e] + h[b][e] * k[a][c] - h[a][e] * k[b][c] - h[b][c] * k[a][e]
    return out


def weyl_part(riem: np.ndarray, d: int) -> np.ndarray:
    """Remove all traces of an algebraic curvature tensor (metric = identity)."""
    ric = [[sum(riem[a, c, b, c] for c in range(d)) for b in range(d)] for a in range(d)]
    scal = sum(ric[a][a] for a in range(d))
    g = [[Fraction(int(a == b)) for b in range(d)] for a in range(d)]
    out = riem - kulkarni_nomizu(ric, g, d) * Fraction(1, d - 2)
    out = out + kulkarni_nomizu(g, g, d) * (scal / (2 * (d - 1) * (d - 2)))
    return out


@dataclass(frozen=True)
class ConcreteCurvatureSample:
    n: int
    seed: int
    rn: np.ndarray = field(compare=False)  # R_ninj, d x d
    riem: np.ndarray = field(compare=False)  # Rbar_abce, d^4, indices in the order written
    rn_deriv: np.ndarray = field(compare=False)  # R_ninj,kl, d^4

    @property
    def d(self) -> int:
        return self.n - 1

    def scalar(self, name: str) -> Fraction:
        d = self.d
        if name == "rn_sq":
            return sum((self.rn[i, j] ** 2 for i in range(d) for j in range(d)), Fraction(0))
        if name == "wbar_sq":
            return sum((v * v for v in self.riem.flat), Fraction(0))
        if name == "rn_div":
            return sum((self.rn_deriv[i, j, i, j] for i in range(d) for j in range(d)), Fraction(0))
        raise KeyError(name)

    def trace_residual(self) -> Fraction:
        d = self.d
        worst = abs(sum((self.rn[i, i] for i in range(d)), Fraction(0)))
        for b, e in itertools.product(range(d), repeat=2):
            worst = max(worst, abs(sum((self.riem[a, b, a, e] for a in range(d)), Fraction(0))))
        return worst

    def bianchi_residual(self) -> Fraction:
        r = self.riem
        worst = Fraction(0)
        for a, b, c, e in itertools.product(range(self.d), repeat=4):
            worst = max(worst, abs(r[a, b, c, e] + r[a, c, e, b] + r[a, e, b, c]))
        return worst

    def symmetry_residual(self) -> Fraction:
        r = self.riem
        worst = Fraction(0)
        for a, b, c, e in itertools.product(range(self.d), repeat=4):
            worst = max(worst, abs(r[a, b, c, e] + r[b, a, c, e]), abs(r[a, b, c, e] + r[a, b, e, c]),
                        abs(r[a, b, c, e] - r[c, e, a, b]))
        for i, j in itertools.product(range(self.d), repeat=2):
            worst = max(worst, abs(self.rn[i, j] - self.rn[j, i]))
        return worst


def random_curvature_sample(n: int, seed: int) -> ConcreteCurvatureSample:
    """Exact rational sample obeying the trace axioms; deterministic in seed."""
    if n < 5:
        raise ValueError("n must be at least 5")
    d = n - 1
    rng = random.Random(seed)
    rn = _rand_sym(rng, d)
    tr = sum(rn[i][i] for i in range(d)) / d
    for i in range(d):
        rn[i][i] -= tr
    riem = kulkarni_nomizu(_rand_sym(rng, d), _rand_sym(rng, d), d)
    riem = riem + kulkarni_nomizu(_rand_sym(rng, d), _rand_sym(rng, d), d)
    riem = weyl_part(riem, d)
    deriv = np.empty((d, d, d, d), dtype=object)
    for i, j, k, l in itertools.product(range(d), repeat=4):
        if i <= j:
            deriv[i, j, k, l] = deriv[j, i, k, l] = Fraction(rng.randint(-9, 9))
    return ConcreteCurvatureSample(n, seed, np.array(rn, dtype=object), riem, deriv)


# ---------------------------------------------------------------------------
# brute-force numeric contraction
# ---------------------------------------------------------------------------

Poly = dict  # exponent tuple -> Fraction


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _tensor_poly(coeffs: dict, d: int) -> Poly:
    out: Poly = {}
    for idx, c in coeffs.items():
        e = [0] * d
        for i in idx:
            e[i] += 1
        e = tuple(e)
        out[e] = out.get(e, Fraction(0)) + c
    return {e: c for e, c in out.items() if c != 0}


def slot_polynomial(slot: str, sample: ConcreteCurvatureSample) -> Poly:
    """The slot's contraction with boundary coordinates, expanded exactly.

    The coordinate monomial is symmetric, so every index order of the
    Riemann slot (ikjl, ijkl, t tau s p) gives the same quartic.
    """
    d = sample.d
    if slot == RN:
        return _tensor_poly({(i, j): sample.rn[i, j] for i in range(d) for j in range(d)}, d)
    if slot == RIEM:
        coeffs = {}
        for a, b, c, e in itertools.product(range(d), repeat=4):
            coeffs[(a, b, c, e)] = sample.riem[a, b, c, e]
        return _tensor_poly(coeffs, d)
    if slot == RN_DERIV:
        return {(0,) * d: sample.scalar("rn_div")}
    raise ValueError(slot)


def pattern_polynomial(pat: ContractionPattern, sample: ConcreteCurvatureSample) -> Poly:
    poly: Poly = {(0,) * sample.d: Fraction(1)}
    for slot in pat.slots:
        poly = _poly_mul(poly, slot_polynomial(slot, sample))
    return poly


def sphere_monomial(exps: tuple) -> float:
    """int over S^{d-1} of prod y_i^e_i."""
    if any(e % 2 for e in exps):
        return 0.0
    d = len(exps)
    with mpmath.workprec(80):
        v = 2 * mpmath.fprod(mpmath.gamma(mpmath.mpf(e + 1) / 2) for e in exps)
        v /= mpmath.gamma(mpmath.mpf(sum(exps) + d) / 2)
    return float(v)


def radial_integral(weight: RadialProfile, rho_pow: int, domain: str, spec: Optional[QuadratureSpec] = None):
    if domain == BOUNDARY:
        return integrate_ray(weight, rho_pow, spec)
    return integrate_quadrant(weight, rho_pow, spec)


def monomial_moment(weight: RadialProfile, exps: tuple, domain: str = BOUNDARY,
                    spec: Optional[QuadratureSpec] = None) -> float:
    """int f(|ybar|, t) ybar^exps over R^d (or the half-space), numerically."""
    s = sphere_monomial(exps)
    if s == 0.0:
        return 0.0
    r = radial_integral(weight, sum(exps) + len(exps) - 1, domain, spec)
    return s * r.value


@dataclass(frozen=True)
class NumericContraction:
    value: float
    scale: float


def numeric_contract(pat: ContractionPattern, sample: ConcreteCurvatureSample,
                     spec: Optional[QuadratureSpec] = None) -> NumericContraction:
    """Brute-force value: exact polynomial expansion, exact sphere moments, quadrature radially.

    ``scale`` is sum |c_alpha| S_alpha int |f| r^..., the natural size for zero tests.
    """
    if sample.n < 5:
        raise ValueError("n must be at least 5")
    if _moment(pat.weight, pat.degree, sample.n, pat.domain).is_divergent:
        raise ValueError("divergent weight")
    poly = pattern_polynomial(pat, sample)
    by_degree: dict = {}
    for e, c in sorted(poly.items()):
        s = sphere_monomial(e)
        if s:
            by_degree.setdefault(sum(e), []).append((c, s))
    total, scale = [], []
    for deg, items in sorted(by_degree.items()):
        radial = radial_integral(pat.weight, deg + sample.d - 1, pat.domain, spec)
        radial_abs = radial_integral(_abs_profile(pat.weight), deg + sample.d - 1, pat.domain, spec)
        for c, s in items:
            total.append(float(c) * s * radial.value)
            scale.append(abs(float(c)) * s * radial_abs.value)
    value = math.fsum(total)
    size = math.fsum(scale)
    if not size:
        # every coefficient cancelled exactly; size the test by the weight alone
        size = sphere_monomial((0,) * sample.d) * radial_integral(
            _abs_profile(pat.weight), pat.degree + sample.d - 1, pat.domain, spec).value
    return NumericContraction(value, size)


def _abs_profile(p: RadialProfile) -> RadialProfile:
    return RadialProfile({k: abs(c) for k, c in p.items()})


def reduced_numeric(red: CurvatureScalar, sample: ConcreteCurvatureSample) -> float:
    return red.evaluate(sample)
