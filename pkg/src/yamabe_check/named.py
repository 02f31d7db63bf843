"""Named explicit functions of the half-space problem.

Each function is a sum of harmonic factor x radial profile pairs, together
with the right-hand side it is claimed to satisfy, -Delta(body) = rhs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .profiles import HarmonicFactor, RadialProfile

F = Fraction
R = RadialProfile
SCALAR = HarmonicFactor.SCALAR
RN_PAIR = HarmonicFactor.RN_PAIR
RIEM_QUAD = HarmonicFactor.RIEM_QUAD

NAMES = ("U", "Phi0", "Phi1", "Phi2", "PhiTilde0", "PhiTilde1", "PhiTilde2", "A7", "A8", "BetaKL")
PARAM_NAMES = ("a1", "a2", "a1p", "a2p", "b")
# free parameters are sampled from this list when checking "for any a" claims
PARAM_SAMPLES = (F(0), F(1), F(-1), F(3, 2), F(-2))

PRINTED = "printed"
CORRECTED = "corrected"


class ExcludedCombination(ValueError):
    pass


@dataclass(frozen=True)
class NamedFunction:
    id: str
    n: int
    params: tuple
    body: tuple  # ((HarmonicFactor, RadialProfile), ...)
    rhs: tuple  # same shape: -Delta(body) is claimed to equal this
    variant: str = CORRECTED
    notes: tuple = field(default=(), compare=False)

    def param(self, name: str) -> Fraction:
        return dict(self.params).get(name, F(0))

    def radial(self, factor: HarmonicFactor = None) -> RadialProfile:
        """The profile multiplying ``factor`` (the only factor when omitted)."""
        if factor is None:
            if len(self.body) != 1:
                raise ValueError(f"{self.id} has several components")
            return self.body[0][1]
        for f, p in self.body:
            if f == factor:
                return p
        return RadialProfile()


def Q(s: int, c=1) -> RadialProfile:
    """c * Q^(-s/2)."""
    return R.q_power(s, c)


def one_plus_t(power: int = 1) -> RadialProfile:
    return R.t_poly([1, 1]) ** power


def _params(params: Optional[Mapping]) -> dict:
    out = {}
    for k, v in (params or {}).items():
        if k not in PARAM_NAMES:
            raise ValueError(f"unknown parameter {k!r}")
        out[k] = F(v)
    return out


def _nonzero(p: dict, *names) -> bool:
    return any(p.get(k, 0) != 0 for k in names)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ExcludedCombination(msg)


def _musso_dims(name: str, n: int) -> None:
    _require(n == 5 or n >= 7, f"{name} is defined for n = 5 or n >= 7, got n = {n}")


# ---------------------------------------------------------------------------
# radial building blocks
# ---------------------------------------------------------------------------

def bubble(n: int) -> RadialProfile:
    return Q(n - 2)


def phi0(n: int, a1=0, a2=0) -> RadialProfile:
    return Q(n - 6, F(1, 4 * (n - 6))) + Q(n - 2, a1) + R.constant(a2)


def phi1(n: int, a1=0) -> RadialProfile:
    return (Q(n - 4, F(1, 4 * (n - 4))) + Q(n, a1)) * one_plus_t()


def phi2(n: int, a2=0, a2p=0) -> RadialProfile:
    return Q(n - 4, F(1, 2 * (n - 4))) + Q(n - 2, a2) + R.constant(a2p)


def phi_tilde0(n: int, a1=0, a2=0, branch: Optional[str] = None) -> RadialProfile:
    branch = branch or ("log" if n == 8 else "power")
    if branch == "power":
        _require(n != 8, "the power branch has a 1/(n-8) pole at n = 8")
        return Q(n - 8, F(1, 6 * (n - 8))) + Q(n - 2, a1) + R.constant(a2)
    if branch == "log":
        _require(n == 8, "the log branch is the n = 8 case only")
        return R.monomial(F(-1, 12), log=1) + Q(6, a1) + R.constant(a2)
    raise ValueError(f"unknown branch {branch!r}")


def a_profile(n: int, a1=0, a1p=0, a2p=0, variant: str = CORRECTED) -> RadialProfile:
    """Radial part of the R_ninj y_i y_j correction term."""
    base = Q(n - 2, F(1, 12)) + R.t_poly([1, -1, 1]) * Q(n, F(n - 2, 6))
    out = base
    if a1:
        c = F(a1) * F(n * (n * n - 4), (n - 4) * (n - 6))
        if variant == PRINTED:
            quad = R.t_poly([1, 0, 1])  # 1 + t^2 as printed
        else:
            quad = one_plus_t(2)
        out = out + (quad * Q(n + 6, n + 4) - Q(n + 4)).scale(c)
    if a1p:
        second = Q(n + 4, 2 * n * (n + 2))
        if variant != PRINTED:
            second = second * one_plus_t()
        out = out + (Q(n + 2, F(n * (n - 2), n - 4)) - second).scale(a1p)
    if a2p:
        out = out + Q(n + 2, F(a2p) * n * (n - 2))
    return out


def a8_profile(b) -> RadialProfile:
    return Q(6, F(1, 12)) + R.t_poly([1, -1, 1]) * Q(8) + Q(10, b)


def phi_tilde2_profile(n: int, a1=0) -> RadialProfile:
    """Radial part multiplying the Riemann quartic (the 1/3 included)."""
    out = Q(n, F(n - 2, 6))
    if a1:
        out = out + Q(n + 6, F(a1) * F(n * (n * n - 4) * (n + 4), (n - 6) * (n - 4)))
    return out.scale(F(1, 3))


def rhs_phidef1(n: int) -> RadialProfile:
    """Radial part of R_ninj t^2 d_ij U after removing the trace term."""
    return R.monomial(n * (n - 2), t=2, s=n + 2)


def rhs_phidef2(n: int) -> RadialProfile:
    return Q(n + 2, F(n * (n - 2), 3))


# ---------------------------------------------------------------------------
# constructor
# ---------------------------------------------------------------------------

def build_named(id: str, n: int, params: Optional[Mapping] = None, variant: str = PRINTED,
                branch: Optional[str] = None) -> NamedFunction:
    """Build a named function; ``variant`` selects printed or corrected coefficients.

    Only the a1 and a1' terms of PhiTilde1 differ between the two variants.
    """
    if id not in NAMES:
        raise ValueError(f"unknown function {id!r}")
    if n < 5:
        raise ExcludedCombination("n must be at least 5")
    if variant not in (PRINTED, CORRECTED):
        raise ValueError(f"unknown variant {variant!r}")
    p = _params(params)
    notes: list[str] = []
    if id == "U":
        body = ((SCALAR, bubble(n)),)
        rhs = ((SCALAR, R()),)
    elif id == "Phi0":
        _musso_dims(id, n)
        body = ((SCALAR, phi0(n, p.get("a1", 0), p.get("a2", 0))),)
        rhs = ((SCALAR, Q(n - 4)),)
    elif id == "Phi1":
        _musso_dims(id, n)
        body = ((SCALAR, phi1(n, p.get("a1", 0))),)
        rhs = ((SCALAR, one_plus_t() * Q(n - 2)),)
    elif id == "Phi2":
        _musso_dims(id, n)
        body = ((SCALAR, phi2(n, p.get("a2", 0), p.get("a2p", 0))),)
        rhs = ((SCALAR, Q(n - 2)),)
    elif id == "PhiTilde0":
        body = ((SCALAR, phi_tilde0(n, p.get("a1", 0), p.get("a2", 0), branch)),)
        rhs = ((SCALAR, Q(n - 6)),)
    elif id == "PhiTilde1":
        if n == 6:
            _require(not _nonzero(p, "a1", "a1p", "a2p"), "at n = 6 only the parameter-free form is defined")
        ap = a_profile(n, p.get("a1", 0), p.get("a1p", 0), p.get("a2p", 0), variant)
        body = ((RN_PAIR, ap),)
        rhs = ((RN_PAIR, rhs_phidef1(n)),)
        if variant == PRINTED and _nonzero(p, "a1", "a1p"):
            notes.append("printed a1/a1' terms are not harmonic; the corrected forms use (1+t)^2 and (1+t)")
    elif id == "PhiTilde2":
        if n == 6:
            _require(not _nonzero(p, "a1"), "the a1 term has a 1/(n-6) pole")
        body = ((RIEM_QUAD, phi_tilde2_profile(n, p.get("a1", 0))),)
        rhs = ((RIEM_QUAD, rhs_phidef2(n)),)
        notes.append("quartic contracted as Rbar_ikjl y_i y_j y_k y_l")
    elif id == "A7":
        _require(n == 7, "A7 is the n = 7 profile")
        body = ((RN_PAIR, a_profile(7)),)
        rhs = ((RN_PAIR, rhs_phidef1(7)),)
    elif id == "A8":
        _require(n == 8, "A8 is the n = 8 profile")
        body = ((RN_PAIR, a8_profile(p.get("b", 0))),)
        rhs = ((RN_PAIR, rhs_phidef1(8)),)
    else:  # BetaKL
        _musso_dims(id, n)
        t0 = phi_tilde0(n, p.get("a1", 0), p.get("a2", 0))
        p0 = phi0(n, p.get("a1", 0), p.get("a2", 0))
        from .profiles import differentiate

        d1 = differentiate(t0, "inv_rho_d_rho")
        d2 = differentiate(d1, "inv_rho_d_rho")
        c = F(1, (n - 6) * (n - 4))
        # beta_kl = y_k y_l P + delta_kl S
        pair = d2.scale(c)
        diag = d1.scale(c) + p0.scale(F(1, n - 4))
        trace = R.rho_sq() * pair + diag.scale(n - 1)
        body = ((RN_PAIR, pair), (SCALAR, trace))
        u = bubble(n)
        rhs = ((RN_PAIR, u), (SCALAR, R.rho_sq() * u))
        notes.append("checked on the traceless part (contracted with a traceless T_kl) and on the trace")
    return NamedFunction(id, n, tuple(sorted(p.items())), body, rhs, variant, tuple(notes))
