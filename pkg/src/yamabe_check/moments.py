"""Exact moments of radial profiles.

Every integral is reduced to a rational multiple of ``omega_{n-2} * I_m^alpha``
with ``I_m^alpha = int_0^oo s^alpha (1+s^2)^(-m) ds``.  Half-space integrals
factor through the substitution ``rho = (1+t) u``:

    int_0^oo int_0^oo rho^p t^k Q^(-m) drho dt
        = int_0^oo t^k (1+t)^(p+1-2m) dt * I_m^p .
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import mpmath

from .profiles import RadialProfile

FINITE = "finite"
DIVERGENT = "divergent"
LOG = "log_asymptotic"


class DivergentSymbol(ValueError):
    pass


class PolynomialDivergence(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ISymbol:
    """``I_m^alpha`` with ``m = twice_m / 2``."""

    twice_m: int
    alpha: int

    def __post_init__(self):
        if self.twice_m <= 0 or self.alpha < 0:
            raise ValueError(f"bad I symbol ({self.twice_m}/2, {self.alpha})")

    @classmethod
    def of(cls, m, alpha: int) -> "ISymbol":
        m = Fraction(m)
        if (2 * m).denominator != 1:
            raise ValueError(f"m must be a half-integer, got {m}")
        return cls(int(2 * m), alpha)

    @property
    def m(self) -> Fraction:
        return Fraction(self.twice_m, 2)

    @property
    def convergent(self) -> bool:
        return self.alpha + 1 < self.twice_m

    def check(self) -> "ISymbol":
        if not self.convergent:
            raise DivergentSymbol(f"{self} diverges (needs alpha + 1 < 2m)")
        return self

    @property
    def lattice_class(self) -> tuple[int, int]:
        return (self.twice_m % 2, self.alpha % 2)

    def __str__(self) -> str:
        m = self.m
        ms = str(m.numerator) if m.denominator == 1 else f"{m.numerator}/{m.denominator}"
        return f"I({ms},{self.alpha})"

    @classmethod
    def parse(cls, text: str) -> "ISymbol":
        body = text.strip()
        if not (body.startswith("I(") and body.endswith(")")):
            raise ValueError(f"not an I symbol: {text!r}")
        m, alpha = body[2:-1].split(",")
        return cls.of(Fraction(m), int(alpha))


# Reference symbols the paper states its constants against; integer-m
# classes are normalized to these, half-integer classes to the lattice minimum.
PREFERRED_BASES = {
    (0, 1): ISymbol(14, 9),  # I_7^9
    (0, 0): ISymbol(16, 10),  # I_8^10
    (1, 0): ISymbol(3, 0),  # I_{3/2}^0
    (1, 1): ISymbol(3, 1),  # I_{3/2}^1
}


# ---------------------------------------------------------------------------
# the three recurrences, each returning r with I(src) = r * I(dst)
# ---------------------------------------------------------------------------

def rec_diag(sym: ISymbol) -> Fraction:
    """I_m^a = 2m/(a+1) I_{m+1}^{a+2}."""
    sym.check()
    return Fraction(sym.twice_m, sym.alpha + 1)


def rec_m(sym: ISymbol) -> Fraction:
    """I_m^a = 2m/(2m-a-1) I_{m+1}^a."""
    sym.check()
    return Fraction(sym.twice_m, sym.twice_m - sym.alpha - 1)


def rec_alpha(sym: ISymbol) -> Fraction:
    """I_m^a = (2m-a-3)/(a+1) I_m^{a+2}, valid for a + 3 < 2m."""
    if not sym.alpha + 3 < sym.twice_m:
        raise DivergentSymbol(f"alpha step from {sym} leaves the convergent range")
    return Fraction(sym.twice_m - sym.alpha - 3, sym.alpha + 1)


def _same_class(src: ISymbol, dst: ISymbol) -> None:
    if src.lattice_class != dst.lattice_class:
        raise ValueError(f"{src} and {dst} lie in different recurrence classes")


def walk_m_first(src: ISymbol, dst: ISymbol) -> Fraction:
    """Raise m, shift alpha at fixed m, lower m."""
    src.check()
    dst.check()
    _same_class(src, dst)
    c = Fraction(1)
    cur = src
    top = max(src.twice_m, dst.twice_m, max(src.alpha, dst.alpha) + 4)
    top += top % 2 != src.twice_m % 2
    while cur.twice_m < top:
        c *= rec_m(cur)
        cur = ISymbol(cur.twice_m + 2, cur.alpha)
    while cur.alpha < dst.alpha:
        c *= rec_alpha(cur)
        cur = ISymbol(cur.twice_m, cur.alpha + 2)
    while cur.alpha > dst.alpha:
        lower = ISymbol(cur.twice_m, cur.alpha - 2)
        c /= rec_alpha(lower)
        cur = lower
    while cur.twice_m > dst.twice_m:
        lower = ISymbol(cur.twice_m - 2, cur.alpha)
        c /= rec_m(lower)
        cur = lower
    assert cur == dst
    return c


def walk_diagonal_first(src: ISymbol, dst: ISymbol) -> Fraction:
    """Move alpha along the diagonal recurrence, then fix m."""
    src.check()
    dst.check()
    _same_class(src, dst)
    c = Fraction(1)
    cur = src
    while cur.alpha < dst.alpha:
        c *= rec_diag(cur)
        cur = ISymbol(cur.twice_m + 2, cur.alpha + 2)
    while cur.alpha > dst.alpha:
        lower = ISymbol(cur.twice_m - 2, cur.alpha - 2)
        c /= rec_diag(lower)
        cur = lower
    while cur.twice_m < dst.twice_m:
        c *= rec_m(cur)
        cur = ISymbol(cur.twice_m + 2, cur.alpha)
    while cur.twice_m > dst.twice_m:
        lower = ISymbol(cur.twice_m - 2, cur.alpha)
        c /= rec_m(lower)
        cur = lower
    assert cur == dst
    return c


def gamma_ratio(src: ISymbol, dst: ISymbol) -> Fraction:
    """Exact I(src)/I(dst) from I_m^a = Gamma(b) Gamma(m-b) / (2 Gamma(m)), b = (a+1)/2.

    Independent of the recurrences: only Gamma(x+1) = x Gamma(x) is used.
    """
    src.check()
    dst.check()
    _same_class(src, dst)

    def gamma_shift(x: Fraction, steps: int) -> Fraction:
        # Gamma(x + steps) / Gamma(x)
        r = Fraction(1)
        if steps >= 0:
            for j in range(steps):
                r *= x + j
        else:
            for j in range(1, -steps + 1):
                r /= x - j
        return r

    b_src = Fraction(src.alpha + 1, 2)
    b_dst = Fraction(dst.alpha + 1, 2)
    return (
        gamma_shift(b_dst, int(b_src - b_dst))
        * gamma_shift(dst.m - b_dst, int((src.m - b_src) - (dst.m - b_dst)))
        / gamma_shift(dst.m, int(src.m - dst.m))
    )


@lru_cache(maxsize=None)
def canonical_I(sym: ISymbol, base: Optional[ISymbol] = None) -> tuple[Fraction, ISymbol]:
    """Return (c, base) with I(sym) = c * I(base).

    Without ``base`` the class's preferred symbol is used.
    """
    sym.check()
    if base is None:
        base = PREFERRED_BASES[sym.lattice_class]
    if sym == base:
        return Fraction(1), base
    return walk_m_first(sym, base), base


def i_numeric(sym: ISymbol, precision: int = 53) -> float:
    return float(i_mp(sym, precision))


def i_mp(sym: ISymbol, precision: int = 53):
    sym.check()
    with mpmath.workprec(precision + 16):
        b = mpmath.mpf(sym.alpha + 1) / 2
        val = mpmath.beta(b, mpmath.mpf(sym.twice_m) / 2 - b) / 2
    return +val


def omega_mp(k: int, precision: int = 53):
    """Surface area of the unit sphere S^k in R^(k+1)."""
    with mpmath.workprec(precision + 16):
        val = 2 * mpmath.pi ** (mpmath.mpf(k + 1) / 2) / mpmath.gamma(mpmath.mpf(k + 1) / 2)
    return +val


def omega_numeric(k: int) -> float:
    return float(omega_mp(k))


# ---------------------------------------------------------------------------
# moment values
# ---------------------------------------------------------------------------

def _part_key(item):
    sym, _ = item
    return (0, 0, 0) if sym is None else (1, sym.twice_m, sym.alpha)


@dataclass(frozen=True)
class MomentValue:
    """A rational combination of ``omega_{k} * I`` symbols.

    ``parts`` pairs symbols (``None`` for a pure rational) with coefficients;
    ``omega`` is the sphere index k of the ``omega_k`` factor, or None.
    For ``log_asymptotic`` values the parts give the coefficient of log(1/delta).
    """

    kind: str
    parts: tuple = ()
    omega: Optional[int] = None
    note: str = field(default="", compare=False)

    def __post_init__(self):
        merged: dict = {}
        for sym, c in self.parts:
            merged[sym] = merged.get(sym, Fraction(0)) + Fraction(c)
        parts = tuple(sorted(((s, c) for s, c in merged.items() if c != 0), key=_part_key))
        object.__setattr__(self, "parts", parts if self.kind != DIVERGENT else ())

    # -- constructors ---------------------------------------------------------
    @classmethod
    def scalar(cls, c) -> "MomentValue":
        return cls(FINITE, ((None, Fraction(c)),))

    @classmethod
    def divergent(cls, omega: Optional[int] = None, note: str = "") -> "MomentValue":
        return cls(DIVERGENT, (), omega, note)

    @classmethod
    def zero(cls, kind: str = FINITE, omega: Optional[int] = None) -> "MomentValue":
        return cls(kind, (), omega)

    # -- single-part view -----------------------------------------------------
    @property
    def is_divergent(self) -> bool:
        return self.kind == DIVERGENT

    @property
    def carries_omega(self) -> bool:
        return self.omega is not None

    @property
    def coeff(self) -> Fraction:
        if not self.parts:
            return Fraction(0)
        if len(self.parts) != 1:
            raise ValueError(f"{self} has several basis symbols; rebase first")
        return self.parts[0][1]

    @property
    def basis(self) -> Optional[ISymbol]:
        if len(self.parts) != 1:
            raise ValueError(f"{self} has no single basis symbol")
        return self.parts[0][0]

    def is_zero(self) -> bool:
        return self.kind != DIVERGENT and not self.canonical().parts

    # -- arithmetic -----------------------------------------------------------
    def _compatible(self, other: "MomentValue") -> None:
        if self.kind != other.kind:
            raise ValueError(f"cannot combine {self.kind} with {other.kind}")
        if self.parts and other.parts and self.omega != other.omega:
            raise ValueError("omega factors differ")

    def __add__(self, other: "MomentValue") -> "MomentValue":
        if self.is_divergent or other.is_divergent:
            return MomentValue.divergent(self.omega if self.omega is not None else other.omega)
        self._compatible(other)
        omega = self.omega if self.parts else other.omega
        return MomentValue(self.kind, self.parts + other.parts, omega)

    def scale(self, c) -> "MomentValue":
        if self.is_divergent:
            return self
        c = Fraction(c)
        return MomentValue(self.kind, tuple((s, c * v) for s, v in self.parts), self.omega)

    def __neg__(self) -> "MomentValue":
        return self.scale(-1)

    def __sub__(self, other: "MomentValue") -> "MomentValue":
        return self + (-other)

    def canonical(self) -> "MomentValue":
        if self.is_divergent:
            return self
        out = []
        for sym, c in self.parts:
            if sym is None:
                out.append((None, c))
            else:
                r, base = canonical_I(sym)
                out.append((base, c * r))
        return MomentValue(self.kind, tuple(out), self.omega)

    def rebase(self, target: ISymbol) -> "MomentValue":
        """Express every part as a multiple of ``target``."""
        if self.is_divergent:
            raise ValueError("divergent values have no basis")
        total = Fraction(0)
        for sym, c in self.parts:
            if sym is None:
                raise ValueError("pure rational parts cannot be rebased onto an I symbol")
            r, _ = canonical_I(sym, target)
            total += c * r
        return MomentValue(self.kind, ((target, total),), self.omega)

    def coeff_in(self, target: ISymbol) -> Fraction:
        if not self.parts:
            return Fraction(0)
        return self.rebase(target).coeff

    def equals(self, other: "MomentValue") -> bool:
        if self.kind != other.kind:
            return False
        if self.is_divergent:
            return True
        a, b = self.canonical(), other.canonical()
        if not a.parts and not b.parts:
            return True
        return a.parts == b.parts and a.omega == b.omega

    # -- numerics and text ----------------------------------------------------
    def numeric(self, precision: int = 53, with_omega: bool = True) -> float:
        if self.is_divergent:
            raise ValueError("divergent moment has no value")
        with mpmath.workprec(precision + 16):
            total = mpmath.mpf(0)
            for sym, c in self.parts:
                v = mpmath.mpf(c.numerator) / c.denominator
                if sym is not None:
                    v *= i_mp(sym, precision)
                total += v
            if with_omega and self.omega is not None:
                total *= omega_mp(self.omega, precision)
        return float(total)

    def to_string(self) -> str:
        if self.is_divergent:
            return "divergent"
        if not self.parts:
            return "0"
        pieces = []
        for sym, c in self.parts:
            bits = [str(c)]
            if self.omega is not None and sym is not None:
                bits.append(f"w{self.omega}")
            if sym is not None:
                bits.append(str(sym))
            pieces.append(" * ".join(bits))
        text = " + ".join(pieces)
        if self.kind == LOG:
            text = f"({text}) * log(1/delta)" if len(pieces) > 1 else f"{text} * log(1/delta)"
        return text

    def __str__(self) -> str:
        return self.to_string()


def t_integral(k: int, m: int) -> MomentValue:
    """int_0^oo t^k (1+t)^(-m) dt = k! / ((m-1)(m-2)...(m-1-k)) for m > k+1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if m <= k + 1:
        return MomentValue.divergent(note=f"t^{k}(1+t)^-{m} is not integrable at infinity")
    den = 1
    for j in range(1, k + 2):
        den *= m - j
    return MomentValue.scalar(Fraction(math.factorial(k), den))


def t_log_coefficient(coeffs: dict, m: int) -> Fraction:
    """log(1/delta) coefficient of int_0^{r/delta} sum_k c_k t^k (1+t)^(-m) dt.

    Powers with m = k+1 give a logarithm, m > k+1 stay bounded.
    """
    total = Fraction(0)
    for k, c in coeffs.items():
        if m < k + 1:
            raise PolynomialDivergence(f"t^{k}(1+t)^-{m} grows polynomially")
        if m == k + 1:
            total += Fraction(c)
    return total


@dataclass(frozen=True)
class TruncationSpec:
    delta: Fraction
    r: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "r", Fraction(self.r))
        if not (0 < self.delta < self.r):
            raise ValueError("truncation needs 0 < delta < r")

    @property
    def radius(self) -> Fraction:
        """Side of the cylinder, r/delta."""
        return self.r / self.delta


def _term_exponents(key, extra_rho_deg: int, n: int) -> tuple[int, int, int]:
    a, k, s, _ = key
    p = n - 2 + 2 * a + extra_rho_deg
    if p < 0:
        raise ValueError("negative total power of rho")
    return p, k, s


def _check_extra(extra_rho_deg: int) -> None:
    if extra_rho_deg % 2:
        raise ValueError("extra rho degree must be even")


def halfspace_moment(p: RadialProfile, extra_rho_deg: int, n: int) -> MomentValue:
    """int_{R^n_+} p * |ybar|^extra dy as a multiple of omega_{n-2} * I."""
    _check_extra(extra_rho_deg)
    if p.has_log:
        raise ValueError("log terms are not supported by the moment engine")
    parts = []
    for key, c in p.items():
        rp, k, s = _term_exponents(key, extra_rho_deg, n)
        tval = t_integral(k, s - rp - 1)
        if tval.is_divergent:
            return MomentValue.divergent(n - 2, note=f"term {key} diverges")
        parts.append((ISymbol(s, rp), c * tval.coeff))
    return MomentValue(FINITE, tuple(parts), n - 2)


def boundary_moment(p: RadialProfile, extra_rho_deg: int, n: int) -> MomentValue:
    """int_{R^(n-1)} p(|ybar|, 0) |ybar|^extra dybar for a profile restricted to t = 0."""
    _check_extra(extra_rho_deg)
    if p.has_log:
        raise ValueError("log terms are not supported by the moment engine")
    if p.max_t_deg:
        raise ValueError("boundary_moment needs a profile restricted to t = 0")
    parts = []
    for key, c in p.items():
        rp, _, s = _term_exponents(key, extra_rho_deg, n)
        sym = ISymbol(s, rp) if s > 0 else None
        if sym is None or not sym.convergent:
            return MomentValue.divergent(n - 2, note=f"term {key} diverges")
        parts.append((sym, c))
    return MomentValue(FINITE, tuple(parts), n - 2)


def truncated_log_moment(p: RadialProfile, extra_rho_deg: int, n: int, trunc: TruncationSpec) -> MomentValue:
    """Coefficient of log(1/delta) of the integral over [0, r/delta] x B_{r/delta}."""
    _check_extra(extra_rho_deg)
    if p.has_log:
        raise ValueError("log terms are not supported by the moment engine")
    parts = []
    for key, c in p.items():
        rp, k, s = _term_exponents(key, extra_rho_deg, n)
        big_m = s - rp - 1
        if big_m < k + 1:
            raise PolynomialDivergence(f"term {key} grows polynomially in the cylinder")
        if big_m == k + 1:
            parts.append((ISymbol(s, rp), c))
    return MomentValue(LOG, tuple(parts), n - 2, note=f"delta={trunc.delta}, r={trunc.r}")


def add_all(values: Iterable[MomentValue]) -> MomentValue:
    values = list(values)
    if not values:
        return MomentValue.zero()
    out = values[0]
    for v in values[1:]:
        out = out + v
    return out
