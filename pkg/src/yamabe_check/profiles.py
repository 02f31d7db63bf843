"""Exact algebra for half-space radial profiles.

A profile is a finite sum of terms

    c * rho^(2a) * t^k * Q^(-s/2) * (log Q)^l,     Q = rho^2 + (1 + t)^2,

where ``rho = |ybar|`` is the tangential radius, ``t = y_n >= 0`` the normal
coordinate and ``c`` an exact rational.  The class is closed under the
operations needed to write down the bubble, its correction terms and all the
integrands of the Pohozaev constants.

Two profiles are equal as functions iff their *reduced* forms agree: the
reduction eliminates ``rho^2 = Q - (1+t)^2`` so that every remaining term has
``a = 0``; the monomials ``t^k Q^(-s/2) (log Q)^l`` are linearly independent.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Union

import mpmath
import numpy as np

ExactScalar = Fraction
Scalar = Union[Fraction, int]

MAX_PRECISION_BITS = 8192

Key = tuple[int, int, int, int]  # (a, k, s, l)


def _frac(x: Scalar | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("profile coefficients must be exact, got float")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class ProfileTerm:
    rho_half_deg: int
    t_deg: int
    q_neg_twice_exp: int
    log_deg: int
    coeff: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rho_half_deg < 0 or self.t_deg < 0 or self.log_deg < 0:
            raise ValueError(f"negative exponent in {self!r}")

    @property
    def key(self) -> Key:
        return (self.rho_half_deg, self.t_deg, self.q_neg_twice_exp, self.log_deg)


class RadialProfile:
    """Immutable canonical sum of :class:`ProfileTerm`."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Scalar] | Iterable[tuple[Key, Scalar]] = ()):
        acc: dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            a, k, s, l = key
            if a < 0 or k < 0 or l < 0:
                raise ValueError(f"negative exponent in key {key}")
            acc[key] = acc.get(key, Fraction(0)) + _frac(c)
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        self._hash = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "RadialProfile":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, rho2: int = 0, t: int = 0, s: int = 0, log: int = 0) -> "RadialProfile":
        """``coeff * rho^(2*rho2) * t^t * Q^(-s/2) * logQ^log``."""
        return cls({(rho2, t, s, log): coeff})

    @classmethod
    def q_power(cls, s: int, coeff: Scalar = 1) -> "RadialProfile":
        return cls.monomial(coeff, s=s)

    @classmethod
    def t_poly(cls, coeffs: Iterable[Scalar]) -> "RadialProfile":
        """Polynomial in t with coefficients listed from degree 0 upward."""
        return cls({(0, k, 0, 0): c for k, c in enumerate(coeffs)})

    @classmethod
    def rho_sq(cls) -> "RadialProfile":
        return cls.monomial(1, rho2=1)

    # -- container protocol ---------------------------------------------------
    @property
    def terms(self) -> tuple[ProfileTerm, ...]:
        return tuple(ProfileTerm(*k, coeff=c) for k, c in self._terms)

    def items(self) -> tuple[tuple[Key, Fraction], ...]:
        return self._terms

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    def is_empty(self) -> bool:
        return not self._terms

    def is_zero(self) -> bool:
        """True iff the profile vanishes identically as a function."""
        return self.reduced().is_empty()

    def is_zero_on_boundary(self) -> bool:
        """True iff the profile vanishes identically on t = 0."""
        return restrict_boundary(self.reduced()).is_empty()

    @property
    def has_log(self) -> bool:
        return any(k[3] for k, _ in self._terms)

    @property
    def max_t_deg(self) -> int:
        return max((k[1] for k, _ in self._terms), default=0)

    # -- term algebra ---------------------------------------------------------
    def __add__(self, other: "RadialProfile | Scalar") -> "RadialProfile":
        other = _as_profile(other)
        return RadialProfile(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "RadialProfile":
        return RadialProfile((k, -c) for k, c in self._terms)

    def __sub__(self, other: "RadialProfile | Scalar") -> "RadialProfile":
        return self + (-_as_profile(other))

    def __rsub__(self, other: "RadialProfile | Scalar") -> "RadialProfile":
        return _as_profile(other) - self

    def scale(self, c: Scalar) -> "RadialProfile":
        c = _frac(c)
        return RadialProfile((k, c * v) for k, v in self._terms)

    def __mul__(self, other: "RadialProfile | Scalar") -> "RadialProfile":
        if not isinstance(other, RadialProfile):
            return self.scale(other)
        out: dict[Key, Fraction] = {}
        for (a1, k1, s1, l1), c1 in self._terms:
            for (a2, k2, s2, l2), c2 in other._terms:
                key = (a1 + a2, k1 + k2, s1 + s2, l1 + l2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return RadialProfile(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RadialProfile":
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers of a general profile")
        out = RadialProfile.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def monomial_power(self, e: Scalar) -> "RadialProfile":
        """Rational power of a single-term profile ``Q^(-s/2)`` type.

        Only defined when the result stays in the class (e.g. ``U^(n/(n-2))``).
        """
        if len(self._terms) != 1:
            raise ValueError("rational powers are only defined for single-term profiles")
        (a, k, s, l), c = self._terms[0]
        e = _frac(e)
        if c != 1 or a or k or l:
            raise ValueError("rational powers only for pure Q^(-s/2) terms with unit coefficient")
        s_new = s * e
        if s_new.denominator != 1:
            raise ValueError(f"Q^(-{s}/2) to the power {e} leaves the profile class")
        return RadialProfile.q_power(int(s_new))

    # -- equality -------------------------------------------------------------
    def reduced(self) -> "RadialProfile":
        """Eliminate rho^2 via rho^2 = Q - (1+t)^2 (unique normal form)."""
        out: dict[Key, Fraction] = {}
        for (a, k, s, l), c in self._terms:
            if a == 0:
                out[(0, k, s, l)] = out.get((0, k, s, l), Fraction(0)) + c
                continue
            # rho^(2a) = sum_j C(a,j) Q^j (-(1+t)^2)^(a-j)
            for j in range(a + 1):
                sign = -1 if (a - j) % 2 else 1
                base = c * comb(a, j) * sign
                deg = 2 * (a - j)
                for i in range(deg + 1):
                    key = (0, k + i, s - 2 * j, l)
                    out[key] = out.get(key, Fraction(0)) + base * comb(deg, i)
        return RadialProfile(out)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RadialProfile.constant(other)
        if not isinstance(other, RadialProfile):
            return NotImplemented
        if self._terms == other._terms:
            return True
        return self.reduced()._terms == other.reduced()._terms

    def same_terms(self, other: "RadialProfile") -> bool:
        """Syntactic equality of canonical term lists."""
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.reduced()._terms)
        return self._hash

    def canonical(self) -> "RadialProfile":
        return RadialProfile(self._terms)

    # -- text -----------------------------------------------------------------
    def to_text(self) -> str:
        return dump_profile(self)

    def __repr__(self) -> str:
        return f"RadialProfile({dump_profile(self)!r})"

    def __str__(self) -> str:
        return dump_profile(self)


def _as_profile(x: "RadialProfile | Scalar") -> RadialProfile:
    if isinstance(x, RadialProfile):
        return x
    return RadialProfile.constant(x)


def term_algebra(op: str, lhs: RadialProfile, rhs: "RadialProfile | Scalar") -> RadialProfile:
    if op == "add":
        return lhs + rhs
    if op == "scale":
        if isinstance(rhs, RadialProfile):
            raise TypeError("scale takes an exact scalar")
        return lhs.scale(rhs)
    if op == "multiply":
        return lhs * rhs
    raise ValueError(f"unknown term_algebra op {op!r}")


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------

def _d_t(p: RadialProfile) -> RadialProfile:
    out: dict[Key, Fraction] = {}

    def put(key, c):
        out[key] = out.get(key, Fraction(0)) + c

    for (a, k, s, l), c in p.items():
        if k:
            put((a, k - 1, s, l), c * k)
        # dQ/dt = 2(1+t); d Q^(-s/2) = -s (1+t) Q^(-s/2-1)
        if s:
            put((a, k, s + 2, l), -c * s)
            put((a, k + 1, s + 2, l), -c * s)
        # d (log Q)^l = 2 l (1+t) Q^(-1) (log Q)^(l-1)
        if l:
            put((a, k, s + 2, l - 1), c * 2 * l)
            put((a, k + 1, s + 2, l - 1), c * 2 * l)
    return RadialProfile(out)


def _inv_rho_d_rho(p: RadialProfile) -> RadialProfile:
    out: dict[Key, Fraction] = {}

    def put(key, c):
        out[key] = out.get(key, Fraction(0)) + c

    for (a, k, s, l), c in p.items():
        if a:
            put((a - 1, k, s, l), c * 2 * a)
        if s:
            put((a, k, s + 2, l), -c * s)
        if l:
            put((a, k, s + 2, l - 1), c * 2 * l)
    return RadialProfile(out)


def _d_rho_rho(p: RadialProfile) -> RadialProfile:
    # f_rr = D f + rho^2 D(D f) with D = (1/rho) d/drho
    df = _inv_rho_d_rho(p)
    return df + RadialProfile.rho_sq() * _inv_rho_d_rho(df)


def differentiate(p: RadialProfile, direction: str) -> RadialProfile:
    if direction == "d_t":
        return _d_t(p)
    if direction == "d_tt":
        return _d_t(_d_t(p))
    if direction == "inv_rho_d_rho":
        return _inv_rho_d_rho(p)
    if direction == "d_rho_rho":
        return _d_rho_rho(p)
    raise ValueError(f"unknown direction {direction!r}")


class HarmonicFactor(enum.Enum):
    """Traceless harmonic polynomial factor in the tangential variables."""

    SCALAR = 0
    RN_PAIR = 2  # R_ninj y_i y_j
    RIEM_QUAD = 4  # Rbar_ikjl y_i y_j y_k y_l

    @property
    def degree(self) -> int:
        return self.value


def laplacian_harmonic(p: RadialProfile, factor: HarmonicFactor, n: int) -> RadialProfile:
    """Return B' with Delta(H * p) = H * B' in R^n_+.

    Uses Delta(H B) = H (B_rr + (n-2+2d)/rho B_r + B_tt) and B_rr = D B + rho^2 D^2 B.
    """
    if n < 5:
        raise ValueError("ambient dimension must be >= 5")
    d = factor.degree
    db = _inv_rho_d_rho(p)
    return db.scale(n - 1 + 2 * d) + RadialProfile.rho_sq() * _inv_rho_d_rho(db) + _d_t(_d_t(p))


def restrict_boundary(p: RadialProfile) -> RadialProfile:
    """Set t = 0 (Q is then read as 1 + rho^2)."""
    return RadialProfile((key, c) for key, c in p.items() if key[1] == 0)


# ---------------------------------------------------------------------------
# numerics
# ---------------------------------------------------------------------------

def eval_mp(p: RadialProfile, rho, t, precision: int = 53):
    """Evaluate at (rho, t) with mpmath at ``precision`` bits; returns mpf."""
    if precision > MAX_PRECISION_BITS:
        raise ValueError(f"precision {precision} exceeds {MAX_PRECISION_BITS} bits")
    if rho < 0 or t < 0:
        raise ValueError("profiles are evaluated on rho >= 0, t >= 0")
    with mpmath.workprec(precision + 16):
        rho = mpmath.mpf(rho)
        t = mpmath.mpf(t)
        q = rho * rho + (1 + t) ** 2
        sq = mpmath.sqrt(q)
        lq = mpmath.log(q) if p.has_log else None
        total = mpmath.mpf(0)
        for (a, k, s, l), c in p.items():
            v = mpmath.mpf(c.numerator) / c.denominator
            if a:
                v *= rho ** (2 * a)
            if k:
                v *= t ** k
            if s:
                v *= sq ** (-s)
            if l:
                v *= lq ** l
            total += v
    return +total


def eval_numeric(p: RadialProfile, rho: float, t: float, precision: int = 53) -> float:
    value = eval_mp(p, rho, t, precision)
    out = float(value)
    if math.isinf(out) and mpmath.isfinite(value):
        raise OverflowError("profile value overflows a double")
    return out


def evaluate(p: RadialProfile, rho, t) -> np.ndarray:
    """Vectorized float64 evaluation, computed in log space to avoid overflow."""
    rho = np.asarray(rho, dtype=float)
    t = np.asarray(t, dtype=float)
    rho, t = np.broadcast_arrays(rho, t)
    q = rho * rho + (1.0 + t) ** 2
    lq = np.log(q)
    with np.errstate(divide="ignore"):
        lr = np.log(rho)
        lt = np.log(t)
    out = np.zeros(rho.shape)
    for (a, k, s, l), c in p.items():
        expo = -0.5 * s * lq
        if a:
            expo = expo + 2 * a * lr
        if k:
            expo = expo + k * lt
        term = float(c) * np.exp(expo)
        if l:
            term = term * lq ** l
        out += term
    return out


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<c>[+-]?\d+(?:/\d+)?)\s*\*\s*rho\^(?P<r>\d+)\s*\*\s*t\^(?P<k>\d+)"
    r"\s*\*\s*Q\^\((?P<s>-?\d+)/2\)\s*\*\s*logQ\^(?P<l>\d+)\s*$"
)


def _dump_term(key: Key, c: Fraction) -> str:
    a, k, s, l = key
    # exponent of Q is -s/2; written with the literal doubled numerator
    return f"{c} * rho^{2 * a} * t^{k} * Q^({-s}/2) * logQ^{l}"


def dump_profile(p: RadialProfile) -> str:
    if p.is_empty():
        return "0"
    return " + ".join(_dump_term(k, c) for k, c in p.items())


def parse_profile(text: str) -> RadialProfile:
    text = text.strip()
    if text == "0":
        return RadialProfile()
    out = []
    for chunk in text.split(" + "):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot parse profile term {chunk!r}")
        r = int(m["r"])
        if r % 2:
            raise ValueError("odd power of rho is outside the profile class")
        out.append(((r // 2, int(m["k"]), -int(m["s"]), int(m["l"])), Fraction(m["c"])))
    return RadialProfile(out)
