"""Deterministic double-exponential quadrature and residual grids.

Half-lines use the exp-sinh map x = exp(pi/2 sinh tau), finite intervals
the tanh-sinh map.  Two-dimensional integrals are tensor products of the
one-dimensional rules.  All sums go through math.fsum over a fixed node
order, so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence, Union

import mpmath
import numpy as np

from .moments import ISymbol, MomentValue, i_mp, omega_mp
from .profiles import RadialProfile, eval_mp

EPS = np.finfo(float).eps
EXP_SINH_TMAX = 4.5
TANH_SINH_TMAX = 4.5


def default_precision() -> int:
    return int(os.environ.get("YAMABE_CHECK_PRECISION", "53"))


@dataclass(frozen=True)
class QuadratureSpec:
    transform: str = "exp-sinh"
    tol: float = 1e-12
    max_level: int = 8
    precision: int = field(default_factory=default_precision)  # bits; > 53 switches to mpmath

    def __post_init__(self):
        if self.transform not in ("exp-sinh", "tanh-sinh"):
            raise ValueError(f"unknown transform {self.transform!r}")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


class QuadResult(NamedTuple):
    value: float
    error: float
    level: int = 0


class RefinementLimit(RuntimeError):
    pass


Integrand = Union[RadialProfile, Callable]


# ---------------------------------------------------------------------------
# node sets
# ---------------------------------------------------------------------------

def _taus(level: int, tmax: float) -> np.ndarray:
    h = 2.0 ** (-level)
    m = int(math.ceil(tmax / h))
    return np.arange(-m, m + 1) * h


def exp_sinh_nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, log-nodes and weights on (0, oo)."""
    tau = _taus(level, EXP_SINH_TMAX)
    h = 2.0 ** (-level)
    logx = 0.5 * math.pi * np.sinh(tau)
    x = np.exp(logx)
    w = h * 0.5 * math.pi * np.cosh(tau) * x
    return x, logx, w


def tanh_sinh_nodes(a: float, b: float, level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    tau = _taus(level, TANH_SINH_TMAX)
    h = 2.0 ** (-level)
    u = 0.5 * math.pi * np.sinh(tau)
    # distance from the nearer endpoint, computed without cancellation
    frac = 1.0 / (1.0 + np.exp(2.0 * np.abs(u)))
    x = np.where(tau < 0, a + (b - a) * frac, b - (b - a) * frac)
    w = h * (b - a) * 0.5 * math.pi * np.cosh(tau) / (2.0 * np.cosh(u) ** 2)
    keep = (x > a) & (x < b) & (w > 0)
    x, w = x[keep], w[keep]
    return x, np.log(x), w


def _panel_edges(length: float) -> list[float]:
    edges = [0.0, 1.0]
    while edges[-1] * 10 < length:
        edges.append(edges[-1] * 10)
    if length > edges[-1]:
        edges.append(length)
    else:
        edges[-1] = length
    return edges


def panel_nodes(length: float, level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """tanh-sinh on geometric panels [0,1], [1,10], ... covering [0, length]."""
    xs, ls, ws = [], [], []
    edges = _panel_edges(length)
    for a, b in zip(edges[:-1], edges[1:]):
        x, lx, w = tanh_sinh_nodes(a, b, level)
        xs.append(x)
        ls.append(lx)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ls), np.concatenate(ws)


def _nodes(limit: Optional[float], level: int):
    if limit is None:
        return exp_sinh_nodes(level)
    return panel_nodes(float(limit), level)


# ---------------------------------------------------------------------------
# integrand evaluation
# ---------------------------------------------------------------------------

def profile_log_terms(p: RadialProfile, lrho, lt, lq, rho_pow: float):
    """Per-term (sign, log|value|) arrays of p * rho^rho_pow in log space."""
    out = []
    for (a, k, s, l), c in p.items():
        sign = 1.0 if c > 0 else -1.0
        lg = math.log(abs(c.numerator)) - math.log(c.denominator) + (2 * a + rho_pow) * lrho - 0.5 * s * lq
        if k:
            lg = lg + k * lt
        if l:
            # Q >= 1 on the closed quadrant, so log Q >= 0
            with np.errstate(divide="ignore"):
                lg = lg + l * np.log(lq)
        out.append((sign, lg))
    return out


def _profile_values(p: RadialProfile, rho, lrho, t, lt, rho_pow: float) -> np.ndarray:
    q = rho * rho + (1.0 + t) ** 2
    lq = np.log(q)
    total = np.zeros(np.broadcast(rho, t).shape)
    for sign, lg in profile_log_terms(p, lrho, lt, lq, rho_pow):
        total = total + sign * np.exp(lg)
    return total


def _refine(level_sum: Callable[[int], tuple[float, float]], spec: QuadratureSpec, what: str) -> QuadResult:
    """Refine level by level until successive sums agree.

    The error bound is the smallest successive difference seen so far, floored
    at a roundoff multiple of the absolute sum, so tightening tol never
    increases it.
    """
    floor = 64 * EPS
    best = math.inf
    prev = None
    for level in range(2, spec.max_level + 1):
        value, scale = level_sum(level)
        if prev is not None:
            err = max(abs(value - prev), floor * scale)
            best = min(best, err)
            if err <= max(spec.tol * abs(value), floor * scale):
                return QuadResult(value, float(best), level)
        prev = value
    raise RefinementLimit(f"{what}: tolerance {spec.tol:g} not reached by level {spec.max_level}")


def integrate_ray(f: Integrand, weight_deg: float = 0, spec: Optional[QuadratureSpec] = None,
                  limit: Optional[float] = None, t: float = 0.0) -> QuadResult:
    """int_0^L f(x) x^weight_deg dx with L = limit or infinity.

    A profile integrand is evaluated along rho at fixed ``t``.
    """
    spec = spec or QuadratureSpec()
    if spec.precision > 53:
        return _mp_ray(f, weight_deg, spec, limit, t)
    def level_sum(level):
        x, lx, w = _nodes(limit, level)
        if isinstance(f, RadialProfile):
            tt = np.full_like(x, t)
            lt = np.log(tt) if t > 0 else np.full_like(x, -np.inf)
            fx = _profile_values(f, x, lx, tt, lt, weight_deg)
        else:
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                fx = np.asarray(f(x), dtype=float) * np.exp(weight_deg * lx)
        if not np.all(np.isfinite(fx)):
            raise ValueError("integrand is not finite on the quadrature nodes")
        terms = fx * w
        return math.fsum(terms), math.fsum(np.abs(terms))

    return _refine(level_sum, spec, "ray integral")


def integrate_interval(f: Callable, a: float, b: float, spec: Optional[QuadratureSpec] = None) -> QuadResult:
    """int_a^b f(x) dx by tanh-sinh; f must accept numpy arrays."""
    spec = spec or QuadratureSpec(transform="tanh-sinh")
    if spec.precision > 53:
        with mpmath.workprec(spec.precision):
            v = mpmath.quad(lambda x: f(x), [a, b])
        return QuadResult(float(v), float(abs(v)) * 2.0 ** (-spec.precision + 4), 0)
    def level_sum(level):
        x, _, w = tanh_sinh_nodes(a, b, level)
        fx = np.asarray(f(x), dtype=float)
        if not np.all(np.isfinite(fx)):
            raise ValueError("integrand is not finite on the quadrature nodes")
        terms = fx * w
        return math.fsum(terms), math.fsum(np.abs(terms))

    return _refine(level_sum, spec, "interval integral")


def integrate_quadrant(integrand: Integrand, weight_rho_deg: float = 0, spec: Optional[QuadratureSpec] = None,
                       limits: Optional[tuple[float, float]] = None) -> QuadResult:
    """int int f(rho, t) rho^weight_rho_deg drho dt over (0,oo)^2 or [0,L_rho] x [0,L_t]."""
    spec = spec or QuadratureSpec()
    if spec.precision > 53:
        return _mp_quadrant(integrand, weight_rho_deg, spec, limits)
    lr, lt_ = limits if limits is not None else (None, None)
    def level_sum(level):
        r, lrho, wr = _nodes(lr, level)
        t, lt, wt = _nodes(lt_, level)
        R, T = r[:, None], t[None, :]
        if isinstance(integrand, RadialProfile):
            fv = _profile_values(integrand, R, lrho[:, None], T, lt[None, :], weight_rho_deg)
        else:
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                fv = np.asarray(integrand(R, T), dtype=float) * np.exp(weight_rho_deg * lrho)[:, None]
        if not np.all(np.isfinite(fv)):
            raise ValueError("integrand is not finite on the quadrature nodes")
        terms = (fv * wr[:, None] * wt[None, :]).ravel()
        return math.fsum(terms), math.fsum(np.abs(terms))

    return _refine(level_sum, spec, "quadrant integral")


# ---------------------------------------------------------------------------
# multiprecision fallback, used only when more than double precision is asked
# ---------------------------------------------------------------------------

def _mp_eval(f, rho, t):
    if isinstance(f, RadialProfile):
        return eval_mp(f, rho, t)
    return f(rho, t)


def _mp_ray(f, weight_deg, spec, limit, t):
    with mpmath.workprec(spec.precision + 16):
        top = mpmath.inf if limit is None else mpmath.mpf(limit)
        if isinstance(f, RadialProfile):
            g = lambda x: eval_mp(f, x, t, spec.precision + 16) * x ** weight_deg
        else:
            g = lambda x: f(x) * x ** weight_deg
        v = mpmath.quad(g, [0, 1, top])
    return QuadResult(float(v), float(abs(v)) * 2.0 ** (-spec.precision + 4), 0)


def _mp_quadrant(f, weight_rho_deg, spec, limits):
    with mpmath.workprec(spec.precision + 16):
        lr, lt = (mpmath.inf, mpmath.inf) if limits is None else map(mpmath.mpf, limits)

        def g(rho, t):
            return _mp_eval(f, rho, t) * rho ** weight_rho_deg

        v = mpmath.quad(g, [0, 1, lr], [0, 1, lt])
    return QuadResult(float(v), float(abs(v)) * 2.0 ** (-spec.precision + 4), 0)


# ---------------------------------------------------------------------------
# comparison with exact values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossCheck:
    ok: bool
    exact: float
    numeric: float
    ratio: Optional[float]
    abs_err: float
    rel_err: Optional[float]


def crosscheck(exact: MomentValue, numeric, tol: float = 1e-8, scale: Optional[float] = None,
               abs_tol: float = 1e-9) -> CrossCheck:
    """Compare an exact moment (times omega and I numerics) with a quadrature result.

    A zero exact value passes when |numeric| <= abs_tol * scale.
    """
    if exact.is_divergent:
        raise ValueError("cannot cross-check a divergent value")
    value, bound = (numeric.value, numeric.error) if isinstance(numeric, QuadResult) else numeric
    ex = exact.numeric()
    diff = abs(ex - value)
    if exact.is_zero():
        limit = abs_tol * (scale if scale is not None else 1.0)
        return CrossCheck(diff <= limit + bound, 0.0, value, None, diff, None)
    rel = diff / abs(ex)
    ratio = value / ex
    return CrossCheck(rel <= tol + bound / abs(ex), ex, value, ratio, diff, rel)


def exact_numeric(coeff, sym, omega_index: Optional[int] = None) -> float:
    with mpmath.workprec(80):
        v = mpmath.mpf(coeff.numerator) / coeff.denominator * i_mp(sym, 64)
        if omega_index is not None:
            v *= omega_mp(omega_index, 64)
    return float(v)


# ---------------------------------------------------------------------------
# residual grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualGrid:
    rho: tuple
    t: tuple
    max_abs: float
    max_rel: float
    rhs_scale: float

    @property
    def size(self) -> int:
        return len(self.rho) * len(self.t)


def grid_points(count: int = 16, lo: float = 1e-2, hi: float = 1e3) -> tuple[float, ...]:
    return tuple(float(x) for x in np.geomspace(lo, hi, count))


def residual_max(residual: Callable, rhs: Callable, n: int, points: Optional[Sequence[float]] = None,
                 dps: int = 40) -> ResidualGrid:
    """Largest |residual| over a geometric (rho, t) grid, absolute and relative to max |rhs|.

    ``n`` is carried only to tag the grid; callables receive mpmath numbers.
    """
    pts = tuple(points) if points is not None else grid_points()
    worst, scale = mpmath.mpf(0), mpmath.mpf(0)
    with mpmath.workdps(dps):
        for r in pts:
            for t in pts:
                rm, tm = mpmath.mpf(r), mpmath.mpf(t)
                worst = max(worst, abs(residual(rm, tm)))
                scale = max(scale, abs(rhs(rm, tm)))
    rel = float(worst / scale) if scale else float(worst)
    return ResidualGrid(pts, pts, float(worst), rel, float(scale))


def numeric_laplacian(p: RadialProfile, degree: int, n: int, rho, t, dps: int = 40, parts: bool = False):
    """Finite-difference harmonic-factor Laplacian of p at (rho, t).

    Uses d2/drho2 + (n-2+2d)/rho d/drho + d2/dt2, independent of the symbolic
    operator.  With ``parts`` the three terms are returned separately.
    """
    with mpmath.workdps(dps):
        # mpmath.diff raises the working precision internally; follow it
        f = lambda r, s: eval_mp(p, r, s, mpmath.mp.prec)
        d_r = mpmath.diff(lambda r: f(r, t), rho, 1)
        d_rr = mpmath.diff(lambda r: f(r, t), rho, 2)
        d_tt = mpmath.diff(lambda s: f(rho, s), t, 2)
        first = (n - 2 + 2 * degree) / rho * d_r
        if parts:
            return d_rr, first, d_tt
        return d_rr + first + d_tt


# ---------------------------------------------------------------------------
# validation set: integrands with Beta / Gamma closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationCase:
    name: str
    value: float
    error: float
    truth: float

    @property
    def within_bound(self) -> bool:
        return abs(self.value - self.truth) <= self.error


def _beta(a, b) -> float:
    return float(mpmath.beta(a, b))


def validation_set(spec: Optional[QuadratureSpec] = None) -> list[ValidationCase]:
    spec = spec or QuadratureSpec()
    ts_spec = QuadratureSpec("tanh-sinh", spec.tol, spec.max_level, spec.precision)
    out = []

    def ray(name, f, truth, weight=0):
        r = integrate_ray(f, weight, spec)
        out.append(ValidationCase(name, r.value, r.error, truth))

    ray("rho^9 (1+rho^2)^-7", lambda x: (1 + x * x) ** -7.0, float(i_mp(ISymbol(14, 9))), 9)
    ray("(1+rho^2)^-2", lambda x: (1 + x * x) ** -2.0, math.pi / 4)
    ray("t^2 (1+t)^-5", lambda x: (1 + x) ** -5.0, 1 / 12, 2)
    ray("x^-1/2 (1+x)^-2", lambda x: (1 + x) ** -2.0, _beta(0.5, 1.5), -0.5)
    ray("x^3/2 (1+x)^-4", lambda x: (1 + x) ** -4.0, _beta(2.5, 1.5), 1.5)
    ray("x^3 exp(-x)", lambda x: np.exp(-x), 6.0, 3)
    for name, f, a, b, truth in (
        ("x^2 (1-x)^3 on [0,1]", lambda x: x ** 2 * (1 - x) ** 3, 0.0, 1.0, _beta(3, 4)),
        ("x^-1/2 (1-x)^1/2 on [0,1]", lambda x: x ** -0.5 * (1 - x) ** 0.5, 0.0, 1.0, _beta(0.5, 1.5)),
    ):
        r = integrate_interval(f, a, b, ts_spec)
        out.append(ValidationCase(name, r.value, r.error, truth))
    for name, prof, w, truth in (
        ("rho^4 t^2 Q^-8 (2-D)", RadialProfile.monomial(1, 0, 2, 16), 4, _beta(3, 8) * _beta(2.5, 5.5) / 2),
        ("rho^2 Q^-4 (2-D)", RadialProfile.monomial(1, 0, 0, 8), 2, _beta(1, 4) * _beta(1.5, 2.5) / 2),
    ):
        r = integrate_quadrant(prof, w, spec)
        out.append(ValidationCase(name, r.value, r.error, truth))
    return out
