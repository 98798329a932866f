"""Curves in G3 and their Frenet apparatus.

An admissible curve is parametrized by its own x-coordinate, which in G3 is
the arc length: ``s -> (s, y(s), z(s))``.  Its trihedron is

    T = (1, y', z'),  N = (0, y'', z'') / kappa,  B = (0, -z'', y'') / kappa

with ``kappa = hypot(y'', z'')`` and ``tau = (y'' z''' - z'' y''') / kappa**2``.

Coordinate functions are *jet evaluators*: callables mapping a
:class:`~galcurve.jets.Jet3` in the curve parameter to the jet of the
coordinate, so every derivative in this module is exact up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .core import GVec3, IsometryParams
from .errors import (
    DegenerateSpeed,
    FrameUndefined,
    NoConvergence,
    NotAdmissible,
    NotAnIsometry,
    OutOfDomain,
    UnboundParameter,
    UsageError,
)
from .expr import Expr, Var, eval_jet, free_params
from .jets import Jet3, compose, jet_var

__all__ = [
    "KAPPA_EPS",
    "SPEED_EPS",
    "ADMIT_EPS",
    "JetFn",
    "CurveSpec",
    "AdmissibleCurve",
    "PlanarCurve",
    "FrenetFrame",
    "PlanarFrame",
    "eval3",
    "reparametrize",
    "admissible_from_spec",
    "frenet",
    "planar_frenet",
    "transform_curve",
]

KAPPA_EPS = 1e-9
SPEED_EPS = 1e-9
ADMIT_EPS = 1e-8

_SCAN_POINTS = 256
_NEWTON_TOL = 1e-12
_NEWTON_MAXITER = 100

JetFn = Callable[[Jet3], Jet3]


def _check_domain(s: float, domain: tuple[float, float], what: str = "parameter") -> None:
    lo, hi = domain
    # a few ulps of slack so grid endpoints built by linspace are accepted
    slack = 4 * np.spacing(max(abs(lo), abs(hi), 1.0))
    if not (lo - slack <= s <= hi + slack):
        raise OutOfDomain(f"{what} outside [{lo!r}, {hi!r}]", at=s)


@dataclass(frozen=True)
class CurveSpec:
    """Three coordinate expressions in one parameter plus bound constants.

    With ``admissible=True`` the x expression must be the bare parameter.
    """

    x_expr: Expr
    y_expr: Expr
    z_expr: Expr
    domain: tuple[float, float]
    params: Mapping[str, float] = field(default_factory=dict)
    admissible: bool = False

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise UsageError(f"empty curve domain [{lo!r}, {hi!r}]")
        needed = free_params(self.x_expr) | free_params(self.y_expr) | free_params(self.z_expr)
        missing = needed - set(self.params)
        if missing:
            raise UnboundParameter(sorted(missing)[0])
        if self.admissible and not isinstance(self.x_expr, Var):
            raise UsageError("admissible curve needs the x expression to be the parameter itself")


@dataclass(frozen=True)
class AdmissibleCurve:
    """``s -> (s, y(s), z(s))`` on ``domain``."""

    y: JetFn
    z: JetFn
    domain: tuple[float, float]

    def position(self, s: float) -> GVec3:
        return eval3(self, s)[0]

    def jets(self, s: float) -> tuple[Jet3, Jet3]:
        _check_domain(s, self.domain)
        sj = jet_var(s)
        return self.y(sj), self.z(sj)


@dataclass(frozen=True)
class PlanarCurve:
    """``s -> (c, y(s), z(s))``: a curve inside the Euclidean plane ``x = c``.

    For involutes ``s`` is the parent curve's parameter, not the planar
    curve's own arc length.  Evaluators may report ``d3`` as NaN when the
    third derivative is not available (involutes of jet-defined curves).
    """

    c: float
    y: JetFn
    z: JetFn
    domain: tuple[float, float]

    def position(self, s: float) -> GVec3:
        return eval3(self, s)[0]

    def jets(self, s: float) -> tuple[Jet3, Jet3]:
        _check_domain(s, self.domain)
        sj = jet_var(s)
        return self.y(sj), self.z(sj)


@dataclass(frozen=True)
class FrenetFrame:
    T: GVec3
    N: GVec3
    B: GVec3
    kappa: float
    tau: float


@dataclass(frozen=True)
class PlanarFrame:
    T_star: GVec3
    speed: float
    kappa_euclid: float


def eval3(curve: AdmissibleCurve | PlanarCurve, s: float) -> tuple[GVec3, GVec3, GVec3, GVec3]:
    """Position and the first three derivatives with respect to the parameter."""
    yj, zj = curve.jets(s)
    if isinstance(curve, PlanarCurve):
        return (
            GVec3(curve.c, yj.v, zj.v),
            GVec3(0.0, yj.d1, zj.d1),
            GVec3(0.0, yj.d2, zj.d2),
            GVec3(0.0, yj.d3, zj.d3),
        )
    return (
        GVec3(s, yj.v, zj.v),
        GVec3(1.0, yj.d1, zj.d1),
        GVec3(0.0, yj.d2, zj.d2),
        GVec3(0.0, yj.d3, zj.d3),
    )


def frenet(curve: AdmissibleCurve, s: float) -> FrenetFrame:
    yj, zj = curve.jets(s)
    T = GVec3(1.0, yj.d1, zj.d1)
    kappa = math.hypot(yj.d2, zj.d2)
    if kappa < KAPPA_EPS:
        raise FrameUndefined(f"curvature {kappa!r} below {KAPPA_EPS}", at=s, kappa=kappa, tangent=T)
    N = GVec3(0.0, yj.d2 / kappa, zj.d2 / kappa)
    B = GVec3(0.0, -zj.d2 / kappa, yj.d2 / kappa)
    # det(r', r'', r''') with r' = (1, ., .) and the other two isotropic
    tau = (yj.d2 * zj.d3 - zj.d2 * yj.d3) / (kappa * kappa)
    return FrenetFrame(T, N, B, kappa, tau)


def planar_frenet(curve: PlanarCurve, s: float) -> PlanarFrame:
    """Euclidean tangent, speed and curvature of a curve in a plane ``x = c``."""
    yj, zj = curve.jets(s)
    speed = math.hypot(yj.d1, zj.d1)
    if speed <= SPEED_EPS:
        raise DegenerateSpeed(f"speed {speed!r} below {SPEED_EPS}", at=s)
    T_star = GVec3(0.0, yj.d1 / speed, zj.d1 / speed)
    kappa = abs(yj.d1 * zj.d2 - zj.d1 * yj.d2) / speed ** 3
    return PlanarFrame(T_star, speed, kappa)


# -- construction from expressions -------------------------------------------

def _expr_fn(e: Expr, params: Mapping[str, float]) -> JetFn:
    params = dict(params)
    return lambda tj: eval_jet(e, tj, params)


def _inverse_jet(xj: Jet3) -> tuple[float, float, float]:
    """Derivatives of ``t(s)`` from those of ``x(t)`` where ``x(t(s)) = s``."""
    x1, x2, x3 = xj.d1, xj.d2, xj.d3
    return 1.0 / x1, -x2 / x1 ** 3, (3.0 * x2 * x2 - x1 * x3) / x1 ** 5


def _solve_monotone(x_of: Callable[[float], Jet3], s: float, lo: float, hi: float, increasing: bool) -> float:
    """Safeguarded Newton for ``x(t) = s`` on a bracket where x is monotone."""
    t = lo + (hi - lo) * 0.5
    a, b = lo, hi
    for _ in range(_NEWTON_MAXITER):
        xj = x_of(t)
        r = xj.v - s
        if abs(r) <= _NEWTON_TOL:
            return t
        # shrink the bracket using monotonicity
        if (r < 0) == increasing:
            a = t
        else:
            b = t
        if b - a <= 4 * np.spacing(max(abs(a), abs(b), 1.0)):
            return t
        step = t - r / xj.d1 if xj.d1 != 0 else math.nan
        t = step if a < step < b else 0.5 * (a + b)
    raise NoConvergence(f"could not solve x(t) = {s!r} in {_NEWTON_MAXITER} iterations", at=s)


def reparametrize(spec: CurveSpec) -> AdmissibleCurve:
    """Re-express a raw curve with its x-coordinate as the parameter.

    Requires ``x'(t)`` to keep one sign and stay above ``ADMIT_EPS`` in
    magnitude on the domain (checked on a 256-point scan).  Derivatives of
    the inverse ``t(s)`` follow from the inverse-function rule through third
    order, then compose exactly with ``y(t)`` and ``z(t)``.
    """
    xf = _expr_fn(spec.x_expr, spec.params)
    yf = _expr_fn(spec.y_expr, spec.params)
    zf = _expr_fn(spec.z_expr, spec.params)
    t_lo, t_hi = spec.domain

    sign = 0
    for t in np.linspace(t_lo, t_hi, _SCAN_POINTS):
        d = xf(jet_var(float(t))).d1
        if abs(d) < ADMIT_EPS or (sign and (d > 0) != (sign > 0)):
            raise NotAdmissible(f"x'(t) = {d!r} vanishes or changes sign", t_witness=float(t))
        sign = 1 if d > 0 else -1
    increasing = sign > 0

    x_lo, x_hi = xf(jet_var(t_lo)).v, xf(jet_var(t_hi)).v
    domain = (x_lo, x_hi) if increasing else (x_hi, x_lo)

    def x_of(t: float) -> Jet3:
        return xf(jet_var(t))

    def t_jet(sj: Jet3) -> Jet3:
        s = sj.v
        _check_domain(s, domain)
        if s == x_lo:
            t = t_lo
        elif s == x_hi:
            t = t_hi
        else:
            t = _solve_monotone(x_of, s, t_lo, t_hi, increasing)
        d1, d2, d3 = _inverse_jet(x_of(t))
        return compose(t, d1, d2, d3, sj)

    def y(sj: Jet3) -> Jet3:
        return yf(t_jet(sj))

    def z(sj: Jet3) -> Jet3:
        return zf(t_jet(sj))

    return AdmissibleCurve(y, z, domain)


def admissible_from_spec(spec: CurveSpec) -> AdmissibleCurve:
    """Admissible form of ``spec``; skips root finding when x is already the parameter."""
    if isinstance(spec.x_expr, Var):
        return AdmissibleCurve(_expr_fn(spec.y_expr, spec.params), _expr_fn(spec.z_expr, spec.params), spec.domain)
    if spec.admissible:
        raise UsageError("admissible curve needs the x expression to be the parameter itself")
    return reparametrize(spec)


def transform_curve(curve: AdmissibleCurve, iso: IsometryParams) -> AdmissibleCurve:
    """Image of ``curve`` under a B6 isometry, again parametrized by x.

    B6 maps ``x -> a11 + x``, so the new parameter is a shift of the old.
    """
    if not iso.is_b6():
        raise NotAnIsometry(f"a12={iso.a12!r}, a23={iso.a23!r}: not in B6")
    c, s = math.cos(iso.phi), math.sin(iso.phi)
    shift = iso.a11

    def y(sj: Jet3) -> Jet3:
        old = sj - shift
        return iso.a21 + iso.a22 * old + c * curve.y(old) + s * curve.z(old)

    def z(sj: Jet3) -> Jet3:
        old = sj - shift
        return iso.a31 + iso.a32 * old - s * curve.y(old) + c * curve.z(old)

    lo, hi = curve.domain
    return AdmissibleCurve(y, z, (lo + shift, hi + shift))
