"""Involutes and evolutes of admissible curves.

The involute with constant ``c`` is ``a*(s) = a(s) + (c - s) T(s)``.  Since
T has x-component 1, the whole involute lies in the Euclidean plane
``x = c``.  Going backwards, an evolute of a planar target is recovered by
integrating

    y'(s) = (Y(u(s)) - y(s)) / (c - s),   z'(s) = (Z(u(s)) - z(s)) / (c - s)

where ``u`` matches evolute parameters to target parameters.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import GVec3
from .curves import KAPPA_EPS, AdmissibleCurve, PlanarCurve, _check_domain, frenet
from .errors import EmptyDomain, OutOfDomain, SingularLambda, UsageError
from .expr import Expr, Var, eval_jet
from .jets import Jet3, compose, jet_var
from .numerics import hermite_cubic, rk4

__all__ = [
    "LAMBDA_MIN",
    "InvolutePair",
    "InvoluteFrame",
    "EvoluteProblem",
    "EvoluteCurve",
    "make_involute",
    "involute_frame",
    "make_evolute",
    "evolute_problems_for",
]

LAMBDA_MIN = 1e-2

_KAPPA_SCAN = 256


@dataclass(frozen=True)
class InvolutePair:
    base: AdmissibleCurve
    c: float
    involute: PlanarCurve
    check_domain: tuple[float, float]

    def base_point(self, s: float) -> GVec3:
        return self.base.position(s)

    def involute_point(self, s: float) -> GVec3:
        return self.involute.position(s)


@dataclass(frozen=True)
class InvoluteFrame:
    T_star: GVec3
    N_star: GVec3
    kappa_star: float
    dsstar_ds: float


def _involute_coord(base: AdmissibleCurve, c: float, index: int):
    def fn(sj: Jet3) -> Jet3:
        s = sj.v
        g = base.jets(s)[index]
        lam = c - s
        # the third derivative would need a fourth derivative of the base
        return compose(g.v + lam * g.d1, lam * g.d2, -g.d2 + lam * g.d3, math.nan, sj)

    return fn


def make_involute(base: AdmissibleCurve, c: float) -> InvolutePair:
    """Involute of ``base`` lying in the plane ``x = c``.

    Raises :class:`FrameUndefined` if the base curvature vanishes anywhere on
    a 256-point scan of its domain, and :class:`EmptyDomain` if no parameter
    below ``c - LAMBDA_MIN`` is left to check on.
    """
    lo, hi = base.domain
    for s in np.linspace(lo, hi, _KAPPA_SCAN):
        frenet(base, float(s))
    upper = min(hi, c - LAMBDA_MIN)
    if not lo < upper:
        raise EmptyDomain(f"no parameter of [{lo!r}, {hi!r}] lies below c - {LAMBDA_MIN} = {c - LAMBDA_MIN!r}")
    c = float(c)
    involute = PlanarCurve(c, _involute_coord(base, c, 0), _involute_coord(base, c, 1), base.domain)
    return InvolutePair(base, c, involute, (lo, upper))


def involute_frame(pair: InvolutePair, s: float) -> InvoluteFrame:
    """Tangent, normal, curvature and arc-length rate of the involute at ``s``.

    The curvature is reported nonnegative; the sign of the base torsion is
    carried by ``N_star`` instead.
    """
    lam = pair.c - s
    if abs(lam) < LAMBDA_MIN:
        raise SingularLambda(f"|c - s| = {abs(lam)!r} below {LAMBDA_MIN}", at=s)
    _check_domain(s, pair.check_domain, "involute parameter")
    fr = frenet(pair.base, s)
    sign = -1.0 if fr.tau < 0 else 1.0
    return InvoluteFrame(
        T_star=fr.N,
        N_star=fr.B * sign,
        kappa_star=abs(fr.tau) / (lam * fr.kappa),
        dsstar_ds=lam * fr.kappa,
    )


# -- evolutes -----------------------------------------------------------------

@dataclass(frozen=True)
class EvoluteProblem:
    """Data for reconstructing one evolute of ``target``.

    ``correspondence`` is an expression in ``s`` (with constants from
    ``correspondence_params``) giving the target parameter matched to ``s``.
    """

    target: PlanarCurve
    correspondence: Expr
    y0: float
    z0: float
    s_start: float
    s_end: float
    step: float = 1e-3
    correspondence_params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.s_start < self.s_end:
            raise UsageError("evolute grid needs s_start < s_end")
        if self.step <= 0:
            raise UsageError("evolute step must be positive")
        c = self.target.c
        if self.s_end >= c:
            raise SingularLambda(f"evolute grid [{self.s_start!r}, {self.s_end!r}] reaches c = {c!r}", at=c)

    def target_jets(self, sj: Jet3) -> tuple[Jet3, Jet3]:
        """Jets of ``(Y(u(s)), Z(u(s)))``."""
        uj = eval_jet(self.correspondence, sj, self.correspondence_params)
        lo, hi = self.target.domain
        if not lo <= uj.v <= hi:
            raise OutOfDomain(f"correspondence u = {uj.v!r} leaves target domain [{lo!r}, {hi!r}]", at=sj.v)
        return self.target.y(uj), self.target.z(uj)

    def same_family(self, other: EvoluteProblem) -> bool:
        return (
            self.target == other.target
            and self.correspondence == other.correspondence
            and dict(self.correspondence_params) == dict(other.correspondence_params)
        )


@dataclass(frozen=True)
class EvoluteCurve(AdmissibleCurve):
    """Admissible curve produced by :func:`make_evolute`, remembering its problem and nodes."""

    problem: EvoluteProblem | None = None
    nodes: tuple[float, ...] = ()
    states: tuple[tuple[float, float], ...] = ()


def make_evolute(problem: EvoluteProblem) -> EvoluteCurve:
    """Integrate the evolute ODE with fixed-step RK4.

    Between nodes the value and slope come from cubic Hermite interpolation
    of the node values and node slopes.  Second and third derivatives come
    from differentiating the ODE itself: ``y'' = W'/(c - s)`` and
    ``y''' = W''/(c - s) + W'/(c - s)**2`` with ``W = Y o u``, which do not
    depend on the solution.
    """
    c = problem.target.c

    def rhs_scalar(s: float, state) -> tuple[float, float, Jet3, Jet3]:
        wy, wz = problem.target_jets(jet_var(s))
        lam = c - s
        return (wy.v - state[0]) / lam, (wz.v - state[1]) / lam, wy, wz

    def rhs(s: float, state: np.ndarray) -> np.ndarray:
        dy, dz, _, _ = rhs_scalar(s, state)
        return np.array([dy, dz])

    nodes, states = rk4(rhs, (problem.y0, problem.z0), problem.s_start, problem.s_end, problem.step)
    node_list = [float(v) for v in nodes]
    slopes = [rhs(s, st) for s, st in zip(node_list, states)]

    def coord(index: int):
        def fn(sj: Jet3) -> Jet3:
            s = sj.v
            _check_domain(s, (node_list[0], node_list[-1]))
            k = min(max(bisect.bisect_right(node_list, s) - 1, 0), len(node_list) - 2)
            v, d1 = hermite_cubic(
                node_list[k], node_list[k + 1],
                states[k][index], states[k + 1][index],
                slopes[k][index], slopes[k + 1][index],
                s,
            )
            w = problem.target_jets(jet_var(s))[index]
            lam = c - s
            d2 = w.d1 / lam
            d3 = w.d2 / lam + w.d1 / (lam * lam)
            return compose(float(v), float(d1), d2, d3, sj)

        return fn

    return EvoluteCurve(
        y=coord(0),
        z=coord(1),
        domain=(node_list[0], node_list[-1]),
        problem=problem,
        nodes=tuple(node_list),
        states=tuple((float(a), float(b)) for a, b in states),
    )


def evolute_problems_for(pair: InvolutePair, offsets=((0.0, 0.0), (1.0, 0.0)), step: float = 1e-3) -> list[EvoluteProblem]:
    """Evolute problems whose shared target is the involute of ``pair``.

    The correspondence is the identity and the starting point of each
    evolute is the base point shifted by the given ``(dy, dz)`` offset; the
    zero offset reproduces the base curve.
    """
    lo, hi = pair.check_domain
    start = pair.base.position(lo)
    return [
        EvoluteProblem(
            target=pair.involute,
            correspondence=Var("s"),
            y0=start.y + dy,
            z0=start.z + dz,
            s_start=lo,
            s_end=hi,
            step=step,
        )
        for dy, dz in offsets
    ]
