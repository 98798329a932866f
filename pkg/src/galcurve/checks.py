"""Numerical verification of the Frenet equations, B6 invariance and the
involute/evolute theorems.

Every checker samples a grid, records one deviation per sample and returns a
:class:`CheckReport` whose ``passed`` flag is ``max_abs_deviation <= tolerance``.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import GVec3, IsometryParams, g_cross, g_dot, g_norm
from .curves import AdmissibleCurve, PlanarCurve, frenet, planar_frenet, transform_curve
from .errors import MismatchedTargets, PlanarBase, UsageError
from .involute import EvoluteCurve, InvolutePair, involute_frame
from .numerics import adaptive_simpson, sample_grid

__all__ = [
    "CheckReport",
    "check_thm31",
    "check_thm32",
    "check_thm33",
    "check_thm34",
    "check_frenet_ode",
    "check_isometry",
    "arc_rate_consistency",
    "random_b6",
]

PLANAR_TAU_EPS = 1e-9


@dataclass
class CheckReport:
    theorem_id: str
    grid: list[float]
    samples: list[dict[str, float]]
    max_abs_deviation: float
    tolerance: float
    passed: bool
    notes: str = ""
    # summary numbers (mean of f, etc.); kept out of the JSON report
    stats: dict[str, float] = field(default_factory=dict)

    @classmethod
    def build(cls, theorem_id, grid, samples, tolerance, notes="", stats=None):
        worst = max(smp["deviation"] for smp in samples)
        return cls(theorem_id, list(grid), samples, worst, tolerance, bool(worst <= tolerance), notes, stats or {})

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem_id,
            "tolerance": self.tolerance,
            "max_abs_deviation": self.max_abs_deviation,
            "pass": self.passed,
            "grid": self.grid,
            "samples": self.samples,
            "notes": self.notes,
        }


def _grid(domain: tuple[float, float], n: int) -> list[float]:
    if n < 2:
        raise UsageError(f"checks need n >= 2 samples, got {n}")
    return sample_grid(domain[0], domain[1], n)


def check_thm31(pair: InvolutePair, n: int = 100, tol: float = 1e-9) -> CheckReport:
    """Distance between corresponding points equals ``|c - s|``."""
    grid = _grid(pair.check_domain, n)
    samples = []
    for s in grid:
        dist = g_norm(pair.involute_point(s) - pair.base_point(s))
        samples.append({"s": s, "deviation": abs(dist - abs(pair.c - s)), "distance": dist})
    return CheckReport.build("3.1", grid, samples, tol)


def check_thm32(pair: InvolutePair, n: int = 100, tol: float = 1e-6) -> CheckReport:
    """Involute curvature against ``|tau| / ((c - s) kappa)``.

    The involute's curvature is measured independently as the Euclidean
    curvature of a plane curve.  Each sample's deviation is the larger of the
    relative curvature mismatch and the absolute arc-rate mismatch between the
    planar speed and ``(c - s) kappa``.
    """
    grid = _grid(pair.check_domain, n)
    samples = []
    for s in grid:
        fr = frenet(pair.base, s)
        lam = pair.c - s
        predicted = abs(fr.tau) / (lam * fr.kappa)
        planar = planar_frenet(pair.involute, s)
        curv_dev = abs(planar.kappa_euclid - predicted) / max(1.0, abs(predicted))
        speed_dev = abs(planar.speed - lam * fr.kappa)
        samples.append({
            "s": s,
            "deviation": max(curv_dev, speed_dev),
            "kappa_star": predicted,
            "kappa_euclid": planar.kappa_euclid,
            "curvature_deviation": curv_dev,
            "speed_deviation": speed_dev,
        })
    return CheckReport.build("3.2", grid, samples, tol)


def check_thm33(pair: InvolutePair, n: int = 100, tol: float = 1e-9) -> CheckReport:
    """Constancy of ``f = <T, T* ^ N*>`` along a non-planar base."""
    grid = _grid(pair.check_domain, n)
    frames = [frenet(pair.base, s) for s in grid]
    if max(abs(fr.tau) for fr in frames) <= PLANAR_TAU_EPS:
        raise PlanarBase("base curve is planar (torsion vanishes on the grid)")
    fs, ratios = [], []
    for s, fr in zip(grid, frames):
        inv = involute_frame(pair, s)
        fs.append(g_dot(fr.T, g_cross(inv.T_star, inv.N_star)))
        ratios.append(fr.tau / fr.kappa)
    mean_f = statistics.fmean(fs)
    mean_ratio = statistics.fmean(ratios)
    samples = [
        {"s": s, "deviation": abs(f - mean_f), "f": f, "tau_over_kappa": r, "ratio_deviation": abs(r - mean_ratio)}
        for s, f, r in zip(grid, fs, ratios)
    ]
    spread = max(abs(r - mean_ratio) for r in ratios)
    notes = f"mean f = {mean_f!r}; tau/kappa mean {mean_ratio!r}, max spread {spread!r} (diagnostic only)"
    return CheckReport.build(
        "3.3", grid, samples, tol, notes,
        {"mean_f": mean_f, "std_f": statistics.pstdev(fs), "ratio_spread": spread},
    )


def check_thm34(
    beta: EvoluteCurve,
    gamma: EvoluteCurve,
    shared_target: PlanarCurve,
    n: int = 100,
    tol: float = 1e-9,
) -> CheckReport:
    """Constancy of ``f = <T_beta, T_gamma>`` at corresponding points of two evolutes."""
    pb, pg = beta.problem, gamma.problem
    if pb is None or pg is None:
        raise MismatchedTargets("both curves must come from make_evolute")
    if pb.target != shared_target or pg.target != shared_target or not pb.same_family(pg):
        raise MismatchedTargets("evolutes were built against different targets or correspondences")
    lo = max(beta.domain[0], gamma.domain[0])
    hi = min(beta.domain[1], gamma.domain[1])
    if not lo < hi:
        raise MismatchedTargets("evolute parameter ranges do not overlap")
    grid = _grid((lo, hi), n)
    fs = [g_dot(frenet_tangent(beta, s), frenet_tangent(gamma, s)) for s in grid]
    mean_f = statistics.fmean(fs)
    samples = [{"s": s, "deviation": abs(f - mean_f), "f": f} for s, f in zip(grid, fs)]
    return CheckReport.build(
        "3.4", grid, samples, tol, f"mean f = {mean_f!r}",
        {"mean_f": mean_f, "std_f": statistics.pstdev(fs)},
    )


def frenet_tangent(curve: AdmissibleCurve, s: float) -> GVec3:
    yj, zj = curve.jets(s)
    return GVec3(1.0, yj.d1, zj.d1)


def check_frenet_ode(curve: AdmissibleCurve, n: int = 50, h: float = 1e-4, tol: float = 1e-5) -> CheckReport:
    """Residuals of ``T' = kN``, ``N' = tau B``, ``B' = -tau N`` by central differences."""
    lo, hi = curve.domain
    grid = _grid((lo + 2 * h, hi - 2 * h), n)
    samples = []
    for s in grid:
        fr, fm, fp = frenet(curve, s), frenet(curve, s - h), frenet(curve, s + h)
        dT = (fp.T - fm.T) / (2 * h)
        dN = (fp.N - fm.N) / (2 * h)
        dB = (fp.B - fm.B) / (2 * h)
        rT = (dT - fr.N * fr.kappa).euclid_norm()
        rN = (dN - fr.B * fr.tau).euclid_norm()
        rB = (dB + fr.N * fr.tau).euclid_norm()
        samples.append({"s": s, "deviation": max(rT, rN, rB), "residual_T": rT, "residual_N": rN, "residual_B": rB})
    return CheckReport.build("frenet-ode", grid, samples, tol, f"central differences with step {h!r}")


def random_b6(rng: np.random.Generator, scale: float = 5.0) -> IsometryParams:
    a11, a21, a31, a22, a32 = rng.uniform(-scale, scale, 5)
    return IsometryParams(
        a11=float(a11), a21=float(a21), a31=float(a31),
        a22=float(a22), a32=float(a32), phi=float(rng.uniform(0.0, 2 * math.pi)),
    )


def check_isometry(
    curve: AdmissibleCurve,
    n_isometries: int = 100,
    n: int = 20,
    tol: float = 1e-9,
    seed: int = 0,
) -> CheckReport:
    """Curvature and torsion are unchanged by random B6 isometries.

    Each sample pairs one random isometry with one parameter drawn from an
    ``n``-point grid of the curve's domain.
    """
    grid = _grid(curve.domain, n)
    rng = np.random.default_rng(seed)
    samples = []
    for k in range(n_isometries):
        iso = random_b6(rng)
        s = grid[int(rng.integers(len(grid)))]
        moved = transform_curve(curve, iso)
        a, b = frenet(curve, s), frenet(moved, s + iso.a11)
        dk = abs(a.kappa - b.kappa) / max(1.0, abs(a.kappa))
        dt = abs(a.tau - b.tau) / max(1.0, abs(a.tau))
        samples.append({"s": s, "deviation": max(dk, dt), "kappa_deviation": dk, "tau_deviation": dt, "isometry": k})
    return CheckReport.build("isometry", grid, samples, tol, f"{n_isometries} random B6 isometries, seed {seed}")


def arc_rate_consistency(pair: InvolutePair, s0: float, s1: float, tol: float = 1e-10) -> tuple[float, float]:
    """Integral of ``ds*/ds`` over ``[s0, s1]`` by adaptive Simpson and the
    involute's Euclidean arc length from its planar speed, same quadrature."""
    predicted = adaptive_simpson(lambda s: involute_frame(pair, s).dsstar_ds, s0, s1, tol)
    measured = adaptive_simpson(lambda s: planar_frenet(pair.involute, s).speed, s0, s1, tol)
    return predicted, measured
