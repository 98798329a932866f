"""Small numerical building blocks: fixed-step RK4, cubic Hermite, adaptive Simpson."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

__all__ = ["rk4", "hermite_cubic", "adaptive_simpson", "sample_grid"]


def sample_grid(lo: float, hi: float, n: int) -> list[float]:
    """``n`` equally spaced samples including both endpoints."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    return [float(v) for v in np.linspace(lo, hi, n)]


def rk4(
    f: Callable[[float, np.ndarray], np.ndarray],
    y0: Sequence[float],
    s0: float,
    s1: float,
    h: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Classical 4th-order Runge-Kutta from ``s0`` to ``s1``.

    The step count is ``ceil((s1 - s0) / h)`` and the step is shrunk evenly so
    the last node lands on ``s1``.  Returns ``(nodes, states)`` with one state
    row per node.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    steps = max(1, math.ceil((s1 - s0) / h - 1e-9))
    nodes = np.linspace(s0, s1, steps + 1)
    states = np.empty((steps + 1, len(y0)))
    y = np.asarray(y0, dtype=float)
    states[0] = y
    for k in range(steps):
        s, dt = nodes[k], nodes[k + 1] - nodes[k]
        k1 = f(s, y)
        k2 = f(s + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = f(s + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = f(s + dt, y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[k + 1] = y
    return nodes, states


def hermite_cubic(s0: float, s1: float, y0: float, y1: float, m0: float, m1: float, s: float) -> tuple[float, float]:
    """Value and slope at ``s`` of the cubic through ``(s0, y0, m0)`` and ``(s1, y1, m1)``."""
    h = s1 - s0
    u = (s - s0) / h
    u2, u3 = u * u, u * u * u
    value = (
        (2 * u3 - 3 * u2 + 1) * y0
        + (u3 - 2 * u2 + u) * h * m0
        + (-2 * u3 + 3 * u2) * y1
        + (u3 - u2) * h * m1
    )
    slope = (
        (6 * u2 - 6 * u) * (y0 - y1) / h
        + (3 * u2 - 4 * u + 1) * m0
        + (3 * u2 - 2 * u) * m1
    )
    return value, slope


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_depth: int = 50) -> float:
    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1) + recurse(m, b, fm, frm, fb, right, tol / 2, depth - 1)

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)
