import math

import numpy as np
import pytest

from galcurve.curves import CurveSpec, admissible_from_spec
from galcurve.expr import parse


def richardson_derivs(f, x, h=1e-2, levels=2):
    """First three derivatives of a scalar function by central differences
    and ``levels`` Richardson steps (error O(h**(2 + 2 * levels)))."""

    def central(h):
        fp1, fm1 = f(x + h), f(x - h)
        fp2, fm2 = f(x + 2 * h), f(x - 2 * h)
        f0 = f(x)
        d1 = (fp1 - fm1) / (2 * h)
        d2 = (fp1 - 2 * f0 + fm1) / (h * h)
        d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h ** 3)
        return np.array([d1, d2, d3])

    table = [central(h / 2 ** k) for k in range(levels + 1)]
    for level in range(1, levels + 1):
        factor = 4 ** level
        table = [(factor * table[k + 1] - table[k]) / (factor - 1) for k in range(len(table) - 1)]
    return table[0]


def make_curve(x, y, z, domain=(-1.0, 1.0), var="t", **params):
    spec = CurveSpec(parse(x, var), parse(y, var), parse(z, var), domain, params)
    return admissible_from_spec(spec)


@pytest.fixture
def helix():
    return make_curve("s", "cos(s)", "sin(s)", (-1.0, 3.0), var="s")


@pytest.fixture
def cubic():
    """(s, s^2, s^3): curvature 2 and torsion 3 at s = 0."""
    return make_curve("s", "s^2", "s^3", (-1.0, 3.0), var="s")


def helix_family(a, w, domain=(-1.0, 1.0)):
    return make_curve("s", "a*cos(w*s)", "a*sin(w*s)", domain, var="s", a=a, w=w)


def random_expression_curve(rng):
    """An admissible curve (s, y, z) with random smooth coordinates and
    curvature bounded away from zero on [-1, 1]."""
    a, b, c, d, e, f = rng.uniform(0.5, 1.5, 6)
    y = f"{a:.6f}*sin({b:.6f}*s) + {c:.6f}*s^2 + 1.5*s^2"
    z = f"{d:.6f}*cos({e:.6f}*s) + {f:.6f}*s^3"
    return make_curve("s", y, z, (-1.0, 1.0), var="s")


def fd_kappa_tau(y, z, s, h=1e-2):
    """Curvature and torsion of (s, y(s), z(s)) from finite differences of
    plain scalar coordinate functions."""
    _, y2, y3 = richardson_derivs(y, s, h)
    _, z2, z3 = richardson_derivs(z, s, h)
    k = math.hypot(y2, z2)
    return k, (y2 * z3 - z2 * y3) / (k * k)


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line, print it, and fail the test if the criterion failed."""

    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
