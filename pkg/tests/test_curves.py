import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from galcurve.core import GVec3, IsometryParams, g_cross, g_dot
from galcurve.curves import (
    CurveSpec, PlanarCurve, admissible_from_spec, eval3, frenet, planar_frenet, reparametrize, transform_curve,
)
from galcurve.errors import DegenerateSpeed, FrameUndefined, NotAdmissible, NotAnIsometry, OutOfDomain, UsageError
from galcurve.expr import parse
from galcurve.involute import make_involute
from galcurve.jets import cos, sin

from conftest import helix_family, make_curve, random_expression_curve, richardson_derivs


def raw(x, y, z, domain=(-1.0, 1.0), **params):
    return CurveSpec(parse(x), parse(y), parse(z), domain, params)


def test_eval3_polynomial(cubic):
    pos, r1, r2, r3 = eval3(cubic, 0.0)
    assert pos == GVec3(0, 0, 0)
    assert (r1, r2, r3) == (GVec3(1, 0, 0), GVec3(0, 2, 0), GVec3(0, 0, 6))


def test_eval3_helix(helix):
    _, r1, r2, r3 = eval3(helix, 0.0)
    assert (r1, r2, r3) == (GVec3(1, 0, 1), GVec3(0, -1, 0), GVec3(0, 0, -1))


def test_eval3_out_of_domain(helix):
    with pytest.raises(OutOfDomain):
        eval3(helix, 3.5)


def test_reparametrize_linear_x():
    curve = reparametrize(raw("2*t", "t^2", "0"))
    assert curve.domain == (-2.0, 2.0)
    for s in np.linspace(-2, 2, 9):
        pos = curve.position(float(s))
        assert pos.y == pytest.approx(s * s / 4, abs=1e-14)
        assert frenet(curve, float(s)).kappa == pytest.approx(0.5, abs=1e-13)


def test_reparametrize_against_independent_root_finder():
    # kappa of (t^3 + t, t, 0) as a function of s: invert x with brentq,
    # then differentiate y(s) numerically
    curve = reparametrize(raw("t^3 + t", "t", "0"))

    def y_of_s(s):
        return brentq(lambda t: t ** 3 + t - s, -2.0, 2.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    for s in np.linspace(-1.5, 1.5, 13):
        d1, d2, _ = richardson_derivs(y_of_s, float(s), h=1e-2)
        fr = frenet(curve, float(s)) if abs(d2) > 1e-6 else None
        pos, r1, r2, _ = eval3(curve, float(s))
        assert r1.y == pytest.approx(d1, abs=1e-6)
        assert r2.y == pytest.approx(d2, abs=1e-6)
        if fr is not None:
            assert fr.kappa == pytest.approx(abs(d2), abs=1e-6)


def test_reparametrize_decreasing_x_reverses_orientation():
    curve = reparametrize(raw("-t", "t^2", "t^3"))
    assert curve.domain == (-1.0, 1.0)
    # s = -t, so y = s^2, z = -s^3
    pos, r1, r2, r3 = eval3(curve, 0.5)
    assert (pos.y, pos.z) == pytest.approx((0.25, -0.125))
    assert r1.x == 1.0
    assert (r1.y, r1.z, r2.y, r2.z, r3.z) == pytest.approx((1.0, -0.75, 2.0, -3.0, -6.0))


def test_not_admissible():
    with pytest.raises(NotAdmissible) as info:
        reparametrize(raw("t^2", "t", "0"))
    assert abs(info.value.t_witness) < 0.05


def test_reparametrize_identity_on_admissible_curve():
    spec = raw("t", "sin(t) + t^2", "exp(t)")
    direct = admissible_from_spec(spec)
    inverted = reparametrize(spec)
    for s in np.linspace(-1, 1, 21):
        a, b = eval3(direct, float(s)), eval3(inverted, float(s))
        for u, v in zip(a, b):
            assert u.as_tuple() == pytest.approx(v.as_tuple(), abs=1e-12)


def test_admissible_flag_requires_bare_parameter():
    with pytest.raises(UsageError):
        CurveSpec(parse("2*t"), parse("t"), parse("0"), (0.0, 1.0), admissible=True)


def test_frenet_polynomial(cubic):
    fr = frenet(cubic, 0.0)
    assert fr.kappa == 2.0 and fr.tau == 3.0
    assert fr.T == GVec3(1, 0, 0) and fr.N == GVec3(0, 1, 0)
    assert fr.B.as_tuple() == (0, 0, 1)
    # tau = 12 / (4 + 36 s^2) away from zero
    for s in (-0.7, 0.4, 2.5):
        assert frenet(cubic, s).tau == pytest.approx(12 / (4 + 36 * s * s), rel=1e-14)


@pytest.mark.parametrize("s", [-0.9, 0.0, 0.3, 0.8])
def test_frenet_helix_closed_form(s):
    fr = frenet(helix_family(1.0, 2.0), s)
    assert fr.kappa == pytest.approx(4.0, rel=1e-14)
    assert fr.tau == pytest.approx(2.0, rel=1e-14)


def test_frame_undefined_on_straight_line():
    line = make_curve("s", "s", "0", (0.0, 1.0), var="s")
    with pytest.raises(FrameUndefined) as info:
        frenet(line, 0.5)
    assert info.value.kappa == 0.0
    assert info.value.tangent == GVec3(1, 1, 0)


def test_frenet_matches_finite_difference_curvature_and_torsion():
    rng = np.random.default_rng(7)
    for _ in range(5):
        a, w = rng.uniform(0.5, 3.0, 2)
        curve = helix_family(a, w)
        y = lambda s: a * math.cos(w * s)
        z = lambda s: a * math.sin(w * s)
        for s in (-0.5, 0.1, 0.6):
            _, y2, y3 = richardson_derivs(y, s)
            _, z2, z3 = richardson_derivs(z, s)
            k = math.hypot(y2, z2)
            fr = frenet(curve, s)
            assert fr.kappa == pytest.approx(k, rel=1e-7)
            assert fr.tau == pytest.approx((y2 * z3 - z2 * y3) / k ** 2, rel=1e-6)


def test_planar_frenet_involute_of_helix(helix):
    pair = make_involute(helix, 2.0)
    pf = planar_frenet(pair.involute, 0.0)
    assert pf.speed == pytest.approx(2.0, abs=1e-14)
    assert pf.kappa_euclid == pytest.approx(0.5, abs=1e-14)
    assert pf.T_star.as_tuple() == pytest.approx((0, -1, 0))
    with pytest.raises(DegenerateSpeed):
        planar_frenet(pair.involute, 2.0)


def test_planar_frenet_circle():
    circle = PlanarCurve(1.0, lambda t: 3.0 * cos(t), lambda t: 3.0 * sin(t), (-5.0, 5.0))
    for s in np.linspace(-5, 5, 11):
        pf = planar_frenet(circle, float(s))
        assert pf.speed == pytest.approx(3.0, rel=1e-15)
        assert pf.kappa_euclid == pytest.approx(1 / 3, rel=1e-14)


def test_transform_identity(cubic):
    moved = transform_curve(cubic, IsometryParams())
    assert moved.domain == cubic.domain
    for s in np.linspace(-1, 3, 9):
        assert eval3(moved, float(s)) == eval3(cubic, float(s))


def test_transform_translation_shifts_parameter(cubic):
    moved = transform_curve(cubic, IsometryParams(a11=5.0))
    assert moved.domain == (4.0, 8.0)
    for s in (-0.5, 0.0, 1.2):
        a, b = frenet(cubic, s), frenet(moved, s + 5.0)
        assert b.kappa == pytest.approx(a.kappa, abs=1e-12)
        assert b.tau == pytest.approx(a.tau, abs=1e-12)


def test_transform_rejects_non_isometry(cubic):
    with pytest.raises(NotAnIsometry):
        transform_curve(cubic, IsometryParams(a12=2.0))


# -- properties ---------------------------------------------------------------

def _frame_residuals(curve, s, h=1e-4):
    fr, fm, fp = frenet(curve, s), frenet(curve, s - h), frenet(curve, s + h)
    dT, dN, dB = ((p - m) / (2 * h) for p, m in ((fp.T, fm.T), (fp.N, fm.N), (fp.B, fm.B)))
    return (
        (dT - fr.N * fr.kappa).euclid_norm(),
        (dN - fr.B * fr.tau).euclid_norm(),
        (dB + fr.N * fr.tau).euclid_norm(),
    )


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-0.9, 0.9))
def test_frenet_equations_hold(seed, s):
    curve = random_expression_curve(np.random.default_rng(seed))
    assert max(_frame_residuals(curve, s)) <= 1e-5


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-0.9, 0.9))
def test_frame_orthonormal_and_binormal_is_cross(seed, s):
    fr = frenet(random_expression_curve(np.random.default_rng(seed)), s)
    assert g_dot(fr.T, fr.T) == 1.0
    assert g_dot(fr.N, fr.N) == pytest.approx(1.0, abs=1e-9)
    assert g_dot(fr.B, fr.B) == pytest.approx(1.0, abs=1e-9)
    assert g_dot(fr.N, fr.B) == pytest.approx(0.0, abs=1e-9)
    assert g_cross(fr.T, fr.N).as_tuple() == pytest.approx(fr.B.as_tuple(), abs=1e-9)


angles = st.floats(0, 2 * math.pi)
coeffs = st.floats(-5, 5)


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs, coeffs, coeffs, coeffs, angles, st.floats(-0.9, 2.9))
def test_b6_invariance_of_curvature_and_torsion(a11, a21, a31, a22, a32, phi, s):
    curve = make_curve("s", "s^2 + sin(s)", "s^3", (-1.0, 3.0), var="s")
    iso = IsometryParams(a11=a11, a21=a21, a31=a31, a22=a22, a32=a32, phi=phi)
    a, b = frenet(curve, s), frenet(transform_curve(curve, iso), s + a11)
    assert b.kappa == pytest.approx(a.kappa, abs=1e-9)
    assert b.tau == pytest.approx(a.tau, abs=1e-9)
