import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from galcurve.errors import DivisionByZero, DomainError
from galcurve.expr import BinOp, Call, Num, Pow, Var, eval_jet, eval_scalar
from galcurve.jets import Jet3, jet_apply, jet_const, jet_var, pow_int, reciprocal

from conftest import richardson_derivs


def test_jet_var():
    assert jet_var(2.5).as_tuple() == (2.5, 1, 0, 0)
    assert jet_var(0).as_tuple() == (0, 1, 0, 0)
    assert (jet_var(1.5) + jet_const(2.0)).as_tuple() == (3.5, 1, 0, 0)


def test_jet_apply_examples():
    assert jet_apply("mul", [jet_var(3), jet_var(3)]).as_tuple() == (9, 6, 2, 0)
    assert jet_apply("sin", [jet_var(0)]).as_tuple() == (0, 1, 0, -1)
    assert jet_apply("div", [jet_const(1), jet_var(2)]).as_tuple() == (0.5, -0.25, 0.25, -0.375)


def test_jet_errors():
    with pytest.raises(DivisionByZero):
        jet_apply("div", [jet_const(1), jet_var(0)])
    with pytest.raises(DomainError):
        jet_apply("sqrt", [jet_var(-1)])
    with pytest.raises(DomainError):
        jet_apply("sqrt", [jet_var(0)])
    with pytest.raises(ValueError):
        jet_apply("tan", [jet_var(0)])


def test_pow_int_matches_repeated_multiplication():
    x = Jet3(1.3, 0.7, -0.2, 0.4)
    for n in (1, 2, 5, 11):
        direct = x
        for _ in range(n - 1):
            direct = direct * x
        assert pow_int(x, n).as_tuple() == pytest.approx(direct.as_tuple(), rel=1e-12)
    assert pow_int(Jet3(-2.0, 1.0), 3).as_tuple() == (-8, 12, -12, 6)
    assert pow_int(jet_var(0.0), 1).as_tuple() == (0, 1, 0, 0)
    assert pow_int(x, 0).as_tuple() == (1, 0, 0, 0)
    assert pow_int(Jet3(-2.0, 1.0), 9).v == -512
    with pytest.raises(DomainError):
        pow_int(x, -1)


def test_quotient_matches_reciprocal_product():
    a, b = Jet3(0.3, -1.2, 0.5, 2.0), Jet3(1.7, 0.4, -0.9, 0.1)
    assert (a / b).as_tuple() == pytest.approx((a * reciprocal(b)).as_tuple(), rel=1e-13)


def _random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return Var("t") if rng.random() < 0.6 else Num(float(np.round(rng.uniform(-2, 2), 3)))
    kind = rng.integers(7)
    a = _random_tree(rng, depth - 1)
    if kind == 0:
        return BinOp("+", a, _random_tree(rng, depth - 1))
    if kind == 1:
        return BinOp("-", a, _random_tree(rng, depth - 1))
    if kind == 2:
        return BinOp("*", a, _random_tree(rng, depth - 1))
    if kind == 3:
        # denominator kept in [1, 3]
        return BinOp("/", a, BinOp("+", Num(2.0), Call("sin", _random_tree(rng, depth - 1))))
    if kind == 4:
        return Call("sin" if rng.random() < 0.5 else "cos", a)
    if kind == 5:
        return Call("exp", Call("sin", a))
    if rng.random() < 0.5:
        return Call("sqrt", BinOp("+", Num(2.0), Call("cos", a)))
    return Pow(a, int(rng.integers(0, 4)))


def test_jets_match_finite_differences_on_random_compositions():
    rng = np.random.default_rng(20261018)
    worst = 0.0
    for _ in range(1000):
        e = _random_tree(rng, 4)
        t0 = float(rng.uniform(-1, 1))
        jet = eval_jet(e, jet_var(t0))
        fd = richardson_derivs(lambda t: eval_scalar(e, t), t0, h=1e-2)
        for got, ref in zip((jet.d1, jet.d2, jet.d3), fd):
            err = abs(got - ref) / max(1.0, abs(ref))
            worst = max(worst, err)
    assert worst <= 1e-6


finite = st.floats(-10, 10, allow_nan=False)
jets = st.builds(Jet3, finite, finite, finite, finite)


@given(jets, jets)
def test_mul_commutative(a, b):
    assert (a * b).as_tuple() == pytest.approx((b * a).as_tuple(), rel=1e-12, abs=1e-12)


@given(jets, jets, jets)
def test_mul_associative(a, b, c):
    left, right = ((a * b) * c).as_tuple(), (a * (b * c)).as_tuple()
    scale = 1.0 + max(map(abs, a.as_tuple())) * max(map(abs, b.as_tuple())) * max(map(abs, c.as_tuple()))
    for x, y in zip(left, right):
        assert abs(x - y) <= 1e-12 * scale * 8


@given(jets, jets)
def test_add_componentwise(a, b):
    assert (a + b).as_tuple() == tuple(x + y for x, y in zip(a.as_tuple(), b.as_tuple()))


def test_chain_rule_known_values():
    # d^k/dt^k exp(2t) at t = 0.3
    e = math.exp(0.6)
    got = jet_apply("exp", [jet_var(0.3) * 2.0]).as_tuple()
    assert got == pytest.approx((e, 2 * e, 4 * e, 8 * e), rel=1e-14)
