"""Order-3 forward-mode differentiation.

A :class:`Jet3` holds ``(v, d1, d2, d3)``: the value of a scalar function of
the curve parameter together with its first three derivatives.  Arithmetic
follows the Leibniz and Faa di Bruno rules truncated after the third
derivative, which is exactly what curvature and torsion need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import DivisionByZero, DomainError

__all__ = [
    "Jet3",
    "jet_var",
    "jet_const",
    "jet_apply",
    "compose",
    "sin",
    "cos",
    "exp",
    "log",
    "sqrt",
    "pow_int",
    "OPS",
]

Number = Union[int, float]


@dataclass(frozen=True)
class Jet3:
    v: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.v, self.d1, self.d2, self.d3)

    def __add__(self, other: Jet3 | Number) -> Jet3:
        o = _lift(other)
        return Jet3(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)

    __radd__ = __add__

    def __sub__(self, other: Jet3 | Number) -> Jet3:
        o = _lift(other)
        return Jet3(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)

    def __rsub__(self, other: Number) -> Jet3:
        return _lift(other) - self

    def __neg__(self) -> Jet3:
        return Jet3(-self.v, -self.d1, -self.d2, -self.d3)

    def __mul__(self, other: Jet3 | Number) -> Jet3:
        if not isinstance(other, Jet3):
            k = float(other)
            return Jet3(k * self.v, k * self.d1, k * self.d2, k * self.d3)
        a, b = self, other
        return Jet3(
            a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * (a.d2 * b.d1 + a.d1 * b.d2) + a.v * b.d3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Jet3 | Number) -> Jet3:
        if not isinstance(other, Jet3):
            if other == 0:
                raise DivisionByZero("division by zero")
            k = float(other)
            return Jet3(self.v / k, self.d1 / k, self.d2 / k, self.d3 / k)
        return _quotient(self, other)

    def __rtruediv__(self, other: Number) -> Jet3:
        return _quotient(_lift(other), self)

    def __pow__(self, n: int) -> Jet3:
        return pow_int(self, n)


def _lift(x: Jet3 | Number) -> Jet3:
    return x if isinstance(x, Jet3) else Jet3(float(x))


def jet_var(t0: float) -> Jet3:
    """The independent variable seeded at ``t0``."""
    return Jet3(float(t0), 1.0, 0.0, 0.0)


def jet_const(c: float) -> Jet3:
    return Jet3(float(c))


def compose(f0: float, f1: float, f2: float, f3: float, g: Jet3) -> Jet3:
    """Jet of ``f(g)`` given ``f`` and its first three derivatives at ``g.v``."""
    g1, g2, g3 = g.d1, g.d2, g.d3
    return Jet3(
        f0,
        f1 * g1,
        f2 * g1 * g1 + f1 * g2,
        f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3,
    )


def _quotient(a: Jet3, b: Jet3) -> Jet3:
    # solve q * b = a order by order; the value is the plain float quotient
    if b.v == 0.0:
        raise DivisionByZero("division by a quantity with zero value")
    q0 = a.v / b.v
    q1 = (a.d1 - q0 * b.d1) / b.v
    q2 = (a.d2 - 2.0 * q1 * b.d1 - q0 * b.d2) / b.v
    q3 = (a.d3 - 3.0 * (q2 * b.d1 + q1 * b.d2) - q0 * b.d3) / b.v
    return Jet3(q0, q1, q2, q3)


def reciprocal(g: Jet3) -> Jet3:
    x = g.v
    if x == 0.0:
        raise DivisionByZero("division by a quantity with zero value")
    r = 1.0 / x
    return compose(r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4, g)


def sin(g: Jet3) -> Jet3:
    s, c = math.sin(g.v), math.cos(g.v)
    return compose(s, c, -s, -c, g)


def cos(g: Jet3) -> Jet3:
    s, c = math.sin(g.v), math.cos(g.v)
    return compose(c, -s, -c, s, g)


def exp(g: Jet3) -> Jet3:
    e = math.exp(g.v)
    return compose(e, e, e, e, g)


def log(g: Jet3) -> Jet3:
    x = g.v
    if x <= 0.0:
        raise DomainError(f"log of non-positive value {x!r}")
    r = 1.0 / x
    return compose(math.log(x), r, -r * r, 2.0 * r ** 3, g)


def sqrt(g: Jet3) -> Jet3:
    x = g.v
    if x <= 0.0:
        raise DomainError(f"sqrt of non-positive value {x!r}")
    q = math.sqrt(x)
    return compose(q, 0.5 / q, -0.25 / (q * x), 0.375 / (q * x * x), g)


def pow_int(g: Jet3, n: int) -> Jet3:
    """``g ** n`` for a nonnegative integer ``n`` (any sign of ``g.v``).

    The value is ``g.v ** n`` exactly as plain float arithmetic computes it;
    derivatives follow the power rule.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"exponent must be a nonnegative integer, got {n!r}")
    n = int(n)
    x = g.v

    def term(k: int) -> float:
        # n (n-1) ... (n-k+1) x**(n-k), zero once the falling factorial vanishes
        coeff = math.perm(n, k)
        return coeff * x ** (n - k) if coeff else 0.0

    return compose(x ** n, term(1), term(2), term(3), g)


OPS: dict[str, Callable[..., Jet3]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a: -a,
    "pow_int": pow_int,
    "sin": sin,
    "cos": cos,
    "exp": exp,
    "sqrt": sqrt,
}


def jet_apply(op: str, args: Sequence[Jet3 | int]) -> Jet3:
    """Apply a named operation to jet arguments (``pow_int`` takes ``(jet, n)``)."""
    try:
        fn = OPS[op]
    except KeyError:
        raise ValueError(f"unknown jet operation {op!r}") from None
    return fn(*args)
