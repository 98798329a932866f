"""Coordinate expressions: tokenizer, recursive-descent parser, printer, evaluators.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INTEGER)?
    atom    := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'

``FUNC`` is one of ``sin cos exp sqrt``.  ``^`` binds tighter than unary
minus, so ``-t^2`` is ``-(t^2)``.  The identifier named by ``var`` (``t`` by
default) is the curve parameter; every other identifier is a named constant.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import jets
from .errors import DomainError, DivisionByZero, ExprSyntaxError, NumericError, UnboundParameter, UnknownFunction
from .jets import Jet3

__all__ = [
    "FUNCTIONS",
    "Num",
    "Var",
    "Param",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "Expr",
    "parse",
    "unparse",
    "free_params",
    "eval_jet",
    "eval_scalar",
]

FUNCTIONS = ("sin", "cos", "exp", "sqrt")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = "t"


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Param, Neg, BinOp, Pow, Call]


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'number', 'ident', 'op', 'end'
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", byte_pos)
        chunk = m.group()
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, chunk, byte_pos))
        pos = m.end()
        byte_pos += len(chunk.encode("utf-8"))
    tokens.append(_Token("end", "", byte_pos))
    return tokens


_ATOM_START = frozenset({"number", "identifier", "'('", "'-'"})


class _Parser:
    def __init__(self, text: str, var: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.var = var

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _is(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def _advance(self) -> _Token:
        tok = self.tok
        self.i += 1
        return tok

    def _expect(self, text: str) -> None:
        if not self._is(text):
            raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset, frozenset({repr(text)}))
        self._advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(
                f"unexpected {self._describe()}",
                self.tok.offset,
                frozenset({"end of input", "'+'", "'-'", "'*'", "'/'", "'^'"}),
            )
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._is("+") or self._is("-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self._is("*") or self._is("/"):
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._is("-"):
            self._advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._is("^"):
            self._advance()
            tok = self.tok
            if tok.kind != "number" or not tok.text.isdigit():
                raise ExprSyntaxError(
                    f"exponent must be an integer literal, got {self._describe()}",
                    tok.offset,
                    frozenset({"integer"}),
                )
            self._advance()
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "number":
            self._advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self._advance()
            if self._is("("):
                if tok.text not in FUNCTIONS:
                    raise UnknownFunction(tok.text, tok.offset)
                self._advance()
                arg = self.expr()
                self._expect(")")
                return Call(tok.text, arg)
            if tok.text in FUNCTIONS:
                # call syntax requires parentheses
                raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset, frozenset({"'('"}))
            if tok.text == self.var:
                return Var(tok.text)
            return Param(tok.text)
        if self._is("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {self._describe()}", tok.offset, _ATOM_START)


def parse(text: str, var: str = "t") -> Expr:
    """Parse ``text`` into an expression tree with ``var`` as the parameter."""
    return _Parser(text, var).parse()


def free_params(e: Expr) -> frozenset[str]:
    if isinstance(e, Param):
        return frozenset({e.name})
    if isinstance(e, (Num, Var)):
        return frozenset()
    if isinstance(e, BinOp):
        return free_params(e.left) | free_params(e.right)
    if isinstance(e, Neg):
        return free_params(e.operand)
    if isinstance(e, Pow):
        return free_params(e.base)
    return free_params(e.arg)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    return 4


def unparse(e: Expr) -> str:
    """Text that parses back to exactly ``e``."""
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, (Var, Param)):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({unparse(e.arg)})"
    if isinstance(e, Neg):
        inner = unparse(e.operand)
        return f"-({inner})" if isinstance(e.operand, BinOp) else f"-{inner}"
    if isinstance(e, Pow):
        base = unparse(e.base)
        if _prec(e.base) < 4 or isinstance(e.base, Pow):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    p = _PREC[e.op]
    left, right = unparse(e.left), unparse(e.right)
    if isinstance(e.left, BinOp) and _PREC[e.left.op] < p:
        left = f"({left})"
    if isinstance(e.right, BinOp) and _PREC[e.right.op] <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


def _lookup(name: str, params: Mapping[str, float]) -> float:
    try:
        return float(params[name])
    except KeyError:
        raise UnboundParameter(name) from None


def _eval_jet(e: Expr, t: Jet3, params: Mapping[str, float]) -> Jet3:
    if isinstance(e, Num):
        return Jet3(e.value)
    if isinstance(e, Var):
        return t
    if isinstance(e, Param):
        return Jet3(_lookup(e.name, params))
    if isinstance(e, Neg):
        return -_eval_jet(e.operand, t, params)
    if isinstance(e, Pow):
        return jets.pow_int(_eval_jet(e.base, t, params), e.exponent)
    if isinstance(e, Call):
        return getattr(jets, e.func)(_eval_jet(e.arg, t, params))
    a = _eval_jet(e.left, t, params)
    b = _eval_jet(e.right, t, params)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    return a / b


def eval_jet(e: Expr, t: Jet3, params: Mapping[str, float] | None = None) -> Jet3:
    """Jet of ``e`` at ``t``; named constants come from ``params``."""
    params = params or {}
    missing = free_params(e) - params.keys()
    if missing:
        raise UnboundParameter(sorted(missing)[0])
    try:
        return _eval_jet(e, t, params)
    except NumericError as err:
        if err.at is None:
            raise type(err)(str(err), at=t.v) from err
        raise


_SCALAR_FUNCS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "sqrt": math.sqrt}


def eval_scalar(e: Expr, t: float, params: Mapping[str, float] | None = None) -> float:
    """Plain float evaluation (no derivatives)."""
    params = params or {}

    def ev(node: Expr) -> float:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Var):
            return t
        if isinstance(node, Param):
            return _lookup(node.name, params)
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        if isinstance(node, Call):
            x = ev(node.arg)
            if node.func == "sqrt" and x <= 0.0:
                raise DomainError(f"sqrt of non-positive value {x!r}", at=t)
            return _SCALAR_FUNCS[node.func](x)
        a, b = ev(node.left), ev(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0.0:
            raise DivisionByZero("division by zero", at=t)
        return a / b

    return ev(e)
