"""
Tiny arithmetic expression language in one variable ``t``.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 't' | FUNC '(' expr ')' | '(' expr ')'

``^`` is right associative and binds tighter than unary minus, so
``-2^2 == -4`` and ``2^3^2 == 512``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import EvaluationError, ExprSyntaxError, UnknownIdentifierError

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "parse",
    "evaluate",
    "numeric_derivative",
    "FUNCTIONS",
    "Compiled",
]


def _sqrt(x):
    if x < 0:
        raise EvaluationError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


def _log(x):
    if x <= 0:
        raise EvaluationError(f"log of nonpositive value {x!r}")
    return math.log(x)


FUNCTIONS = {
    "sqrt": _sqrt,
    "cosh": math.cosh,
    "sinh": math.sinh,
    "exp": math.exp,
    "log": _log,
    "abs": abs,
}


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        text = repr(float(self.value))
        return f"({text})" if math.copysign(1.0, self.value) < 0 else text


@dataclass(frozen=True)
class Var:
    def __str__(self):
        return "t"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"

    def __str__(self):
        return f"(-{self.operand})"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"

    def __str__(self):
        return f"{self.name}({self.arg})"


Expr = Union[Num, Var, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(kind), _offset(text, pos)))
        pos = m.end()
    tokens.append(("end", "", _offset(text, len(text))))
    return tokens


def _offset(text, index):
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, off = self.tok
        if text != value or kind != "op":
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", off)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, text, off = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {text!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok[0] == "op" and self.tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        if self.tok[0] == "op" and self.tok[1] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, text, off = self.tok
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "name":
            self.advance()
            if text == "t":
                return Var()
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise UnknownIdentifierError(f"unknown identifier {text!r}", off)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected operand, found {found}", off)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises
    ------
    ExprSyntaxError
        With the byte offset of the first offending token.
    UnknownIdentifierError
        For names other than ``t`` and the supported functions.
    """
    return _Parser(text).parse()


def _pow(base, exponent):
    if base == 0 and exponent < 0:
        raise EvaluationError("zero raised to a negative power")
    if base < 0 and not float(exponent).is_integer():
        raise EvaluationError(f"negative base {base!r} with non-integer exponent")
    return math.pow(base, exponent)


def evaluate(e: Expr, t: float) -> float:
    """Evaluate ``e`` at ``t`` in double precision.

    Division by zero, logarithms of nonpositive numbers, square roots of
    negative numbers and overflow raise :class:`EvaluationError`.
    """
    try:
        value = _eval(e, float(t))
    except OverflowError as exc:
        raise EvaluationError(f"overflow: {exc}") from None
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite result {value!r}")
    return value


def _eval(e, t):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return t
    if isinstance(e, Neg):
        return -_eval(e.operand, t)
    if isinstance(e, Call):
        return FUNCTIONS[e.name](_eval(e.arg, t))
    left = _eval(e.left, t)
    right = _eval(e.right, t)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if e.op == "/":
        if right == 0:
            raise EvaluationError("division by zero")
        return left / right
    return _pow(left, right)


def numeric_derivative(e: Expr, t: float, h_step: float | None = None) -> float:
    """Central difference ``(f(t+h) - f(t-h)) / 2h``."""
    if h_step is None:
        h_step = 1e-6 * max(1.0, abs(t))
    return (evaluate(e, t + h_step) - evaluate(e, t - h_step)) / (2.0 * h_step)


class Compiled:
    """An expression paired with its source text, callable as ``f(t)``."""

    __slots__ = ("source", "tree")

    def __init__(self, source: str):
        self.source = source
        self.tree = parse(source)

    def __call__(self, t):
        return evaluate(self.tree, t)

    def __repr__(self):
        return f"Compiled({self.source!r})"
