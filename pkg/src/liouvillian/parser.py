"""Recursive-descent parser for rational functions of ``x``.

Grammar (``^`` binds tightest, unary minus below it, so ``-x^2 = -(x^2)``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | "x" | "(" expr ")"

Numbers are integers or finite decimals and are read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, ZeroDenominator
from .ratfun import RatFun

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<var>x)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[col]!r}", col, ("number", "x", "operator"))
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def _fail(self, expected: tuple[str, ...]):
        t = self.tok
        what = "end of input" if t.kind == "end" else f"unexpected {t.text!r}"
        raise ExprSyntaxError(what, t.column, expected)

    def parse(self) -> RatFun:
        value = self.expr()
        if self.tok.kind != "end":
            self._fail(("operator", "end of input"))
        return value

    def expr(self) -> RatFun:
        value = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self._take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFun:
        value = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op_tok = self._take()
            rhs = self.unary()
            if op_tok.text == "*":
                value = value * rhs
            elif not rhs:
                raise ZeroDenominator(f"division by zero at column {op_tok.column}")
            else:
                value = value / rhs
        return value

    def unary(self) -> RatFun:
        if self.tok.kind == "op" and self.tok.text in ("-", "+"):
            sign = self._take().text
            inner = self.unary()
            return -inner if sign == "-" else inner
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self._take()
            negative = False
            if self.tok.kind == "op" and self.tok.text == "-":
                self._take()
                negative = True
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                self._fail(("integer exponent",))
            k = int(self._take().text)
            if negative:
                if not base:
                    raise ZeroDenominator(f"zero raised to a negative power at column {caret.column}")
                k = -k
            return base**k
        return base

    def atom(self) -> RatFun:
        t = self.tok
        if t.kind == "num":
            self._take()
            return RatFun.constant(Fraction(t.text))
        if t.kind == "var":
            self._take()
            return RatFun.x()
        if t.kind == "op" and t.text == "(":
            self._take()
            value = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                self._fail(("')'",))
            self._take()
            return value
        self._fail(("number", "x", "'('"))


def parse_ratfun(text: str) -> RatFun:
    """Parse ``text`` into an exact :class:`RatFun`."""
    return _Parser(text).parse()


def format_ratfun(r: RatFun) -> str:
    """Printer whose output :func:`parse_ratfun` reads back to the same value."""
    return r.to_string("x")


def parse_rational(text: str) -> Fraction:
    """Exact ``p/q`` (or decimal) literal, as accepted by the CLI."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExprSyntaxError(f"not a rational number: {text!r}", 0, ("p/q",)) from exc

