"""Small expression parser for catalog files and canonical text forms.

Syntax: ``+ - * / ^`` with parentheses, integer literals, canonical
variables ``q1 p1 q2 p2`` (aliases ``x1 y1 x2 y2`` for the same slots)
and the parameter symbols ``h a1..a6 eta t1 t2``.  Multiplication is
explicit.  Division requires an invertible right factor (a scalar or an
invertible Laurent monomial), matching the localization rules of the
algebra.
"""

from __future__ import annotations

import re

from .field import Rat, SYMBOLS, sym
from .weyl import WeylElement

__all__ = ["ParseError", "parse_weyl", "parse_rat"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|/|\+|-|\(|\)))")

_VAR_ALIASES = {"x1": "q1", "y1": "p1", "x2": "q2", "y2": "p2"}
_VAR_NAMES = {"q1", "p1", "q2", "p2"} | set(_VAR_ALIASES)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not text[pos:].strip():
            break
        if not m:
            raise ParseError(f"bad character at {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("num", int(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3)))
    if text[pos:].strip():
        raise ParseError(f"bad character at {text[pos:pos + 10]!r}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> WeylElement:
        e = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return e

    def expr(self) -> WeylElement:
        kind, val = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.next()
            neg = val == "-"
        e = self.term()
        if neg:
            e = -e
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = e - rhs if val == "-" else e + rhs
            else:
                return e

    def term(self) -> WeylElement:
        e = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.power()
                e = e * rhs if val == "*" else e / rhs
            else:
                return e

    def power(self) -> WeylElement:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val = self.next()
            sign = 1
            if kind == "op" and val == "-":
                sign = -1
                kind, val = self.next()
            if kind != "num":
                raise ParseError(f"expected integer exponent in {self.text!r}")
            return base ** (sign * val)
        return base

    def atom(self) -> WeylElement:
        kind, val = self.next()
        if kind == "num":
            return WeylElement.scalar(val)
        if kind == "name":
            if val in _VAR_NAMES:
                return WeylElement.generator(_VAR_ALIASES.get(val, val))
            if val in SYMBOLS:
                return WeylElement.scalar(sym(val))
            raise ParseError(f"unknown name {val!r} in {self.text!r}")
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_weyl(text: str) -> WeylElement:
    """Parse an expression in canonical variables and parameters."""
    return _Parser(text).parse()


def parse_rat(text: str) -> Rat:
    """Parse a scalar expression to a field element."""
    e = parse_weyl(text)
    if not e.is_scalar():
        raise ParseError(f"expected a scalar expression, got {text!r}")
    s = e.terms.get((0, 0, 0, 0))
    if s is None:
        return Rat(0)
    if not isinstance(s, Rat):
        raise ParseError("unknown-bearing scalar")
    return s
