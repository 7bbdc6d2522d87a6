"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is ignored)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := nat ['/' nat] | ident | '(' expr ')'

Identifiers may carry trailing apostrophes (``u'``, ``w'``) so that primed
generator names round-trip through text.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Sequence

from .poly import Poly

__all__ = ["ParseError", "parse_expression", "format_poly"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str) -> List[_Tok]:
    text = text.replace("−", "-")
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.toks = _tokenize(text)
        self.i = 0
        if variables is None:
            seen = []
            for t in self.toks:
                if t.kind == "ident" and t.text not in seen:
                    seen.append(t.text)
            self.variables = tuple(seen)
            self.whitelist = False
        else:
            self.variables = tuple(variables)
            self.whitelist = True

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str) -> None:
        t = self.peek()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}", t.pos)
        self.take()

    def parse(self) -> Poly:
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return p

    def expr(self) -> Poly:
        negate = False
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            negate = t.text == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t.text == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.base()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            e = self.peek()
            if e.kind != "num":
                raise ParseError("expected a non-negative integer exponent", e.pos)
            self.take()
            return base ** int(e.text)
        return base

    def base(self) -> Poly:
        t = self.peek()
        if t.kind == "num":
            self.take()
            value = Fraction(int(t.text))
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                d = self.peek()
                if d.kind != "num":
                    raise ParseError("expected a denominator", d.pos)
                self.take()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.pos)
                value /= int(d.text)
            return Poly.const(value, self.variables)
        if t.kind == "ident":
            self.take()
            if t.text not in self.variables:
                raise ParseError(f"unknown identifier {t.text!r}", t.pos)
            return Poly.var(t.text, self.variables)
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_expression(text: str, variables: Sequence[str] | None = None) -> Poly:
    """Parse ``text`` into a :class:`Poly`.

    With ``variables`` given, the result lives over exactly that tuple and
    any other identifier is an error; otherwise variables are collected in
    order of first appearance.
    """
    return _Parser(text, variables).parse()


def format_poly(p: Poly) -> str:
    return str(p)
