"""Text grammar for expressions.

::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom (("^" | "**") ["-"] INT)?
    atom   := NUMBER | IDENT | "(" expr ")"

Identifiers may carry bracketed integer indices (``p[1][2]``).  Numbers are
integers or decimals, read exactly.  Parsing produces a raw tree of tuples;
:func:`superform.expr.normalize` turns it into a canonical expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

from .expr import GrassmannExpr, normalize
from .symbols import SymbolTable

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:\[\d+\])*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        op = self.peek()[1]
        if op == "-" and self.peek()[0] == "op":
            self.take()
            return ("neg", self.unary())
        if op == "+" and self.peek()[0] == "op":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num" or "." in val:
                raise ParseError("exponent must be an integer literal")
            node = ("pow", node, sign * int(val))
        return node

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return ("num", mpq(Fraction(val)))
        if kind == "ident":
            return ("sym", val)
        if val == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str):
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens)
    tree = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input at {p.peek()[1]!r}")
    return tree


def parse_expr(text: str, table: SymbolTable) -> GrassmannExpr:
    return normalize(parse(text), table)
