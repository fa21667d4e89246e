"""Tokenizer and precedence parser for the arithmetic expression language.

Grammar (usual precedence, ``^`` binds tightest, exponents are integer
constants that may be negative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" exponent)?
    atom   := INT | NAME | "(" expr ")"

The parser returns a small tuple AST; interpreters live with the types they
build (:func:`to_laurent` here, cyclotomic rationals in :mod:`ratfun`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .errors import ParseError
from .polys import LaurentPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class Node(tuple):
    """AST node ``(kind, col, *children)``."""

    @property
    def kind(self):
        return self[0]

    @property
    def col(self):
        return self[1]


def _node(kind, col, *args):
    return Node((kind, col) + args)


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", column=col)
            out.append(("op", ch, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}, found {_describe(tok)}", column=tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {_describe(tok)}", column=tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            kind, sym, col = self.take()
            node = _node("add" if sym == "+" else "sub", col, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            kind, sym, col = self.take()
            node = _node("mul" if sym == "*" else "div", col, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else _node("neg", tok[2], inner)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            return _node("pow", tok[2], base, self.exponent())
        return base

    def exponent(self) -> int:
        tok = self.take()
        if tok[0] == "int":
            return tok[1]
        if tok[0] == "op" and tok[1] == "-":
            nxt = self.take()
            if nxt[0] != "int":
                raise ParseError("exponent must be an integer", column=nxt[2])
            return -nxt[1]
        if tok[0] == "op" and tok[1] == "(":
            inner = self.expr()
            self.expect(")")
            value = const_value(inner)
            if value is None or value.denominator != 1:
                raise ParseError("exponent must be an integer", column=tok[2])
            return int(value)
        raise ParseError(f"expected exponent, found {_describe(tok)}", column=tok[2])

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return _node("num", tok[2], tok[1])
        if tok[0] == "name":
            return _node("var", tok[2], tok[1])
        if tok[0] == "op" and tok[1] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {_describe(tok)}", column=tok[2])


def _describe(tok):
    if tok[0] == "end":
        return "end of input"
    return repr(str(tok[1]))


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


def const_value(node) -> Fraction | None:
    """Value of a variable-free AST, or ``None``."""
    kind = node.kind
    if kind == "num":
        return Fraction(node[2])
    if kind == "var":
        return None
    if kind == "neg":
        v = const_value(node[2])
        return None if v is None else -v
    if kind == "pow":
        v = const_value(node[2])
        if v is None or (v == 0 and node[3] < 0):
            return None
        return v ** node[3]
    a, b = const_value(node[2]), const_value(node[3])
    if a is None or b is None:
        return None
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if b == 0:
        return None
    return a / b


def to_laurent(node, varmap: Mapping[str, int], nvars: int) -> LaurentPoly:
    """Interpret an AST as a Laurent polynomial.

    Division is allowed only by a nonzero constant or a monomial; negative
    powers only of monomials.
    """
    kind = node.kind
    if kind == "num":
        return LaurentPoly.const(nvars, node[2])
    if kind == "var":
        name = node[2]
        if name not in varmap:
            raise ParseError(f"unknown variable {name!r}", column=node.col)
        return LaurentPoly.var(nvars, varmap[name])
    if kind == "neg":
        return -to_laurent(node[2], varmap, nvars)
    if kind == "pow":
        base = to_laurent(node[2], varmap, nvars)
        if node[3] < 0 and not base.is_monomial():
            raise ParseError("negative exponent of a non-monomial", column=node.col)
        return base ** node[3]
    a = to_laurent(node[2], varmap, nvars)
    b = to_laurent(node[3], varmap, nvars)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if not b.is_monomial():
        raise ParseError("division is only allowed by a nonzero monomial here", column=node.col)
    return a * b ** -1


def parse_laurent(text: str, names, *, column_offset: int = 0) -> LaurentPoly:
    varmap = {name: i for i, name in enumerate(names)}
    try:
        return to_laurent(parse_expr(text), varmap, len(names))
    except ParseError as exc:
        if exc.column is not None and column_offset:
            raise ParseError(exc.message, exc.line, exc.column + column_offset) from None
        raise
