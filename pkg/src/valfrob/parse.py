"""Recursive-descent parser for the ASCII expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | '(' expr ')'

Integer literals are reduced mod p.  Over F_q with q > p the field generator
is available under ``FieldDescriptor.generator_name`` (default ``g``).
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownVariableError, ZeroDenominatorError
from .poly import FieldDescriptor, Polynomial, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, K: FieldDescriptor):
        self.K = K
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominatorError(f"division by zero (at position {pos})")
                value = value / rhs
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            exp = self.take("int")[1]
            if neg:
                if base.is_zero():
                    raise ZeroDenominatorError(f"negative power of zero (at position {pos})")
                return base.inverse() ** exp
            return base**exp
        return base

    def atom(self):
        kind, val, pos = self.peek()
        K = self.K
        if kind == "int":
            self.take()
            return K.const(K.base.from_int(val))
        if kind == "name":
            self.take()
            if val in K.variables:
                return K.var(val)
            if K.base.k > 1 and val == K.generator_name:
                return K.const(K.base.generator())
            raise UnknownVariableError(f"unknown variable {val!r}", pos)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos)


def rf_parse(text: str, K: FieldDescriptor) -> RationalFunction:
    """Parse ``text`` into an exact element of ``K``."""
    return _Parser(text, K).parse()


def poly_parse(text: str, K: FieldDescriptor) -> Polynomial:
    """Parse an expression that must denote a polynomial."""
    f = rf_parse(text, K)
    g = f.as_polynomial()
    if g is None:
        raise ParseError(f"{text!r} is not a polynomial")
    return g
