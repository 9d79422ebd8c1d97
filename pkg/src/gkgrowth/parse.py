"""Parser for polynomial (and rational-function) entry expressions.

Grammar for polynomial entries, with standard precedence
(``^`` binds tighter than unary minus, which binds tighter than ``*``,
which binds tighter than binary ``+``/``-``)::

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    atom     := INT ('/' INT)?      -- rational literal such as 3/2
              | NAME                -- a ring variable
              | '(' expr ')'
    exponent := INT | '(' INT ')'   -- non-negative only

Whitespace is ignored between tokens.  Implicit multiplication is not
allowed: ``2x`` is a syntax error.  A negative exponent is rejected with
a dedicated error.  For rational-function rings only, ``/`` is also a
binary operator at the precedence of ``*`` and exponents may be negative.
"""

from __future__ import annotations

import re

from ._ratio import QQ
from .errors import NegativeExponentError, PolyParseError, UnknownVariableError
from .poly import Poly, PolyRing, RatFunc, RatFuncField, RationalField

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PolyParseError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent evaluator; builds exact ring elements directly."""

    def __init__(self, text: str, ring, allow_division: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0
        self.ring = ring
        self.allow_division = allow_division

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected {text!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, op, pos = self.peek()
            if kind == "op" and op == "*":
                self.advance()
                value = value * self.unary()
            elif kind == "op" and op == "/" and self.allow_division:
                self.advance()
                divisor = self.unary()
                if not divisor:
                    raise PolyParseError("division by zero", pos)
                value = value / divisor
            else:
                return value

    def unary(self):
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.advance()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        kind, text, pos = self.peek()
        sign_pos = None
        parenthesised = False
        if kind == "op" and text == "(":
            self.advance()
            parenthesised = True
            kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            sign_pos = pos
            self.advance()
            kind, text, pos = self.peek()
        if kind != "int":
            raise PolyParseError("expected an integer exponent", pos)
        self.advance()
        if parenthesised:
            self.expect_op(")")
        value = int(text)
        if sign_pos is not None:
            if not self.allow_division:
                raise NegativeExponentError("negative exponent", sign_pos)
            return -value
        return value

    def atom(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.advance()
            num = int(text)
            kind2, text2, _ = self.peek()
            if not self.allow_division and kind2 == "op" and text2 == "/":
                self.advance()
                kind3, text3, pos3 = self.peek()
                if kind3 != "int":
                    raise PolyParseError("expected an integer denominator", pos3)
                self.advance()
                den = int(text3)
                if den == 0:
                    raise PolyParseError("zero denominator in rational literal", pos3)
                return self.ring.coerce(QQ(num, den))
            return self.ring.coerce(num)
        if kind == "name":
            self.advance()
            return self._variable(text, pos)
        if kind == "op" and text == "(":
            self.advance()
            value = self.expr()
            self.expect_op(")")
            return value
        raise PolyParseError(f"unexpected {text!r}" if text else "unexpected end of input", pos)

    def _variable(self, name: str, pos: int):
        ring = self.ring
        if isinstance(ring, PolyRing):
            if name not in ring.variables:
                raise UnknownVariableError(f"unknown variable {name!r}", pos)
            return ring.gen(name)
        if isinstance(ring, RatFuncField):
            if name != ring.variable:
                raise UnknownVariableError(f"unknown variable {name!r}", pos)
            return ring.gen()
        raise UnknownVariableError(f"unknown variable {name!r}", pos)


def parse_poly_expr(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` in the strict polynomial grammar over ``ring``."""
    if not isinstance(ring, PolyRing):
        raise TypeError("parse_poly_expr needs a PolyRing")
    return ring.coerce(_Parser(text, ring, allow_division=False).parse())


def parse_ratfunc_expr(text: str, field: RatFuncField) -> RatFunc:
    """Parse ``text`` with ``/`` as a true division operator over QQ(x)."""
    if not isinstance(field, RatFuncField):
        raise TypeError("parse_ratfunc_expr needs a RatFuncField")
    return field.coerce(_Parser(text, field, allow_division=True).parse())


def parse_entry(text: str, ring):
    """Parse a matrix entry for any coefficient ring kind."""
    if isinstance(ring, PolyRing):
        return parse_poly_expr(text, ring)
    if isinstance(ring, RatFuncField):
        return parse_ratfunc_expr(text, ring)
    if isinstance(ring, RationalField):
        value = _Parser(text, ring, allow_division=False).parse()
        return ring.coerce(value)
    raise TypeError(f"unsupported ring {ring!r}")
