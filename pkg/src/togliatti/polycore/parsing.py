"""Recursive-descent parser for the polynomial grammar.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

``^`` binds tightest, so ``-x^2`` is ``-(x^2)``. The ``INT/INT`` rational
literal is an extension used only so that printed rational coefficients
round-trip.
"""

import re
from fractions import Fraction

from togliatti.errors import ParseError, UnknownVariableError
from togliatti.polycore.poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*^()/−]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        value = m.group(kind)
        if value == "−":
            value = "-"
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = tuple(ring)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}")
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("exponent must be a non-negative integer literal")
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            val = Fraction(int(value))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.error("expected integer denominator")
                self.take()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                val = val / int(den[1])
            return MultiPoly.const(self.ring, val)
        if kind == "name":
            if value not in self.ring:
                raise UnknownVariableError(f"unknown variable {value!r}", pos, self.text)
            return MultiPoly.var(self.ring, value)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {value!r}", pos, self.text)


def parse_poly(text, ring):
    """Parse ``text`` into a :class:`MultiPoly` over ``ring``."""
    return _Parser(text, ring).parse()


def format_poly(f):
    """Canonical text form; ``parse_poly(format_poly(f), f.ring) == f``."""
    return str(f)
