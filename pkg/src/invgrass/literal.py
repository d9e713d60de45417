"""Parser for element and polynomial literals.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | SYMBOL | '(' expr ')'

Integers are read as exact rationals, so ``1/2*r^2 - z + 3`` evaluates to
the expected element.  Evaluation is generic: symbols are looked up in a
namespace and combined with the ordinary Python operators, so the same
parser builds field elements, polynomials or matrices.
"""

import re
from fractions import Fraction

__all__ = ["LiteralError", "evaluate", "tokenize"]


class LiteralError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, sym, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif sym is not None:
            tokens.append(("sym", sym))
        else:
            if op not in "+-*/^()":
                raise LiteralError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, namespace):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.ns = namespace

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg):
        raise LiteralError(f"{msg} in literal {self.text!r}")

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"trailing token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    self.fail("division by zero")
        return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Fraction(val)
        if kind == "sym":
            if val not in self.ns:
                self.fail(f"undefined symbol {val!r}")
            return self.ns[val]
        if (kind, val) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return value
        self.fail("unexpected end of input" if kind is None else f"unexpected {val!r}")


def evaluate(text, namespace):
    """Evaluate ``text`` with symbols bound from ``namespace``."""
    if not isinstance(text, str):
        raise LiteralError(f"literal must be a string, got {type(text).__name__}")
    return _Parser(text, namespace).parse()
