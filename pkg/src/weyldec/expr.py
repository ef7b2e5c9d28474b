"""Operator expressions: text to normal form and back.

Grammar (products are noncommutative, left to right):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | 'x'<int> | 'd'<int> | '(' expr ')'

A rational literal is nat or nat/nat.  Atom x3 is the third coordinate,
d3 the matching derivative; indices run from 1 up to the declared
dimension.  The polynomial variant of the grammar accepts the single
atom t instead and is used for constant-coefficient operator input.

print_canonical renders the left normal form in graded-lex order so that
parsing the output reproduces the operator exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly
from .weyl import RightForm, WeylOp, format_left, format_right


class ParseError(ValueError):
    """Syntax or range failure, carrying the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([xd]\d+|t)|([-+*^/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int, poly_mode: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.dim = dim
        self.poly_mode = poly_mode

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str) -> None:
        kind, value, at = self.peek()
        if kind != "op" or value != symbol:
            raise ParseError(f"expected {symbol!r}", at)
        self.advance()

    def parse(self) -> WeylOp:
        result = self.expr()
        kind, value, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", at)
        return result

    def expr(self) -> WeylOp:
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            negate = value == "-"
            self.advance()
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                acc = acc - rhs if value == "-" else acc + rhs
            else:
                return acc

    def term(self) -> WeylOp:
        acc = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> WeylOp:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, at = self.advance()
            if kind != "num":
                raise ParseError("expected a nonnegative integer exponent", at)
            return base ** int(value)
        return base

    def atom(self) -> WeylOp:
        kind, value, at = self.advance()
        if kind == "num":
            num = int(value)
            kind2, value2, _ = self.peek()
            if kind2 == "op" and value2 == "/":
                self.advance()
                kind3, value3, at3 = self.advance()
                if kind3 != "num":
                    raise ParseError("expected a denominator", at3)
                den = int(value3)
                if den == 0:
                    raise ParseError("zero denominator", at3)
                return WeylOp.const(self.dim, Fraction(num, den))
            return WeylOp.const(self.dim, num)
        if kind == "name":
            return self._name_atom(value, at)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", at)

    def _name_atom(self, name: str, at: int) -> WeylOp:
        if self.poly_mode:
            if name != "t":
                raise ParseError("only the variable t is allowed here", at)
            return WeylOp.d(1, 0)
        if name == "t":
            raise ParseError("t is only valid in polynomial input", at)
        index = int(name[1:])
        if not 1 <= index <= self.dim:
            raise ParseError(
                f"index {index} out of range for dimension {self.dim}", at
            )
        axis = index - 1
        return WeylOp.x(self.dim, axis) if name[0] == "x" else WeylOp.d(self.dim, axis)


def parse_expr(text: str, dim: int) -> WeylOp:
    """Parse an operator expression into canonical left normal form."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return _Parser(text, dim, poly_mode=False).parse()


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in the single variable t (for operators in d)."""
    op = _Parser(text, 1, poly_mode=True).parse()
    return Poly(1, {b: c for ((_, b), c) in zip(op.terms.keys(), op.terms.values())})


def print_canonical(p: WeylOp) -> str:
    """Graded-lex rendering of the left normal form; parses back to p."""
    return format_left(p)


def print_right_form(r: RightForm) -> str:
    """Graded-lex rendering of the right normal form."""
    return format_right(r)
