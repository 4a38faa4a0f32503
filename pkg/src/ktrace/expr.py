"""Symmetric-function expressions for the command line.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | BASIS '[' ints? ']' | 'omegaSeries' '(' expr ')' | '(' expr ')'
    BASIS  := s | p | e | h | m
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .corealg import LaurentPoly, Partition
from .errors import ParseError
from .symfunc import SymFunc, omega_series

BASES = ("s", "p", "e", "h", "m")

# precedence levels used by the printer
_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


class Expr:
    prec = _ATOM

    def degree(self):
        """Top degree, or None when the expression is an infinite series."""
        raise NotImplementedError

    def evaluate(self, dmax: int) -> SymFunc:
        raise NotImplementedError


def _wrap(e: Expr, level: int) -> str:
    text = str(e)
    return f"({text})" if e.prec < level else text


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction

    def __str__(self):
        v = Fraction(self.value)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    @property
    def prec(self):
        return _ATOM if self.value >= 0 else _NEG

    def degree(self):
        return 0

    def evaluate(self, dmax):
        return SymFunc.one(dmax, Fraction(self.value))


@dataclass(frozen=True)
class Atom(Expr):
    basis: str
    parts: tuple

    def __str__(self):
        return f"{self.basis}[{','.join(map(str, self.parts))}]"

    def degree(self):
        return sum(self.parts)

    def evaluate(self, dmax):
        return SymFunc.basis_element(self.basis, self.parts, dmax)


@dataclass(frozen=True)
class Omega(Expr):
    arg: Expr

    def __str__(self):
        return f"omegaSeries({self.arg})"

    def degree(self):
        return None

    def evaluate(self, dmax):
        inner = self.arg.evaluate(max(dmax, 1)).to("p")
        coef = inner.terms.get(Partition((1,)))
        if set(inner.terms) - {Partition((1,))} or coef is None:
            raise ValueError("omegaSeries needs a multiple of p[1]")
        return omega_series(LaurentPoly.coerce(coef), dmax)


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    prec = _NEG

    def __str__(self):
        return "-" + _wrap(self.arg, _NEG)

    def degree(self):
        return self.arg.degree()

    def evaluate(self, dmax):
        return -self.arg.evaluate(dmax)


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def prec(self):
        return _MUL if self.op == "*" else _ADD

    def __str__(self):
        if self.op == "*":
            return f"{_wrap(self.left, _MUL)}*{_wrap(self.right, _MUL + 1)}"
        return f"{_wrap(self.left, _ADD)} {self.op} {_wrap(self.right, _ADD + 1)}"

    def degree(self):
        a, b = self.left.degree(), self.right.degree()
        if a is None or b is None:
            return None
        return a + b if self.op == "*" else max(a, b)

    def evaluate(self, dmax):
        a, b = self.left.evaluate(dmax), self.right.evaluate(dmax)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        return a * b


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    prec = _POW

    def __str__(self):
        return f"{_wrap(self.base, _ATOM)}^{self.exponent}"

    def degree(self):
        d = self.base.degree()
        return None if d is None else d * self.exponent

    def evaluate(self, dmax):
        return self.base.evaluate(dmax) ** self.exponent


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected, what=None):
        self._skip()
        got = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
        raise ParseError(what or f"unexpected {got}", self.pos, expected)

    def expect(self, ch):
        if self.peek() != ch:
            self.fail([repr(ch)])
        self.pos += 1

    def integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail(["integer"])
        return int(self.text[start:self.pos])

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek():
            self.fail(["'+'", "'-'", "'*'", "'^'", "end of input"])
        return e

    def expr(self):
        left = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.peek() == "*":
            self.pos += 1
            left = BinOp("*", left, self.unary())
        return left

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return Pow(base, self.integer())
        return base

    def atom(self):
        ch = self.peek()
        if ch.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", self.pos - 1, ["nonzero integer"])
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if self.text.startswith("omegaSeries", self.pos):
            self.pos += len("omegaSeries")
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Omega(e)
        if ch in BASES:
            self.pos += 1
            self.expect("[")
            parts = []
            if self.peek() != "]":
                parts.append(self.integer())
                while self.peek() == ",":
                    self.pos += 1
                    parts.append(self.integer())
            if self.peek() != "]":
                self.fail(["','", "']'"])
            self.pos += 1
            if any(p <= 0 for p in parts):
                raise ParseError("parts must be positive", self.pos - 1, ["positive integer"])
            return Atom(ch, tuple(sorted(parts, reverse=True)))
        self.fail(["integer", "'('", "'-'", "omegaSeries"] + [f"'{b}['" for b in BASES])


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def evaluate(text_or_expr, dmax: int) -> SymFunc:
    e = parse_expr(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    return e.evaluate(dmax)


__all__ = ["Expr", "Num", "Atom", "Omega", "Neg", "BinOp", "Pow", "parse_expr", "evaluate", "BASES"]
