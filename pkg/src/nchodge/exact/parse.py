"""Parser for rational expressions in one or several variables.

Grammar (implicit multiplication allowed, so ``3z`` and ``(z+1)(z-1)`` work)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | NAME | '(' expr ')'
    exponent := ['-'] INTEGER | '(' ['-'] INTEGER ')'

The tree is evaluated either in the field Q(x) (``parse_rational_function``)
or in a Laurent ring where only monomial denominators are allowed
(``parse_laurent``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from ..errors import DivisionByZeroPolynomial, ParseError
from .laurent import LaurentPoly
from .poly import Poly, RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(s: str) -> List[Tok]:
    s = s.replace("−", "-").replace("·", "*")
    out = []
    i = 0
    while i < len(s):
        if s[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(s, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {s[i]!r}", i, s)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            out.append(Tok("num", m.group(1), start))
        elif m.group(2):
            out.append(Tok("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(Tok("op", op, start))
        i = m.end()
    out.append(Tok("end", "", len(s)))
    return out


# AST nodes: ("num", Fraction) | ("var", name) | ("neg", a) | ("add"|"sub"|"mul"|"div", a, b) | ("pow", a, k)
Node = tuple


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Tok:
        return self.toks[self.i]

    def take(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str) -> Tok:
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}, found {t.text or 'end of input'!r}", t.pos, self.text)
        return t

    def parse(self) -> Node:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0, self.text)
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if t.text == "+" else "sub", node, rhs)
            else:
                return node

    def _starts_atom(self, t: Tok) -> bool:
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> Node:
        node = self.unary()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "*/":
                self.take()
                rhs = self.unary()
                node = ("mul" if t.text == "*" else "div", node, rhs, t.pos)
            elif self._starts_atom(t):
                node = ("mul", node, self.power(), t.pos)
            else:
                return node

    def unary(self) -> Node:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if t.text == "-" else inner
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self) -> int:
        t = self.peek()
        paren = t.kind == "op" and t.text == "("
        if paren:
            self.take()
        sign = 1
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            sign = -1 if t.text == "-" else 1
        t = self.take()
        if t.kind != "num":
            raise ParseError("exponent must be an integer", t.pos, self.text)
        if paren:
            self.expect(")")
        return sign * int(t.text)

    def atom(self) -> Node:
        t = self.take()
        if t.kind == "num":
            return ("num", Fraction(int(t.text)))
        if t.kind == "name":
            return ("var", t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, self.text)


def parse_tree(s: str) -> Node:
    return _Parser(s).parse()


def variables_of(node: Node) -> set:
    if node[0] == "var":
        return {node[1]}
    if node[0] == "num":
        return set()
    out = set()
    for ch in node[1:]:
        if isinstance(ch, tuple):
            out |= variables_of(ch)
    return out


def _eval(node: Node, leaf, text: str, divide):
    kind = node[0]
    if kind == "num":
        return leaf(node)
    if kind == "var":
        return leaf(node)
    if kind == "neg":
        return -_eval(node[1], leaf, text, divide)
    if kind == "pow":
        base = _eval(node[1], leaf, text, divide)
        k = node[2]
        if k < 0 and not base:
            raise DivisionByZeroPolynomial("negative power of zero")
        return base ** k
    a = _eval(node[1], leaf, text, divide)
    b = _eval(node[2], leaf, text, divide)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise DivisionByZeroPolynomial(f"division by zero polynomial at position {node[3]}")
        return divide(a, b, node[3])
    raise AssertionError(kind)


def parse_rational_function(s: str, var: str = None) -> RatFunc:
    """Parse a univariate rational function; the variable is inferred if not given."""
    tree = parse_tree(s)
    names = variables_of(tree)
    if var is None:
        if len(names) > 1:
            raise ParseError(f"more than one variable: {sorted(names)}", 0, s)
        var = next(iter(names)) if names else "z"

    def leaf(node):
        if node[0] == "num":
            return RatFunc(node[1])
        if node[1] != var:
            raise ParseError(f"unknown variable {node[1]!r} (expected {var!r})", node[2], s)
        return RatFunc(Poly.x())

    return _eval(tree, leaf, s, lambda a, b, pos: a / b)


def parse_laurent(s: str, vars: Sequence[str]) -> LaurentPoly:
    """Parse a Laurent polynomial in the given variables (monomial denominators only)."""
    vars = tuple(vars)
    tree = parse_tree(s)

    def leaf(node):
        if node[0] == "num":
            return LaurentPoly.const(vars, node[1])
        if node[1] not in vars:
            raise ParseError(f"unknown variable {node[1]!r} (expected one of {list(vars)})", node[2], s)
        return LaurentPoly.var(vars, node[1])

    def divide(a, b, pos):
        if not b.is_monomial():
            raise ParseError("Laurent expressions may only divide by monomials", pos, s)
        return a / b

    return _eval(tree, leaf, s, divide)


def format_rational_function(r: Union[RatFunc, Poly], var: str = "z") -> str:
    if isinstance(r, Poly):
        return r.to_str(var)
    return r.to_str(var)


def parse_rational(s) -> Fraction:
    """Rational literal: int, 'p/q', or a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational literal {s!r}: {e}") from None
