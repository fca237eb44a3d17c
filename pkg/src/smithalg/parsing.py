"""Text syntax for PBW expressions and polynomials.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := RATIONAL | IDENT | '(' expr ')'

RATIONAL is ``p`` or ``p/q``. Juxtaposition is rejected and ``*`` keeps
factor order, so the same tree can be evaluated in R(f) or, for a single
commuting variable, as a polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exactpoly import Poly
from .pbw import E, F, H, PBWElement, SmithAlgebra

__all__ = ["ParseError", "Node", "parse_expression", "parse_pbw", "normalize", "parse_poly", "evaluate_pbw"]

PBW_IDENTIFIERS = ("E", "F", "H", "Omega")

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


class ParseError(DomainError):
    def __init__(self, text: str, pos: int, expected: set[str]):
        self.text = text
        self.pos = pos
        self.expected = frozenset(expected)
        found = text[pos:pos + 10] or "end of input"
        super().__init__(
            f"syntax error at position {pos} (near {found!r}): expected one of {', '.join(sorted(self.expected))}"
        )


@dataclass(frozen=True)
class Node:
    kind: str  # num | var | add | sub | mul | neg | pow
    args: tuple


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(text, pos, {"number", "identifier", "operator"})
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, identifiers):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.identifiers = tuple(identifiers)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        raise ParseError(self.text, self.peek()[2], set(expected))

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail({"'+'", "'-'", "'*'", "'^'", "end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = Node("add" if op == "+" else "sub", (node, self.term()))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            node = Node("mul", (node, self.unary()))
        return node

    def unary(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else Node("neg", (inner,))
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num" or "/" in val:
                self.fail({"nonnegative integer exponent"})
            self.take()
            node = Node("pow", (node, int(val)))
        return node

    def atom(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                self.fail({"nonzero denominator"})
            self.take()
            return Node("num", (Fraction(int(num), int(den or 1)),))
        if kind == "ident":
            if val not in self.identifiers:
                self.fail({repr(v) for v in self.identifiers} | {"number", "'('"})
            self.take()
            return Node("var", (val,))
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                self.fail({"')'"})
            self.take()
            return node
        self.fail({"number", "'('"} | {repr(v) for v in self.identifiers})


def parse_expression(text: str, identifiers=PBW_IDENTIFIERS) -> Node:
    return _Parser(text, identifiers).parse()


def parse_pbw(text: str) -> Node:
    """Unreduced syntax tree; factor order preserved."""
    return parse_expression(text, PBW_IDENTIFIERS)


def evaluate_pbw(node: Node, alg: SmithAlgebra) -> PBWElement:
    kind, args = node.kind, node.args
    if kind == "num":
        return PBWElement.scalar(args[0])
    if kind == "var":
        return {"E": E, "F": F, "H": H, "Omega": alg.casimir}[args[0]]
    if kind == "neg":
        return -evaluate_pbw(args[0], alg)
    if kind == "pow":
        return alg.power(evaluate_pbw(args[0], alg), args[1])
    left, right = evaluate_pbw(args[0], alg), evaluate_pbw(args[1], alg)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    return alg.mul(left, right)


def normalize(text: str, alg: SmithAlgebra) -> PBWElement:
    return evaluate_pbw(parse_pbw(text), alg)


def _evaluate_poly(node: Node) -> Poly:
    kind, args = node.kind, node.args
    if kind == "num":
        return Poly.const(args[0])
    if kind == "var":
        return Poly.x()
    if kind == "neg":
        return -_evaluate_poly(args[0])
    if kind == "pow":
        return _evaluate_poly(args[0]) ** args[1]
    left, right = _evaluate_poly(args[0]), _evaluate_poly(args[1])
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    return left * right


def parse_poly(text: str, var: str | tuple = "H") -> Poly:
    """Polynomial in one variable, e.g. ``2*H^2 - 2*H`` or ``(Omega-1)^2*(Omega-2)``."""
    names = (var,) if isinstance(var, str) else tuple(var)
    return _evaluate_poly(parse_expression(text, names))
