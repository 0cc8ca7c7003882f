"""Recursive-descent parser for the expression grammar::

    expr  := ["-"] term (("+" | "-") term)*
    term  := atom (("*" atom) | ("^" atom))*
    atom  := rational | ident | "(" expr ")" | "d(" expr ")"
    ident := "x"N | "th"N | "Dx"N | "Dth"N | "dx"N | "dth"N

``*`` and ``^`` are both the graded product; a leading minus is accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .._core import Chart
from ..calculus import GradedForm, Multivector, d, derivation, differential
from ..grassmann import GradedElement, Superfunction, coordinate


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprTypeError(TypeError):
    """Operands of incompatible kinds (e.g. a form times a multivector)."""


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(Dth|Dx|dth|dx|th|x)(\d+)|(d\()|([-+*^()]))")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str
    index: int
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Ast"
    right: "Ast"
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class Diff:
    operand: "Ast"
    offset: int


Ast = Union[Num, Ident, BinOp, Neg, Diff]


def tokenize(text: str) -> List[Tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(4) if m.group(4) else m.start(5)
        if m.group(1):
            tokens.append(("num", Fraction(m.group(1)), start))
        elif m.group(2):
            tokens.append(("ident", (m.group(2), int(m.group(3))), start))
        elif m.group(4):
            tokens.append(("d(", None, start))
        else:
            tokens.append((m.group(5), None, start))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[0])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Ast:
        node = None
        if self.peek()[0] == "-":
            self.take()
            node = Neg(self.term())
        else:
            node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, off = self.take()
            node = BinOp(op, node, self.term(), off)
        return node

    def term(self) -> Ast:
        node = self.atom()
        while self.peek()[0] in ("*", "^"):
            op, _, off = self.take()
            node = BinOp(op, node, self.atom(), off)
        return node

    def atom(self) -> Ast:
        kind, value, off = self.peek()
        if kind == "num":
            self.take()
            return Num(value)
        if kind == "ident":
            self.take()
            return Ident(value[0], value[1], off)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "d(":
            self.take()
            node = self.expr()
            self.take(")")
            return Diff(node, off)
        what = "end of input" if kind == "eof" else repr(kind)
        raise ParseError(f"unexpected {what}", off)


def parse_ast(text: str) -> Ast:
    parser = _Parser(text)
    node = parser.expr()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError(f"unexpected {tok[0]!r}", tok[2])
    return node


def evaluate(node: Ast, chart: Chart) -> GradedElement:
    if isinstance(node, Num):
        return Superfunction.constant(chart, node.value)
    if isinstance(node, Ident):
        base = node.name.lstrip("Dd") if node.name[0] in "Dd" else node.name
        try:
            chart.check_index(base, node.index)
        except IndexError as exc:
            raise ParseError(str(exc), node.offset) from None
        if node.name.startswith("D"):
            return derivation(chart, base, node.index)
        if node.name.startswith("d"):
            return differential(chart, base, node.index)
        return coordinate(chart, base, node.index)
    if isinstance(node, Neg):
        return -evaluate(node.operand, chart)
    if isinstance(node, Diff):
        inner = evaluate(node.operand, chart)
        if isinstance(inner, Multivector):
            raise ExprTypeError("d( ) applies to functions and forms, not multivectors")
        return d(inner)
    left = evaluate(node.left, chart)
    right = evaluate(node.right, chart)
    try:
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    except TypeError as exc:
        raise ExprTypeError(f"{exc} (operator {node.op!r} at offset {node.offset})") from None


def parse(text: str, chart: Chart) -> GradedElement:
    """Parse text into a typed Superfunction, Multivector or GradedForm."""
    return evaluate(parse_ast(text), chart)


__all__ = ["ParseError", "ExprTypeError", "parse", "parse_ast", "evaluate", "tokenize",
           "GradedForm", "Multivector"]
