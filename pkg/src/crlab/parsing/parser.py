"""Precedence-climbing parser for candidate functions.

Grammar, loosest to tightest: ``+ -`` (left), ``* /`` (left), unary ``-``,
``^`` (right, integer exponent). Atoms are decimal literals, ``i``, the
coordinates ``x1 … xn``, ``y1 … yn``, ``t``, calls of ``exp log sqrt abs2``
and parenthesized expressions.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from crlab.parsing.ast import FUNCTIONS, Binary, Call, ExprAST, Imag, Neg, Number, Power, Var


class ExprSyntaxError(ValueError):
    """A malformed expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "name" | "op" | "end"
    text: str
    offset: int


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_BINARY = {"+": (0, "left"), "-": (0, "left"), "*": (1, "left"), "/": (1, "left")}
_VARIABLE = re.compile(r"([xy])([1-9]\d*)")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    encoded_offset = 0
    while True:
        match = _TOKEN.match(text, position)
        if match is None:
            break
        start = match.start(match.lastindex or 0)
        byte_offset = encoded_offset + len(text[position:start].encode("utf-8"))
        number, name, op = match.groups()
        if number is not None:
            tokens.append(Token("number", number, byte_offset))
        elif name is not None:
            tokens.append(Token("name", name, byte_offset))
        else:
            if op not in "+-*/^(),":
                raise ExprSyntaxError(f"unexpected character {op!r}", byte_offset)
            tokens.append(Token("op", op, byte_offset))
        encoded_offset += len(text[position : match.end()].encode("utf-8"))
        position = match.end()
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token], n: Optional[int]) -> None:
        self.tokens = tokens
        self.position = 0
        self.n = n

    def peek(self) -> Token:
        return self.tokens[self.position]

    def next(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != "end":
            self.position += 1
        return token

    def expect(self, text: str) -> None:
        token = self.next()
        if token.text != text or token.kind != "op":
            found = repr(token.text) if token.kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected {text!r}, found {found}", token.offset)

    def expression(self, min_prec: int = 0) -> ExprAST:
        lhs = self.unary()
        while True:
            token = self.peek()
            if token.kind != "op" or token.text not in _BINARY:
                return lhs
            prec, assoc = _BINARY[token.text]
            if prec < min_prec:
                return lhs
            self.next()
            rhs = self.expression(prec + 1 if assoc == "left" else prec)
            lhs = Binary(token.text, lhs, rhs)

    def unary(self) -> ExprAST:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> ExprAST:
        base = self.atom()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.next()
            return Power(base, self.integer_exponent())
        return base

    def integer_exponent(self) -> int:
        sign = 1
        token = self.next()
        if token.kind == "op" and token.text == "-":
            sign = -1
            token = self.next()
        if token.kind == "op" and token.text == "(":
            value = self.integer_exponent()
            self.expect(")")
            return sign * value
        if token.kind != "number" or not token.text.isdigit():
            raise ExprSyntaxError("exponent must be an integer literal", token.offset)
        return sign * int(token.text)

    def atom(self) -> ExprAST:
        token = self.next()
        if token.kind == "end":
            raise ExprSyntaxError("unexpected end of input", token.offset)
        if token.kind == "number":
            return Number(Fraction(token.text))
        if token.kind == "op":
            if token.text == "(":
                inner = self.expression()
                self.expect(")")
                return inner
            raise ExprSyntaxError(f"unexpected operator {token.text!r}", token.offset)
        return self.name(token)

    def name(self, token: Token) -> ExprAST:
        text = token.text
        if text in FUNCTIONS:
            self.expect("(")
            arguments = [self.expression()]
            while self.peek().kind == "op" and self.peek().text == ",":
                self.next()
                arguments.append(self.expression())
            self.expect(")")
            if len(arguments) != 1:
                raise ExprSyntaxError(
                    f"{text} takes 1 argument, got {len(arguments)}", token.offset
                )
            return Call(text, arguments[0])
        if text == "i":
            return Imag()
        if text == "t":
            return Var("t")
        match = _VARIABLE.fullmatch(text)
        if match is None:
            raise ExprSyntaxError(f"unknown identifier {text!r}", token.offset)
        index = int(match.group(2))
        if self.n is not None and index > self.n:
            raise ExprSyntaxError(f"{text} is outside dimension n={self.n}", token.offset)
        return Var(match.group(1), index)


def parse_expression(text: str, n: Optional[int] = None) -> ExprAST:
    """Parse ``text`` into an expression tree.

    Args:
        text: Source such as ``"t^2 + x1*y1"``.
        n: Declared dimension; coordinates with a larger index are rejected.

    Returns:
        The expression tree.

    Raises:
        ExprSyntaxError: For malformed input, unknown identifiers and wrong
            arity, with the byte offset of the offending token.
    """
    parser = _Parser(tokenize(text), n)
    tree = parser.expression()
    leftover = parser.peek()
    if leftover.kind != "end":
        raise ExprSyntaxError(f"unexpected {leftover.text!r}", leftover.offset)
    return tree
