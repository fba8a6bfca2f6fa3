"""Expression trees for user-supplied functions on ``H^n``."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

FUNCTIONS = ("exp", "log", "sqrt", "abs2")


@dataclass(frozen=True)
class Number:
    value: Fraction

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Imag:
    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True)
class Var:
    """``x_α``, ``y_α`` (``index ≥ 1``) or ``t`` (``index = 0``)."""

    kind: str
    index: int = 0

    def __str__(self) -> str:
        return self.kind if self.kind == "t" else f"{self.kind}{self.index}"


@dataclass(frozen=True)
class Neg:
    operand: "ExprAST"

    def __str__(self) -> str:
        return f"-{_wrap(self.operand)}"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprAST"
    right: "ExprAST"

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Power:
    base: "ExprAST"
    exponent: int

    def __str__(self) -> str:
        return f"{_wrap(self.base)}^{self.exponent}"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprAST"

    def __str__(self) -> str:
        return f"{self.func}({self.arg})"


ExprAST = Union[Number, Imag, Var, Neg, Binary, Power, Call]


def _wrap(node: ExprAST) -> str:
    if isinstance(node, (Number, Imag, Var, Call, Binary)):
        return str(node)
    return f"({node})"


def walk(node: ExprAST) -> Iterator[ExprAST]:
    """Pre-order traversal."""
    yield node
    if isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Binary):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Power):
        yield from walk(node.base)
    elif isinstance(node, Call):
        yield from walk(node.arg)


def dimension(node: ExprAST) -> int:
    """Largest ``α`` among the ``x_α``, ``y_α`` used (0 if none)."""
    return max((v.index for v in walk(node) if isinstance(v, Var)), default=0)
