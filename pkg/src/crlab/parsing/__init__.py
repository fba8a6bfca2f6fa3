"""Parser for user-supplied functions on the Heisenberg group."""

from crlab.parsing.ast import Binary, Call, ExprAST, Imag, Neg, Number, Power, Var, dimension
from crlab.parsing.parser import ExprSyntaxError, parse_expression, tokenize

__all__ = [
    "Binary",
    "Call",
    "ExprAST",
    "ExprSyntaxError",
    "Imag",
    "Neg",
    "Number",
    "Power",
    "Var",
    "dimension",
    "parse_expression",
    "tokenize",
]
