"""Formal jet calculus for scalar fields on the Heisenberg group."""

from crlab.jets.context import DEFAULT_FIELDS, E_F, ETA, H, CRContext, FieldSpec, JetExpr
from crlab.jets.words import (
    T,
    IndexLetter,
    JetOrderError,
    Word,
    anti,
    bar,
    canonical_words,
    canonicalize_word,
    holo,
    word_name,
)

__all__ = [
    "CRContext",
    "DEFAULT_FIELDS",
    "E_F",
    "ETA",
    "FieldSpec",
    "H",
    "IndexLetter",
    "JetExpr",
    "JetOrderError",
    "T",
    "Word",
    "anti",
    "bar",
    "canonical_words",
    "canonicalize_word",
    "holo",
    "word_name",
]
