"""Index letters, jet words and commutator-based canonical ordering.

A letter is an int: ``α`` (1..n) stands for ``Z_α``, ``-α`` for ``Z_ᾱ`` and
``0`` for ``∂_t``. A word lists letters in order of application, so the first
letter acts innermost: ``(1, -2)`` is ``Z_2̄ Z_1 f``.
"""

from functools import lru_cache
from typing import Dict, Iterator, Tuple

from crlab.algebra.gaussian import GaussianRational

IndexLetter = int
Word = Tuple[int, ...]

T: IndexLetter = 0
_MINUS_TWO_I = GaussianRational(0, -2)


class JetOrderError(ValueError):
    """Raised when a derivative would exceed a field's jet order cap."""


def holo(alpha: int) -> IndexLetter:
    return alpha


def anti(alpha: int) -> IndexLetter:
    return -alpha


def bar(letter: IndexLetter) -> IndexLetter:
    """The bar involution; ``0`` is fixed."""
    return -letter


def check_letter(letter: IndexLetter, n: int) -> IndexLetter:
    if not isinstance(letter, int) or abs(letter) > n:
        raise ValueError(f"Index letter {letter!r} is outside 1..{n}")
    return letter


def letter_name(letter: IndexLetter) -> str:
    if letter > 0:
        return str(letter)
    if letter < 0:
        return f"{-letter}b"
    return "0"


def word_name(field: str, word: Word) -> str:
    """Printable symbol name such as ``f_{1,2b,0}``."""
    if not word:
        return field
    return f"{field}_{{{','.join(letter_name(letter) for letter in word)}}}"


def _rank(letter: IndexLetter) -> Tuple[int, int]:
    if letter > 0:
        return (0, letter)
    if letter < 0:
        return (1, -letter)
    return (2, 0)


def is_canonical(word: Word) -> bool:
    return all(_rank(a) <= _rank(b) for a, b in zip(word, word[1:]))


def sort_word(word: Word) -> Word:
    return tuple(sorted(word, key=_rank))


@lru_cache(maxsize=None)
def canonicalize_word(word: Word) -> Tuple[Tuple[Word, GaussianRational], ...]:
    """Rewrite a word as a combination of canonical words.

    Adjacent letters are swapped into canonical order (holomorphic ascending,
    then antiholomorphic ascending, then zeros). Moving ``β̄`` past a later
    ``α`` uses ``[Z_α, Z_β̄] = -2i δ_αβ ∂_t``:
    ``(…, β̄, α, …) = (…, α, β̄, …) - 2i δ_αβ (…, 0, …)``.
    All other pairs commute.

    Returns:
        Pairs ``(canonical word, coefficient)`` sorted by word, without zeros.
    """
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if _rank(a) <= _rank(b):
            continue
        swapped = word[:i] + (b, a) + word[i + 2 :]
        result: Dict[Word, GaussianRational] = dict(canonicalize_word(swapped))
        if a < 0 and b > 0 and -a == b:
            shorter = word[:i] + (T,) + word[i + 2 :]
            for w, c in canonicalize_word(shorter):
                total = result.get(w, GaussianRational(0)) + _MINUS_TWO_I * c
                if total.is_zero():
                    result.pop(w, None)
                else:
                    result[w] = total
        return tuple(sorted(result.items()))
    return ((word, GaussianRational(1)),)


def canonical_words(n: int, length: int) -> Iterator[Word]:
    """All canonical words of a given length over the letters of ``H^n``, in order."""

    def extend(prefix: Word, remaining: int) -> Iterator[Word]:
        if not remaining:
            yield prefix
            return
        last = _rank(prefix[-1]) if prefix else (-1, 0)
        for letter in list(range(1, n + 1)) + [-a for a in range(1, n + 1)] + [T]:
            if _rank(letter) >= last:
                yield from extend(prefix + (letter,), remaining - 1)

    yield from extend((), length)
