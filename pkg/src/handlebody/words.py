# src/handlebody/words.py — free-group words: tuples of nonzero ints outside, sympy FreeGroup elements inside
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group

from src.errors import HandlebodyError

Word = Tuple[int, ...]  # +i generator i, -i its inverse


@lru_cache(maxsize=None)
def basis(rank: int) -> FreeGroup:
    """The free group on x1 .. x<rank>."""
    return free_group([f"x{i}" for i in range(1, rank + 1)])[0]


def element(word: Iterable[int], rank: Optional[int] = None) -> FreeGroupElement:
    letters = tuple(word)
    if any(x == 0 for x in letters):
        raise HandlebodyError("0 is not a generator")
    top = max((abs(x) for x in letters), default=0)
    rank = top if rank is None else rank
    if top > rank:
        raise HandlebodyError(f"generator {top} outside a basis of {rank}")
    F = basis(rank)
    out = F.identity
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        sym = F.symbols[abs(letters[i]) - 1]
        out = out * F.dtype(((sym, (j - i) * (1 if letters[i] > 0 else -1)),))
        i = j
    return out


def letters(el: FreeGroupElement) -> Word:
    index = {s: i + 1 for i, s in enumerate(el.group.symbols)}
    out: List[int] = []
    for sym, e in el.array_form:
        out.extend([index[sym] if e > 0 else -index[sym]] * abs(e))
    return tuple(out)


def reduce_word(word: Iterable[int]) -> Word:
    return letters(element(word))


def cyclic_reduce(word: Iterable[int]) -> Word:
    return letters(element(word).cyclic_reduction())


def invert(word: Sequence[int]) -> Word:
    return letters(element(word) ** -1)


def multiply(*words: Sequence[int]) -> Word:
    return reduce_word([x for w in words for x in w])


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """by · word · by⁻¹"""
    rank = max((abs(x) for x in tuple(word) + tuple(by)), default=0)
    b = element(by, rank)
    return letters(b * element(word, rank) * b ** -1)


def substitute(word: Sequence[int], g: int, value: Sequence[int]) -> Word:
    """Replace generator g by `value` everywhere in `word`."""
    rank = max((abs(x) for x in tuple(word) + tuple(value) + (g,)), default=0)
    F = basis(rank)
    return letters(element(word, rank).eliminate_word(F.generators[g - 1], element(value, rank)))


def abelianize(word: Sequence[int], rank: int) -> List[int]:
    el = element(word, rank)
    return [el.exponent_sum(gen) for gen in basis(rank).generators]


def rotations(word: Sequence[int]) -> List[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def format_word(word: Sequence[int], names: Optional[Sequence[str]] = None) -> str:
    """Exponent form: 'x^2 y^-1'; the empty word prints as '1'. Letters are not reduced first."""
    if not word:
        return "1"
    parts: List[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g = abs(word[i])
        name = names[g - 1] if names else f"x{g}"
        e = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)
