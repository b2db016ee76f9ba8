import pytest
from hypothesis import given, strategies as st

from src.errors import HandlebodyError
from src.handlebody.tietze import simplify, trivialize
from src.handlebody.words import (
    abelianize,
    conjugate,
    cyclic_reduce,
    element,
    format_word,
    invert,
    letters,
    multiply,
    reduce_word,
    substitute,
)

words_ = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def test_free_reduction():
    assert reduce_word([1, 2, -2, -1, 3]) == (3,)
    assert cyclic_reduce([2, 1, 3, -2]) == (1, 3)
    with pytest.raises(HandlebodyError):
        reduce_word([1, 0])


@given(words_, words_)
def test_inverse_cancels(a, b):
    w = multiply(a, b)
    assert multiply(w, invert(w)) == ()
    assert reduce_word(w) == w


@given(words_)
def test_conjugation_keeps_abelian_image(w):
    by = (1, 2)
    assert abelianize(conjugate(w, by), 3) == abelianize(w, 3)


def test_sympy_round_trip():
    el = element((1, 1, -2, 2, 3))
    assert el.array_form[0][1] == 2
    assert len(el.array_form) == 2
    assert letters(el) == (1, 1, 3)
    assert letters(element(())) == ()


def test_substitute_generator():
    assert substitute((1, 2, -1), 1, (2, 2)) == (2,)
    assert substitute((1, 2, -1), 2, ()) == ()
    assert substitute((2, 3), 1, (3,)) == (2, 3)


def test_format_word():
    names = ["x", "y"]
    assert format_word((1, 1, -2, 1), names) == "x^2 y^-1 x"
    assert format_word((), names) == "1"
    assert format_word((1, -1)) == "x1 x1^-1"


def test_abelianize_rank_check():
    with pytest.raises(HandlebodyError):
        abelianize((3,), 2)


# ---- Tietze search ----

def test_simplify_eliminates_free_generators():
    (n, rels), moves = simplify(2, [(1, 2), (2,)])
    assert n == 0 and rels == ()
    assert moves == 2


def test_simplify_keeps_powers():
    (n, rels), moves = simplify(1, [(1, 1)])
    assert (n, rels, moves) == (1, ((1, 1),), 0)


def test_trivialize_squares_and_cubes():
    res = trivialize(1, [(1, 1), (1, 1, 1)], budget=100)
    assert res.trivial
    assert res.generators_left == 0


def test_trivialize_gives_up_on_cyclic_group():
    res = trivialize(1, [(1, 1)], budget=100)
    assert not res.trivial
    assert res.generators_left == 1
    assert res.reason == "search space exhausted"


def test_trivialize_respects_budget():
    res = trivialize(2, [(1, 1, 2, 2), (1, 2, 1, 2, 1, 2)], budget=5)
    assert not res.trivial
    assert res.moves <= 7  # the last step may still spend its eliminations
