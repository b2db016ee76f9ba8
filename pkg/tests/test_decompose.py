from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import unknot_body
from src.decompose.convex import convex_decompose
from src.decompose.split import abelian_obstruction, contractible_piece, express_as_conjugates, expand
from src.decompose.inequalities import adjunction_check, bennequin_check
from src.decompose.positron import meridian_multiple, positron
from src.decompose.rewrite import (
    Decomposition,
    choose_k,
    fresh_tag,
    passive_bound,
    passive_modify,
    reduce_defect_step,
    swap_move,
)
from src.errors import DecomposeError
from src.front.diagram import FrontDiagram, concat, front_from_text
from src.front.invariants import tb
from src.handlebody.certificate import defect_handle, defect_total
from src.handlebody.contractible import Contractible, double_check
from src.handlebody.homology import euler_characteristic, homology
from src.handlebody.model import attaching_word, boundary_sum, from_front
from src.handlebody.words import reduce_word
from src.whitehead.multiple import WhiteheadParams, whitehead_multiple
from src.whitehead.satellite import FramedComponent

X2 = "Hp0.x.L Hp1.x.L Hp1.x.R Hp0.x.R"
X3 = "Hp0.x.L Hp1.x.L Hp2.x.L Hp2.x.R Hp0.x.R Hp0.x.R"


def body(one_handles, words, framing=0):
    front = FrontDiagram()
    for label, word in words:
        front = concat(front, front_from_text(word, [label]))
    return from_front(front, {label: framing for label, _ in words}, one_handles)


# ---- k and bounds ----

@pytest.mark.parametrize("bound, k_min, expected", [(0, 3, 3), (2, 3, 3), (3, 3, 3), (4, 3, 5), (3, 5, 5), (6, 3, 7)])
def test_choose_k(bound, k_min, expected):
    assert choose_k(bound, k_min) == expected


def test_choose_k_cap():
    with pytest.raises(DecomposeError):
        choose_k(101)
    with pytest.raises(DecomposeError):
        choose_k(8, k_cap=7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_passive_bound(n):
    # the copies of a 0-framed unknot have tb -1 and link 0; n - 1 bands add n - 1
    disc = front_from_text("Lc0 Rc0", ["g"])
    pn, fc = whitehead_multiple(disc, FramedComponent("g", 0), WhiteheadParams(n))
    assert tb(pn, "g") == -1
    assert fc.framing == 0
    assert passive_bound(n) == 2


def test_fresh_tag_skips_taken_names():
    H = body(("c1",), [("r", "Hp0.c1.L Hp0.c1.R")])
    assert fresh_tag(H) == 2
    assert fresh_tag(unknot_body(0)) == 1


# ---- positron ----

@pytest.mark.parametrize("n", range(1, 10))
def test_positron_laws(n):
    W = positron(n).realized
    assert W.one_handles == ("c",)
    assert W.labels == ("p",)
    assert tb(W.front, "p") == n - 1
    assert euler_characteristic(W) == 1
    assert homology(W).h1_trivial == (n % 2 == 1)
    assert defect_handle(W, "p") == max(2 - n, 0)


def test_positron_rejects_zero():
    with pytest.raises(DecomposeError):
        positron(0)


def test_odd_positron_doubles_to_a_homotopy_sphere():
    summary = double_check(positron(3).realized)
    assert summary.s4_compatible
    assert summary.chi == 2
    assert not double_check(positron(2).realized).s4_compatible


def test_meridian_multiple_has_a_left_cusp():
    front = meridian_multiple("c", "m", 2)
    assert tb(front, "m") == 1
    assert "Lc" in front.word()


# ---- one rewrite ----

@settings(max_examples=40, deadline=None)
@given(d=st.integers(min_value=1, max_value=6), data=st.data())
def test_reduce_step_contract(d, data):
    n = data.draw(st.integers(min_value=1, max_value=d))
    k = data.draw(st.sampled_from([3, 5, 7]))
    Z = unknot_body(d - 2)
    assert defect_handle(Z, "u") == d
    out = reduce_defect_step(Z, "u", n, k)
    assert defect_handle(out, "u") == d - n
    assert tb(out.front, "u") == tb(Z.front, "u") + n
    assert out.handle("u").framing == Z.handle("u").framing
    assert defect_handle(out, "p1") == 0
    assert homology(out).invariants() == homology(Z).invariants()


def test_reduce_step_refuses_defect_zero():
    with pytest.raises(DecomposeError, match="defect 0"):
        reduce_defect_step(unknot_body(-2), "u", 1, 3)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_reduce_step_needs_odd_k(k):
    with pytest.raises(DecomposeError):
        reduce_defect_step(unknot_body(0), "u", 1, k)


def test_reduce_step_through_a_handle():
    Y = body(("x",), [("m", "Hp0.x.L Hp0.x.R")])
    assert defect_handle(Y, "m") == 1
    out = reduce_defect_step(Y, "m", 1, 3)
    assert defect_handle(out, "m") == 0
    assert len(out.summands) == 1


@pytest.mark.parametrize("n, k", [(1, 3), (2, 3), (3, 5), (4, 3)])
def test_passive_modify_adds_no_defect(n, k):
    H = unknot_body(-1)
    out = passive_modify(H, n, k, tag=1)
    assert out.one_handles == ("e1",)
    assert out.labels == ("u", "g1")
    assert defect_handle(out, "g1") == 0
    assert euler_characteristic(out) == euler_characteristic(H)
    assert len(out.summands) == 2


# ---- two sides ----

def _sides():
    X = unknot_body(1, "a")
    Y = body(("x",), [("m", "Hp0.x.L Hp0.x.R")])
    return Decomposition(X, Y)


def test_decomposition_orients_sides():
    dec = _sides()
    assert (dec.side1.orientation, dec.side2.orientation) == (1, -1)
    with pytest.raises(DecomposeError):
        dec.side(3)


def test_swap_move_ledger():
    dec = swap_move(_sides(), 1, "a", 3, 3)
    (entry,) = dec.ledger.entries
    assert (entry.defect_before, entry.defect_after) == (3, 0)
    assert entry.passive_total_after == entry.passive_total_before
    assert entry.dchi_active == entry.dchi_passive == 0
    assert "g1" in dec.side2.labels


def test_convex_decompose_clears_both_sides():
    dec = _sides()
    chi = (euler_characteristic(dec.side1), euler_characteristic(dec.side2))
    out = convex_decompose(dec)
    assert defect_total(out.side1) == 0
    assert defect_total(out.side2) == 0
    assert (euler_characteristic(out.side1), euler_characteristic(out.side2)) == chi
    df = out.ledger.to_frame()
    assert list(df["pass_no"]) == [1, 2]
    assert list(df["handle"]) == ["a", "m"]
    assert (df["dchi_active"] == 0).all() and (df["dchi_passive"] == 0).all()
    assert out.gluing == "symbolic"


def test_convex_decompose_leaves_clean_sides_alone(hopf_body):
    dec = convex_decompose(Decomposition(hopf_body, unknot_body(-3)))
    assert dec.ledger.entries == ()


@st.composite
def decompositions(draw):
    side1 = unknot_body(draw(st.integers(-3, 2)), "a1")
    if draw(st.booleans()):
        side1 = boundary_sum(side1, unknot_body(draw(st.integers(-3, 2)), "a2"))
    side2 = body(("x",), [("m", "Hp0.x.L Hp0.x.R")], framing=draw(st.integers(-2, 1)))
    if draw(st.booleans()):
        side2 = boundary_sum(side2, unknot_body(draw(st.integers(-3, 0)), "v"))
    return Decomposition(side1, side2)


@settings(max_examples=12, deadline=None)
@given(dec=decompositions())
def test_convex_decompose_on_random_sides(dec):
    sides = (dec.side1, dec.side2)
    assert sum(defect_total(s) for s in sides) <= 12
    before = [homology(s).invariants() for s in sides]
    handles = sum(len(s.labels) for s in sides)
    out = convex_decompose(dec)
    assert defect_total(out.side1) == defect_total(out.side2) == 0
    assert [homology(out.side1).invariants(), homology(out.side2).invariants()] == before
    assert len(out.ledger.entries) <= handles
    for entry in out.ledger.entries:
        assert entry.dchi_active + entry.dchi_passive == 0
        assert entry.active_total_after < entry.active_total_before
        assert entry.passive_total_after == entry.passive_total_before


# ---- inequalities ----

@pytest.mark.parametrize("tb_, f, rot_, chi, ok", [
    (-1, 0, 0, 1, True),
    (1, 0, 0, 1, False),
    (-3, 0, 1, 1, True),
    (-1, 0, 1, 1, False),
    (1, 0, 0, -1, True),
])
def test_bennequin_check(tb_, f, rot_, chi, ok):
    assert bennequin_check(tb_, f, rot_, chi) is ok


def test_bennequin_rejects_closed_chi():
    with pytest.raises(DecomposeError):
        bennequin_check(0, 0, 0, 2)


@pytest.mark.parametrize("chi, self_int, k_dot_f, ok", [(2, 1, -3, True), (2, 1, 0, False), (0, 0, 0, True)])
def test_adjunction_check(chi, self_int, k_dot_f, ok):
    assert adjunction_check(chi, self_int, k_dot_f) is ok


BENNEQUIN_GRID = list(product(range(-4, 2), range(-2, 2), (-1, 0, 2), (1, 0, -1)))[::4][:50]
ADJUNCTION_GRID = list(product(range(-2, 3), range(-2, 3), range(-3, 3)))[::3][:50]


def test_inequality_grids_cover_both_answers():
    assert len(BENNEQUIN_GRID) == len(ADJUNCTION_GRID) == 50
    assert {tb_ - f + abs(r) + chi <= 0 for tb_, f, r, chi in BENNEQUIN_GRID} == {True, False}
    assert {chi + s + kf <= 0 for chi, s, kf in ADJUNCTION_GRID} == {True, False}


@pytest.mark.parametrize("tb_, f, rot_, chi", BENNEQUIN_GRID)
def test_bennequin_grid(tb_, f, rot_, chi):
    slack = -chi - (tb_ - f) - (rot_ if rot_ >= 0 else -rot_)
    assert bennequin_check(tb_, f, rot_, chi) is (slack >= 0)


@pytest.mark.parametrize("chi, self_int, k_dot_f", ADJUNCTION_GRID)
def test_adjunction_grid(chi, self_int, k_dot_f):
    assert adjunction_check(chi, self_int, k_dot_f) is (self_int + k_dot_f + chi <= 0)


# ---- normal generation and the contractible piece ----

def test_expression_reduces_to_target():
    relators = [(1, 1), (1, 1, 1)]
    search = express_as_conjugates([(1,)], relators)
    assert search.found and search.status == "FOUND"
    (factors,) = search.expressions
    assert reduce_word(expand(factors, relators)) == (1,)


def test_abelian_obstruction():
    assert abelian_obstruction((1,), [(1, 1)], 1).startswith("abelianization")
    assert "independent" in abelian_obstruction((2,), [(1,)], 2)
    assert abelian_obstruction((1,), [(1, 1), (1, 1, 1)], 1) is None


@pytest.mark.parametrize("H", [
    unknot_body(-1),
    body(("x",), [("r", "Hp0.x.L Hp0.x.R")]),
    body(("x",), [("r", X2), ("s", X3)]),
    body(("x", "y"), [("r", "Hp0.x.L Hp0.x.R"), ("s", "Hp0.y.L Hp0.y.R")]),
    body(("x",), [("r", X3), ("s", X2)], framing=-1),
])
def test_contractible_piece_found(H):
    piece = contractible_piece(H)
    assert piece.status == "FOUND"
    assert piece.certificate.verdict is Contractible.YES
    assert euler_characteristic(piece.x1) == 1
    assert len(piece.x1.one_handles) == len(H.one_handles)
    assert piece.x2.labels == H.labels
    assert piece.decomposition().side2.orientation == -1


def test_contractible_piece_obstructed():
    piece = contractible_piece(body(("x",), [("r", X2)]))
    assert piece.status == "UNKNOWN"
    assert piece.x1 is None
    assert "order 2" in piece.reason


def test_contractible_piece_free_generator():
    piece = contractible_piece(body(("x",), []))
    assert piece.status == "UNKNOWN"
    assert "independent" in piece.reason


def test_contractible_piece_is_built_by_slides():
    H = body(("x",), [("r", X2), ("s", X3)])
    piece = contractible_piece(H)
    assert piece.status == "FOUND"
    assert len(piece.slides) >= 2
    assert {step.handle for step in piece.slides} == {"k1"}
    assert {step.over for step in piece.slides} == {"r", "s"}
    assert all(step.exponent in (1, -1) for step in piece.slides)
    assert piece.slides[-1].word == piece.expressions["k1"]
    assert reduce_word(attaching_word(piece.x1, "k1")) == (1,)
