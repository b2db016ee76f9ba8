import pytest
from hypothesis import given, settings, strategies as st

from conftest import HOPF, TREFOIL, UNKNOT
from src.errors import FrontError, FrontMoveError
from src.front.diagram import (
    FrontDiagram,
    HandlePass,
    concat,
    directions,
    format_word,
    front_from_text,
    parse_word,
    restrict,
    reverse,
    validate,
)
from src.front.invariants import crossing_signs, linking_number, right_cusps, rot, tb, writhe
from src.front.moves import (
    MoveId,
    applicable_moves,
    connected_sum,
    fish,
    front_move,
    legendrianize_to,
    stabilize,
)
from src.front.resolve import gauss_code, is_unknotted, resolve
from src.front.survey import unknot_survey


# ---- codec and validation ----

def test_word_codec_is_canonical():
    text = "Lc0  Lc1 X2\tX0 Rc1 Rc0"
    assert format_word(parse_word(text)) == HOPF


def test_handle_pass_token():
    (ev,) = parse_word("Hp3.x'.L")
    assert ev == HandlePass(3, "x'", "L")
    assert ev.token() == "Hp3.x'.L"


def test_bad_token_names_offset():
    with pytest.raises(FrontError, match="offset 4"):
        parse_word("Lc0 Q1 Rc0")


@pytest.mark.parametrize("word, problem", [
    ("Lc0 Rc1", "right cusp"),
    ("Lc0", "unclosed"),
    ("X0", "crossing"),
    ("Hp0.x.L Rc0", "right cusp"),
    ("Hp0.x.L Hp1.x.L Hp0.x.R Lc0 Rc0", "unclosed"),
])
def test_validate_rejects(word, problem):
    rep = validate(FrontDiagram(parse_word(word)))
    assert not rep.ok
    assert problem in rep.message


def test_unpaired_handle_pass():
    rep = validate(FrontDiagram(parse_word("Hp0.x.L Hp0.y.R")))
    assert not rep.ok and "unpaired" in rep.message


def test_components_follow_birth_order(hopf):
    assert hopf.components == ("a", "b")
    assert front_from_text(HOPF).components == ("1", "2")
    assert front_from_text("Lc0 Rc0 Lc0 Rc0").orientations == (1, 1)


# ---- classical invariants ----

def test_unknot_invariants(unknot):
    assert tb(unknot, "1") == -1
    assert rot(unknot, "1") == 0
    assert writhe(unknot, "1") == 0


def test_trefoil_invariants(trefoil):
    assert writhe(trefoil, "1") == 3
    assert len(right_cusps(trefoil, "1")) == 2
    assert tb(trefoil, "1") == 1
    assert rot(trefoil, "1") == 0


def test_hopf_linking(hopf):
    assert [s for *_, s in crossing_signs(hopf)] == [1, 1]
    assert linking_number(hopf, "a", "b") == 1
    assert tb(hopf, "a") == tb(hopf, "b") == -1


def test_reversing_one_component_flips_linking(hopf):
    flipped = reverse(hopf, "b")
    assert linking_number(flipped, "a", "b") == -1
    assert tb(flipped, "b") == -1


def test_reversal_keeps_tb_and_negates_rot(unknot):
    s = stabilize(unknot, "1", 1)
    r = reverse(s, "1")
    assert tb(r, "1") == tb(s, "1")
    assert rot(r, "1") == -rot(s, "1")


def test_linking_odd_across_handles():
    front = front_from_text("Lc0 Hp1.x.L X0 Rc1 Hp0.x.R")
    assert validate(front).ok
    with pytest.raises(FrontError, match="odd"):
        linking_number(front, front.components[0], front.components[1])


def test_restrict_keeps_component_invariants(hopf):
    only = restrict(hopf, ["b"])
    assert only.components == ("b",)
    assert tb(only, "b") == tb(hopf, "b")
    assert rot(only, "b") == rot(hopf, "b")


def test_directions_alternate_on_unknot(unknot):
    assert directions(unknot) == (1, -1)


# ---- stabilization and moves ----

@pytest.mark.parametrize("sign", [1, -1])
def test_stabilize(unknot, sign):
    s = stabilize(unknot, "1", sign)
    assert tb(s, "1") == -2
    assert rot(s, "1") == sign


def test_stabilize_rejects_bad_sign(unknot):
    with pytest.raises(FrontError):
        stabilize(unknot, "1", 0)


def test_legendrianize_to(trefoil):
    out = legendrianize_to(trefoil, "1", -2)
    assert tb(out, "1") == -2
    assert abs(rot(out, "1")) <= 1
    with pytest.raises(FrontError):
        legendrianize_to(trefoil, "1", 2)


def test_fish_is_neutral(trefoil):
    out = fish(trefoil, "1")
    assert tb(out, "1") == tb(trefoil, "1")
    assert rot(out, "1") == rot(trefoil, "1")
    assert len(right_cusps(out, "1")) == 3


def test_connected_sum_adds_tb(unknot, trefoil):
    piece = front_from_text(TREFOIL, ["k"])
    out = connected_sum(unknot, "1", piece)
    assert out.components == ("1",)
    assert tb(out, "1") == tb(unknot, "1") + tb(trefoil, "1") + 1


def test_split_union_keeps_labels(unknot, hopf):
    both = concat(hopf, front_from_text(UNKNOT, ["c"]))
    assert both.components == ("a", "b", "c")
    with pytest.raises(FrontError):
        concat(hopf, hopf)


def test_bad_move_site(unknot):
    with pytest.raises(FrontMoveError):
        front_move(unknot, MoveId.R3, 0)
    with pytest.raises(FrontMoveError):
        front_move(unknot, MoveId.R1, 0, 5)


def _signature(front):
    comps = front.components
    return (
        [(tb(front, c), rot(front, c)) for c in comps],
        [linking_number(front, a, b) for i, a in enumerate(comps) for b in comps[i + 1:]],
    )


@settings(max_examples=60, deadline=None)
@given(word=st.sampled_from([UNKNOT, TREFOIL, HOPF, "Lc0 Lc2 X1 X1 Rc0 Rc0", "Lc0 Lc1 X0 Rc1 Rc0"]),
       pick=st.integers(min_value=0, max_value=10_000))
def test_moves_preserve_invariants(word, pick):
    front = front_from_text(word)
    moves = applicable_moves(front)
    move, site, slot = moves[pick % len(moves)]
    after = front_move(front, move, site, slot)
    assert _signature(after) == _signature(front)


def test_fish_round_trip(trefoil):
    with_fish = front_move(trefoil, MoveId.R1, 2, 1)
    site = next(s for m, s, _ in applicable_moves(with_fish) if m is MoveId.R1_INV)
    back = front_move(with_fish, MoveId.R1_INV, site)
    assert _signature(back) == _signature(trefoil)


# ---- resolved diagrams ----

@pytest.mark.parametrize("word", [UNKNOT, TREFOIL, HOPF, "Lc0 Lc2 X1 X1 Rc0 Rc0"])
def test_resolve_is_deterministic(word):
    front = front_from_text(word)
    first = resolve(front)
    assert resolve(front) == first
    assert resolve(front_from_text(front.word(), list(front.components))) == first
    assert first.as_dict() == resolve(front).as_dict()


def test_resolve_leaves_the_front_alone(trefoil):
    before = trefoil.word()
    rd = resolve(trefoil)
    assert trefoil.word() == before
    assert rd.components == trefoil.components
    assert len(rd.crossings) == 3
    assert all(c.over == c.under == "1" for c in rd.crossings)


def test_resolve_hopf_clasp(hopf):
    rd = resolve(hopf)
    assert [c.event for c in rd.crossings] == [2, 3]
    assert [c.sign for c in rd.crossings] == [1, 1]
    assert {c.over for c in rd.crossings} == {"a", "b"}
    assert all(c.over != c.under for c in rd.crossings)
    code_a, code_b = rd.gauss
    assert sorted(abs(c) for c in code_a) == sorted(abs(c) for c in code_b) == [1, 2]
    assert sorted(code_a) == sorted(-c for c in code_b)
    assert sum(c.sign for c in rd.crossings) // 2 == linking_number(hopf, "a", "b")


# ---- unknot certificate ----

def test_unknot_certified(unknot):
    assert is_unknotted(unknot, "1")
    assert is_unknotted(fish(stabilize(unknot, "1", 1), "1"), "1")


def test_trefoil_not_certified(trefoil):
    code = gauss_code(trefoil, "1")
    assert sorted(abs(c) for c in code) == [1, 1, 2, 2, 3, 3]
    assert not is_unknotted(trefoil, "1")


def test_unknot_survey_finds_the_standard_unknot():
    out = unknot_survey(6)
    assert out.max_tb == -1
    w = front_from_text(out.witness)
    assert tb(w, w.components[0]) == -1
    assert out.certified >= 1
    assert out.as_dict()["max_tb"] == -1
