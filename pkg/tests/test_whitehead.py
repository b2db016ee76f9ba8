import pytest

from conftest import HOPF, TREFOIL, UNKNOT
from src.errors import WhiteheadError
from src.front.diagram import concat, front_from_text, validate
from src.front.invariants import linking_number, rot, tb
from src.front.moves import stabilize
from src.whitehead.multiple import (
    WhiteheadParams,
    canonical_framing,
    homology_multiplicity,
    pattern_torus,
    whitehead_multiple,
)
from src.whitehead.satellite import FramedComponent, copy_label, legendrian_parallel_link, parallel_copies


def test_params_validate():
    with pytest.raises(WhiteheadError):
        WhiteheadParams(0)
    assert WhiteheadParams("3").n == 3


@pytest.mark.parametrize("n, f, expected", [(1, 4, 4), (3, -2, -2), (2, 5, 0), (6, -1, 0)])
def test_canonical_framing(n, f, expected):
    assert canonical_framing(n, f) == expected


def test_copy_labels():
    assert copy_label("k", 0) == "k"
    assert copy_label("k", 2) == "k.3"


@pytest.mark.parametrize("n", range(1, 8))
def test_unknot_multiple_tb(unknot, n):
    out, fc = whitehead_multiple(unknot, FramedComponent("1", -1), WhiteheadParams(n))
    assert validate(out).ok
    assert out.components == ("1",)
    expected = n - 2 if n % 2 else n - 1
    assert tb(out, "1") == expected
    assert fc.framing == canonical_framing(n, -1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_trefoil_multiple_tb(trefoil, n):
    out, _ = whitehead_multiple(trefoil, FramedComponent("1", 1), WhiteheadParams(n))
    assert tb(out, "1") - tb(trefoil, "1") == (n - 1 if n % 2 else n - 2)


def test_even_identity_on_tb_zero_knot(trefoil):
    K = stabilize(trefoil, "1", 1)
    assert tb(K, "1") == 0
    for n in (2, 4, 6):
        out, _ = whitehead_multiple(K, FramedComponent("1", 0), WhiteheadParams(n))
        assert tb(out, "1") == n - 1


@pytest.mark.parametrize("n", range(1, 8))
def test_pattern_multiplicity_parity(trefoil, n):
    fc = FramedComponent("1", 1)
    params = WhiteheadParams(n)
    out, _ = whitehead_multiple(trefoil, fc, params)
    assert homology_multiplicity(out, "1", pattern_torus(trefoil, fc, params)) == n % 2


def test_multiple_through_a_handle():
    meridian = front_from_text("Hp0.c.L Hp0.c.R", ["p"])
    for n in (2, 3, 4, 5):
        out, _ = whitehead_multiple(meridian, FramedComponent("p", 0), WhiteheadParams(n))
        assert tb(out, "p") == n - 1
        assert homology_multiplicity(out, "p", "c") == n % 2


def test_unknown_handle_is_an_error(unknot):
    with pytest.raises(WhiteheadError):
        homology_multiplicity(unknot, "1", "zz")


def test_other_components_untouched(hopf):
    out, _ = whitehead_multiple(hopf, FramedComponent("a", -1), WhiteheadParams(3))
    assert out.components == ("a", "b")
    assert tb(out, "b") == tb(hopf, "b")
    # three alternating copies of a: linking with b is carried once
    assert linking_number(out, "a", "b") == linking_number(hopf, "a", "b")


@pytest.mark.parametrize("n", range(1, 7))
def test_hopf_components_are_interchangeable(hopf, n):
    on_a, fa = whitehead_multiple(hopf, FramedComponent("a", -1), WhiteheadParams(n))
    on_b, fb = whitehead_multiple(hopf, FramedComponent("b", -1), WhiteheadParams(n))
    assert tb(on_a, "a") == tb(on_b, "b") == (n % 2) * -1 + n - 1
    assert rot(on_a, "a") == rot(on_b, "b")
    assert tb(on_a, "b") == tb(on_b, "a") == -1
    assert linking_number(on_a, "a", "b") == linking_number(on_b, "a", "b")
    assert abs(linking_number(on_a, "a", "b")) == n % 2
    assert fa.framing == fb.framing


@pytest.mark.parametrize("n", [2, 3, 5])
def test_multiple_is_local_to_its_chart(n):
    left = front_from_text(UNKNOT, ["u"])
    knot = front_from_text(TREFOIL, ["k"])
    right = front_from_text(HOPF, ["v", "w"])
    front = concat(concat(left, knot), right)
    out, _ = whitehead_multiple(front, FramedComponent("k", 1), WhiteheadParams(n))
    head, tail = len(left), len(right)
    assert out.events[:head] == front.events[:head]
    assert out.events[-tail:] == front.events[-tail:]
    assert out.components == front.components
    assert len(out) > len(front)
    for label in ("u", "v", "w"):
        assert tb(out, label) == tb(front, label)
        assert rot(out, label) == rot(front, label)
    assert linking_number(out, "v", "w") == linking_number(front, "v", "w")


def test_band_sites_must_be_right_cusps(trefoil):
    with pytest.raises(WhiteheadError):
        whitehead_multiple(trefoil, FramedComponent("1", 1), WhiteheadParams(3, band_sites=(0, 0)))
    with pytest.raises(WhiteheadError):
        whitehead_multiple(trefoil, FramedComponent("1", 1), WhiteheadParams(3, band_sites=(5,)))
    out, _ = whitehead_multiple(trefoil, FramedComponent("1", 1), WhiteheadParams(3, band_sites=(5, 6)))
    assert tb(out, "1") == 3


def test_unknown_component(unknot):
    with pytest.raises(WhiteheadError):
        whitehead_multiple(unknot, FramedComponent("zz", 0), WhiteheadParams(2))


@pytest.mark.parametrize("f", [-3, -1, 1])
def test_parallel_copies_link_by_framing(unknot, f):
    out = parallel_copies(unknot, FramedComponent("1", f), 2)
    assert out.components == ("1", "1.2")
    assert linking_number(out, "1", "1.2") == f
    assert tb(out, "1") == -1
    assert tb(out, "1.2") == (-1 if f >= -1 else -1 - 2 * (-1 - f))


def test_lowered_copies_lose_tb(unknot):
    out = parallel_copies(unknot, FramedComponent("1", -3), 3)
    assert tb(out, "1.2") == -5
    assert tb(out, "1.3") == -5
    assert linking_number(out, "1.2", "1.3") == -3


def test_parallel_link_needs_two(unknot):
    with pytest.raises(WhiteheadError):
        legendrian_parallel_link(unknot, FramedComponent("1", -1), 1)
    out = legendrian_parallel_link(front_from_text(UNKNOT), FramedComponent("1", -1), 2)
    assert tb(out, "1.2") == -1


def test_full_twists_keep_copy_tb():
    K = front_from_text(TREFOIL)
    out = parallel_copies(K, FramedComponent("1", 3), 2)
    assert tb(out, "1") == tb(out, "1.2") == 1
    assert linking_number(out, "1", "1.2") == 3
