from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from src.cli.build import Workspace, build_handlebody
from src.cli.dsl import (
    Diagnostic,
    RunDecl,
    diagnostics,
    parse,
    print_document,
    tokenize,
)
from src.errors import DslError, PkitError, exit_code
from src.front.invariants import linking_number, tb
from src.handlebody.certificate import defect_total
from src.handlebody.homology import homology

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

SMALL = """\
handlebody X { 2h a framing 1 front "Lc0 Rc0"; }  # defect 3
handlebody W = positron(3);
decomposition D { side1 X; side2 W; }
run whitehead X n=3 f=-1;
"""


# ---- parsing ----

def test_parse_items():
    doc = parse(SMALL)
    assert list(doc.handlebodies) == ["X", "W"]
    x = doc.handlebodies["X"]
    assert x.two_handles[0].framing == 1
    assert x.two_handles[0].front == "Lc0 Rc0"
    assert doc.handlebodies["W"].positron == 3
    dec = doc.decompositions["D"]
    assert (dec.side1.name, dec.side2.name) == ("X", "W")
    (run,) = doc.runs
    assert run == RunDecl("whitehead", run.target, (("n", 3), ("f", -1)))
    assert run.target.name == "X"


def test_run_parameters_keep_explicit_zero():
    doc = parse('handlebody U { 2h u framing -1 front "Lc0 Rc0"; }\nrun reduce U n=0 k=5;\n')
    (run,) = doc.runs
    assert run.command == "reduce"
    assert run.params == (("n", 0), ("k", 5))


def test_tokens_carry_positions():
    toks = tokenize('handlebody X {\n  1h x;\n}')
    assert [(t.kind, t.text) for t in toks[:4]] == [("NAME", "handlebody"), ("NAME", "X"), ("PUNCT", "{"), ("HANDLE", "1h")]
    assert (toks[3].pos.line, toks[3].pos.col) == (2, 3)
    assert toks[-1].kind == "EOF"


def test_front_strings_are_normalized():
    doc = parse('handlebody U { 2h u framing 0 front "  Lc0\t Rc0 "; }')
    assert doc.handlebodies["U"].two_handles[0].front == "Lc0 Rc0"


def test_syntax_error_position():
    text = 'handlebody X { 2h a framing front "Lc0 Rc0"; }'
    with pytest.raises(DslError) as info:
        parse(text)
    (d,) = info.value.diagnostics
    assert (d.line, d.col, d.code) == (1, 29, "E-DSL")
    assert "an integer" in d.message
    assert exit_code(info.value) == 2


def test_unknown_reference_position():
    text = 'handlebody X { 2h a framing 1 front "Lc0 Rc0"; }\ndecomposition D { side1 X; side2 Q; }\n'
    (d,) = diagnostics(text)
    assert (d.line, d.col, d.code) == (2, 34, "E-REF")
    assert str(d) == "E-REF 2:34: unknown handlebody 'Q'"
    with pytest.raises(DslError) as info:
        parse(text)
    assert exit_code(info.value) == 3


def test_unterminated_string():
    (d,) = diagnostics('handlebody X { 2h a framing 0 front "Lc0 Rc0; }')
    assert (d.line, d.col) == (1, 37)
    assert d.message == "unterminated string"


def test_unexpected_character():
    (d,) = diagnostics("handlebody X @")
    assert (d.line, d.col) == (1, 14)


def test_comments_are_skipped():
    doc = parse("# nothing here\n\n# still nothing\n")
    assert doc.items == ()
    assert print_document(doc) == ""


@pytest.mark.parametrize("text, fragment", [
    ("handlebody run { }", "keyword"),
    ("run frobnicate X;", "unknown command"),
    ('handlebody X { link "Lc0 Rc0"; link "Lc0 Rc0"; 2h a framing 0 component 1; }', "at most one link"),
    ("handlebody W = positron(0);", "positron index"),
    ('handlebody X { 2h a framing 0 front "Lc0 Rc0" whitehead(0, 0); }', "n >= 1"),
])
def test_syntax_problems(text, fragment):
    (d,) = diagnostics(text)
    assert d.code == "E-DSL"
    assert fragment in d.message


@pytest.mark.parametrize("text, fragment", [
    ('handlebody X { 2h a framing 0 front "Lc0 Rc0"; }\nhandlebody X = positron(1);', "defined twice"),
    ('handlebody X { link "Lc0 Lc1 X2 X0 Rc1 Rc0"; 2h a framing -2 component 1; }', "carry no 2-handle"),
    ('handlebody X { link "Lc0 Rc0"; 2h a framing -2 component 3; }', "no component 3"),
    ('handlebody X { 2h a framing -2 component 1; }', "has no link"),
    ('handlebody X { 2h r framing 0 front "Hp0.x.L Hp0.x.R"; }', "undeclared 1-handle"),
    ('handlebody X { 1h x; 1h x; }', "declared twice"),
    ('handlebody X { 1h a; 2h a framing 0 front "Lc0 Rc0"; }', "already used"),
    ("run defect Nowhere;", "unknown name"),
])
def test_reference_problems(text, fragment):
    diags = diagnostics(text)
    assert diags and all(d.code == "E-REF" for d in diags)
    assert any(fragment in d.message for d in diags)


@pytest.mark.parametrize("front, fragment", [
    ("Lc0 Rc1", "right cusp"),
    ("Lc0 Q1 Rc0", "offset"),
    ("Lc0 Lc1 X2 X0 Rc1 Rc0", "2 components"),
])
def test_front_problems(front, fragment):
    (d,) = diagnostics(f'handlebody X {{ 2h a framing 0 front "{front}"; }}')
    assert d.code == "E-FRONT"
    assert fragment in d.message


def test_diagnostic_text():
    assert str(Diagnostic(3, 7, "boom")) == "E-DSL 3:7: boom"


# ---- printing ----

@pytest.mark.parametrize("name", ["basics.pk", "decomposition.pk", "corks.pk"])
def test_samples_round_trip(name):
    doc = parse((SAMPLES / name).read_text())
    text = print_document(doc)
    assert parse(text) == doc
    assert print_document(parse(text)) == text


names = st.sampled_from(["A", "B", "K1", "Left", "right_2"])


@given(
    framings=st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4),
    reversed_=st.booleans(),
    wh=st.one_of(st.none(), st.tuples(st.integers(min_value=1, max_value=6), st.integers(min_value=-3, max_value=3))),
    target=names,
)
def test_printed_documents_reparse(framings, reversed_, wh, target):
    lines = [f"handlebody {target} {{", "  1h x;"]
    for i, f in enumerate(framings):
        clause = f' whitehead({wh[0]}, {wh[1]})' if wh and i == 0 else ""
        rev = " reversed" if reversed_ and i == 0 else ""
        lines.append(f'  2h k{i} framing {f} front "Hp0.x.L Hp0.x.R"{rev}{clause};')
    lines.append("}")
    lines.append(f"run defect {target} budget=5;")
    doc = parse("\n".join(lines))
    assert parse(print_document(doc)) == doc
    assert len(doc.handlebodies[target].two_handles) == len(framings)


# ---- building ----

def test_workspace_builds_the_basics():
    ws = Workspace(parse((SAMPLES / "basics.pk").read_text()))
    hopf = ws.handlebody("Hopf")
    assert hopf.labels == ("a", "b")
    assert abs(linking_number(hopf.front, "a", "b")) == 1
    assert homology(hopf).invariants() == (3, 0, (), 2)
    assert ws.handlebody("Hopf") is hopf
    assert tb(ws.handlebody("U").front, "u") == -1
    assert ws.kind("W3") == "handlebody"
    assert ws.names("handlebody") == ["W3", "W4", "U", "Hopf"]
    with pytest.raises(PkitError) as info:
        ws.handlebody("nope")
    assert exit_code(info.value) == 3


def test_workspace_decomposition_and_corks():
    ws = Workspace(parse((SAMPLES / "decomposition.pk").read_text()))
    dec = ws.decomposition("D")
    assert (defect_total(dec.side1), defect_total(dec.side2)) == (3, 1)
    assert ws.kind("D") == "decomposition"

    ws = Workspace(parse((SAMPLES / "corks.pk").read_text()))
    t1, t2 = ws.cork_triples("C")
    assert (defect_total(t1.N), defect_total(t1.A1), defect_total(t1.A2)) == (2, 1, 2)
    assert t2.A1 is t1.A2


def test_whitehead_clause_keeps_declared_framing():
    doc = parse('handlebody A { 1h c; 2h p framing 2 front "Hp0.c.L Hp0.c.R" whitehead(3, 0); }')
    H = build_handlebody(doc.handlebodies["A"])
    assert H.handle("p").framing == 2
    assert tb(H.front, "p") == 2


def test_reversed_front():
    doc = parse('handlebody H { 1h x; 2h r framing 0 front "Hp0.x.L Hp0.x.R" reversed; }')
    H = build_handlebody(doc.handlebodies["H"])
    assert H.front.orientations == (-1,)
