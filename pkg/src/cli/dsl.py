# src/cli/dsl.py — the handlebody description language: lark grammar, reference checks, canonical printer
"""
The grammar is LALR(1) on lark's basic lexer, so keywords never double as names.
`#` runs to the end of the line. Every problem becomes a Diagnostic with a
1-based line and column; parse() raises DslError carrying all of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Token as LarkToken, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from src.errors import DslError, FrontError
from src.front.diagram import FrontDiagram, HandlePass, parse_word, validate

COMMANDS = ("invariants", "defect", "whitehead", "reduce", "decompose", "corks", "render")

KEYWORDS = {
    "handlebody", "positron", "link", "framing", "front", "reversed", "component",
    "whitehead", "decomposition", "side1", "side2", "corks", "n", "a1", "a2", "run",
}


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str
    code: str = "E-DSL"

    def __str__(self) -> str:
        return f"{self.code} {self.line}:{self.col}: {self.message}"


@dataclass(frozen=True)
class Pos:
    line: int = 0
    col: int = 0


# ---- AST; positions never take part in equality ----

@dataclass(frozen=True)
class TwoHandleDecl:
    name: str
    framing: int
    front: Optional[str] = None
    reversed: bool = False
    component: Optional[int] = None
    whitehead: Optional[Tuple[int, int]] = None
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class OneHandleDecl:
    name: str
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class HandlebodyDecl:
    name: str
    positron: Optional[int] = None
    one_handles: Tuple[OneHandleDecl, ...] = ()
    link: Optional[str] = None
    two_handles: Tuple[TwoHandleDecl, ...] = ()
    pos: Pos = field(default=Pos(), compare=False)
    link_pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class Ref:
    name: str
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class DecompositionDecl:
    name: str
    side1: Ref
    side2: Ref
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class CorksDecl:
    name: str
    n: Ref
    a1: Ref
    a2: Ref
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class RunDecl:
    command: str
    target: Ref
    params: Tuple[Tuple[str, int], ...] = ()
    pos: Pos = field(default=Pos(), compare=False)


Item = Union[HandlebodyDecl, DecompositionDecl, CorksDecl, RunDecl]


@dataclass(frozen=True)
class DslDocument:
    items: Tuple[Item, ...] = ()

    def _named(self, kind) -> Dict[str, Item]:
        return {it.name: it for it in self.items if isinstance(it, kind)}

    @property
    def handlebodies(self) -> Dict[str, HandlebodyDecl]:
        return self._named(HandlebodyDecl)

    @property
    def decompositions(self) -> Dict[str, DecompositionDecl]:
        return self._named(DecompositionDecl)

    @property
    def corks(self) -> Dict[str, CorksDecl]:
        return self._named(CorksDecl)

    @property
    def runs(self) -> Tuple[RunDecl, ...]:
        return tuple(it for it in self.items if isinstance(it, RunDecl))


# ---- grammar ----

GRAMMAR = r"""
start: _item*

_item: handlebody
     | positron_def
     | decomposition
     | corks
     | run

handlebody: HANDLEBODY NAME _LBRACE _stmt* _RBRACE
positron_def: HANDLEBODY NAME _EQUAL _POSITRON _LPAR INT _RPAR _SEMI

_stmt: one_handle
     | link
     | two_handle

one_handle: ONE_H NAME _SEMI
link: LINK STRING _SEMI
two_handle: TWO_H NAME _FRAMING INT (front | component) whitehead? _SEMI
front: _FRONT STRING REVERSED?
component: _COMPONENT INT
whitehead: WHITEHEAD _LPAR INT _COMMA INT _RPAR

decomposition: DECOMPOSITION NAME _LBRACE _SIDE1 NAME _SEMI _SIDE2 NAME _SEMI _RBRACE
corks: CORKS NAME _LBRACE N NAME _SEMI _A1 NAME _SEMI _A2 NAME _SEMI _RBRACE

run: RUN command NAME param* _SEMI
command: NAME | WHITEHEAD | CORKS
param: (NAME | N) _EQUAL INT

HANDLEBODY: "handlebody"
DECOMPOSITION: "decomposition"
CORKS: "corks"
RUN: "run"
LINK: "link"
WHITEHEAD: "whitehead"
REVERSED: "reversed"
N: "n"
_POSITRON: "positron"
_FRAMING: "framing"
_FRONT: "front"
_COMPONENT: "component"
_SIDE1: "side1"
_SIDE2: "side2"
_A1: "a1"
_A2: "a2"

ONE_H.2: "1h"
TWO_H.2: "2h"
INT: /-?\d+/
NAME: /[A-Za-z_][\w']*/
STRING: /"[^"\n]*"/

_LBRACE: "{"
_RBRACE: "}"
_LPAR: "("
_RPAR: ")"
_EQUAL: "="
_COMMA: ","
_SEMI: ";"

COMMENT: /#[^\n]*/
WS: /[ \t\r\n]+/
%ignore WS
%ignore COMMENT
"""

_LARK = Lark(GRAMMAR, parser="lalr", lexer="basic")

_DESCRIBE = {"NAME": "a name", "INT": "an integer", "STRING": "a quoted front word", "$END": "end of input"}


@dataclass(frozen=True)
class Token:
    kind: str   # NAME, INT, STRING, HANDLE, PUNCT, EOF
    text: str
    pos: Pos


def _pos(tok: LarkToken) -> Pos:
    return Pos(tok.line, tok.column)


def _end(text: str) -> Pos:
    lines = text.split("\n")
    return Pos(len(lines), len(lines[-1]) + 1)


def _kind(tok: LarkToken) -> str:
    if tok.type in ("ONE_H", "TWO_H"):
        return "HANDLE"
    if tok.type in ("INT", "STRING"):
        return tok.type
    if tok.type == "NAME" or tok.value in KEYWORDS:
        return "NAME"
    return "PUNCT"


def _expected(names) -> str:
    out = []
    for name in names:
        if name in _DESCRIBE:
            out.append(_DESCRIBE[name])
        else:
            out.append(repr(_LARK.get_terminal(name).pattern.value))
    out = sorted(set(out))
    return out[0] if len(out) == 1 else ", ".join(out[:-1]) + " or " + out[-1]


def _diagnose(err: UnexpectedInput, text: str) -> Diagnostic:
    if isinstance(err, UnexpectedCharacters):
        msg = "unterminated string" if err.char == '"' else f"unexpected character {err.char!r}"
        return Diagnostic(err.line, err.column, msg)
    if isinstance(err, UnexpectedToken) and err.token.type != "$END":
        tok = err.token
        if tok.value in KEYWORDS and "NAME" in err.expected:
            return Diagnostic(tok.line, tok.column, f"keyword {tok.value!r} used as a name")
        return Diagnostic(tok.line, tok.column, f"expected {_expected(err.expected)}, got {tok.value!r}")
    end = _end(text)
    return Diagnostic(end.line, end.col, f"expected {_expected(getattr(err, 'expected', ()) or ())}, got end of input")


def tokenize(text: str) -> List[Token]:
    try:
        toks = [Token(_kind(t), t.value, _pos(t)) for t in _LARK.lex(text)]
    except UnexpectedInput as e:
        raise DslError([_diagnose(e, text)]) from None
    end = _end(text)
    return toks + [Token("EOF", "", end)]


# ---- tree to records ----

def _fail_at(tok: LarkToken, message: str) -> DslError:
    return DslError([Diagnostic(tok.line, tok.column, message)])


def _text(tok: LarkToken) -> str:
    return " ".join(tok.value[1:-1].split())


class _Build(Transformer):
    def start(self, items):
        return DslDocument(tuple(items))

    def one_handle(self, c):
        _, name = c
        return OneHandleDecl(name.value, _pos(name))

    def link(self, c):
        kw, s = c
        return ("link", _text(s), _pos(s), kw)

    def front(self, c):
        return ("front", _text(c[0]), len(c) > 1)

    def component(self, c):
        return ("component", int(c[0]))

    def whitehead(self, c):
        return ("whitehead", (int(c[1]), int(c[2])))

    def two_handle(self, c):
        _, name, framing, *rest = c
        front, rev, comp, wh = None, False, None, None
        for part in rest:
            if part[0] == "front":
                front, rev = part[1], part[2]
            elif part[0] == "component":
                comp = part[1]
            else:
                wh = part[1]
        return TwoHandleDecl(name.value, int(framing), front, rev, comp, wh, _pos(name))

    def handlebody(self, c):
        kw, name, *stmts = c
        ones = [s for s in stmts if isinstance(s, OneHandleDecl)]
        twos = [s for s in stmts if isinstance(s, TwoHandleDecl)]
        links = [s for s in stmts if isinstance(s, tuple)]
        if len(links) > 1:
            raise _fail_at(links[1][3], "a handlebody has at most one link")
        link, link_pos = (links[0][1], links[0][2]) if links else (None, Pos())
        return HandlebodyDecl(name.value, None, tuple(ones), link, tuple(twos), _pos(kw), link_pos)

    def positron_def(self, c):
        kw, name, n = c
        return HandlebodyDecl(name.value, positron=int(n), pos=_pos(kw))

    def decomposition(self, c):
        kw, name, s1, s2 = c
        return DecompositionDecl(name.value, Ref(s1.value, _pos(s1)), Ref(s2.value, _pos(s2)), _pos(kw))

    def corks(self, c):
        kw, name, *rest = c
        n, a1, a2 = [Ref(t.value, _pos(t)) for t in rest if t.type == "NAME"]
        return CorksDecl(name.value, n, a1, a2, _pos(kw))

    def command(self, c):
        return c[0]

    def param(self, c):
        return c[0].value, int(c[1])

    def run(self, c):
        kw, cmd, target, *params = c
        if cmd.value not in COMMANDS:
            raise _fail_at(cmd, f"unknown command {cmd.value!r}; one of {', '.join(COMMANDS)}")
        return RunDecl(cmd.value, Ref(target.value, _pos(target)), tuple(params), _pos(kw))


def _read_document(text: str) -> DslDocument:
    try:
        tree = _LARK.parse(text)
    except UnexpectedInput as e:
        raise DslError([_diagnose(e, text)]) from None
    try:
        return _Build().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, DslError):
            raise e.orig_exc from None
        raise


# ---- references ----

def _front_problem(word: str) -> Tuple[Optional[str], Optional[FrontDiagram]]:
    try:
        front = FrontDiagram(parse_word(word))
    except FrontError as e:
        return e.message, None
    rep = validate(front)
    if not rep.ok:
        return rep.message, None
    return None, front


def _check_handlebody(hb: HandlebodyDecl, diags: List[Diagnostic]) -> None:
    def ref_error(pos: Pos, msg: str) -> None:
        diags.append(Diagnostic(pos.line, pos.col, msg, "E-REF"))

    if hb.positron is not None:
        if hb.positron < 1:
            diags.append(Diagnostic(hb.pos.line, hb.pos.col, f"positron index must be >= 1, got {hb.positron}"))
        return
    declared = set()
    for one in hb.one_handles:
        if one.name in declared:
            ref_error(one.pos, f"1-handle {one.name!r} declared twice")
        declared.add(one.name)

    fronts: List[Tuple[Pos, FrontDiagram]] = []
    n_link = 0
    if hb.link is not None:
        problem, front = _front_problem(hb.link)
        if problem:
            diags.append(Diagnostic(hb.link_pos.line, hb.link_pos.col, f"bad link front: {problem}", "E-FRONT"))
        else:
            n_link = len(front.components)
            fronts.append((hb.link_pos, front))

    names = set()
    used: Dict[int, str] = {}
    for two in hb.two_handles:
        if two.name in names or two.name in declared:
            ref_error(two.pos, f"handle name {two.name!r} already used in {hb.name}")
        names.add(two.name)
        if two.whitehead is not None and two.whitehead[0] < 1:
            diags.append(Diagnostic(two.pos.line, two.pos.col, "whitehead multiple needs n >= 1"))
        if two.component is not None:
            if hb.link is None:
                ref_error(two.pos, f"{two.name!r} names a link component but {hb.name} has no link")
            elif not 1 <= two.component <= n_link and n_link:
                ref_error(two.pos, f"link has {n_link} components, no component {two.component}")
            elif two.component in used:
                ref_error(two.pos, f"component {two.component} already attached as {used[two.component]!r}")
            used[two.component] = two.name
            continue
        problem, front = _front_problem(two.front)
        if problem:
            diags.append(Diagnostic(two.pos.line, two.pos.col, f"bad front for {two.name!r}: {problem}", "E-FRONT"))
        elif len(front.components) != 1:
            diags.append(Diagnostic(two.pos.line, two.pos.col,
                                    f"front for {two.name!r} has {len(front.components)} components, expected 1",
                                    "E-FRONT"))
        else:
            fronts.append((two.pos, front))
    if n_link and len(used) < n_link:
        missing = sorted(set(range(1, n_link + 1)) - set(used))
        ref_error(hb.link_pos, f"link components {missing} carry no 2-handle")

    for pos, front in fronts:
        for ev in front.events:
            if isinstance(ev, HandlePass) and ev.handle not in declared:
                ref_error(pos, f"front passes through undeclared 1-handle {ev.handle!r}")


def check_references(doc: DslDocument) -> List[Diagnostic]:
    diags: List[Diagnostic] = []
    seen: Dict[str, Item] = {}
    for it in doc.items:
        if isinstance(it, RunDecl):
            continue
        if it.name in seen:
            diags.append(Diagnostic(it.pos.line, it.pos.col, f"name {it.name!r} defined twice", "E-REF"))
        seen[it.name] = it

    hbs = doc.handlebodies

    def need_handlebody(ref: Ref) -> None:
        if ref.name not in hbs:
            diags.append(Diagnostic(ref.pos.line, ref.pos.col, f"unknown handlebody {ref.name!r}", "E-REF"))

    for it in doc.items:
        if isinstance(it, HandlebodyDecl):
            _check_handlebody(it, diags)
        elif isinstance(it, DecompositionDecl):
            need_handlebody(it.side1)
            need_handlebody(it.side2)
        elif isinstance(it, CorksDecl):
            for r in (it.n, it.a1, it.a2):
                need_handlebody(r)
        elif it.target.name not in seen:
            diags.append(Diagnostic(it.target.pos.line, it.target.pos.col,
                                    f"unknown name {it.target.name!r}", "E-REF"))
    return diags


def parse(text: str) -> DslDocument:
    doc = _read_document(text)
    diags = check_references(doc)
    if diags:
        raise DslError(diags)
    return doc


def diagnostics(text: str) -> List[Diagnostic]:
    """Empty when the text parses cleanly."""
    try:
        parse(text)
    except DslError as e:
        return e.diagnostics
    return []


# ---- printer ----

def _print_two(two: TwoHandleDecl) -> str:
    out = f"  2h {two.name} framing {two.framing}"
    if two.component is not None:
        out += f" component {two.component}"
    else:
        out += f' front "{two.front}"' + (" reversed" if two.reversed else "")
    if two.whitehead is not None:
        out += f" whitehead({two.whitehead[0]}, {two.whitehead[1]})"
    return out + ";"


def _print_item(it: Item) -> str:
    if isinstance(it, HandlebodyDecl):
        if it.positron is not None:
            return f"handlebody {it.name} = positron({it.positron});"
        lines = [f"handlebody {it.name} {{"]
        lines += [f"  1h {one.name};" for one in it.one_handles]
        if it.link is not None:
            lines.append(f'  link "{it.link}";')
        lines += [_print_two(two) for two in it.two_handles]
        lines.append("}")
        return "\n".join(lines)
    if isinstance(it, DecompositionDecl):
        return f"decomposition {it.name} {{\n  side1 {it.side1.name};\n  side2 {it.side2.name};\n}}"
    if isinstance(it, CorksDecl):
        return f"corks {it.name} {{\n  n {it.n.name};\n  a1 {it.a1.name};\n  a2 {it.a2.name};\n}}"
    params = "".join(f" {k}={v}" for k, v in it.params)
    return f"run {it.command} {it.target.name}{params};"


def print_document(doc: DslDocument) -> str:
    return "\n\n".join(_print_item(it) for it in doc.items) + ("\n" if doc.items else "")
