# src/cli/build.py — turn a parsed document into handlebodies, decompositions and cork triples
from __future__ import annotations

import logging
from typing import Dict, List, Tuple

from src.cli.dsl import CorksDecl, DecompositionDecl, DslDocument, HandlebodyDecl
from src.decompose.corks import CorkTriple
from src.decompose.positron import positron
from src.decompose.rewrite import Decomposition
from src.errors import PkitError
from src.front.diagram import FrontDiagram, concat, parse_word, relabel, reverse
from src.handlebody.model import FramedHandle, Handlebody, check
from src.whitehead.multiple import WhiteheadParams, whitehead_multiple
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)


def build_handlebody(decl: HandlebodyDecl) -> Handlebody:
    """Link components first (renamed after their 2-handles), then the single-component fronts.

    A `whitehead(n, f)` clause replaces the handle's knot K by P_n(K, f); the declared framing stays.
    """
    if decl.positron is not None:
        return positron(decl.positron).realized

    front = FrontDiagram()
    if decl.link is not None:
        link = FrontDiagram(parse_word(decl.link))
        names = {str(two.component): two.name for two in decl.two_handles if two.component is not None}
        front = relabel(link, names)
    for two in decl.two_handles:
        if two.front is None:
            continue
        piece = FrontDiagram(parse_word(two.front), (two.name,))
        if two.reversed:
            piece = reverse(piece, two.name)
        front = concat(front, piece)
    for two in decl.two_handles:
        if two.whitehead is not None:
            n, f = two.whitehead
            front, _ = whitehead_multiple(front, FramedComponent(two.name, f), WhiteheadParams(n))

    handles = tuple(FramedHandle(FramedComponent(two.name, two.framing)) for two in decl.two_handles)
    H = Handlebody(tuple(one.name for one in decl.one_handles), handles, front)
    log.debug("built %s: %d 1-handles, %d 2-handles", decl.name, len(H.one_handles), len(handles))
    return check(H)


class Workspace:
    """Lazily built objects of one document, by name."""

    def __init__(self, doc: DslDocument):
        self.doc = doc
        self._handlebodies: Dict[str, Handlebody] = {}

    def handlebody(self, name: str) -> Handlebody:
        if name not in self._handlebodies:
            decls = self.doc.handlebodies
            if name not in decls:
                raise PkitError(f"no handlebody named {name!r}", "E-REF")
            self._handlebodies[name] = build_handlebody(decls[name])
        return self._handlebodies[name]

    def decomposition(self, name: str) -> Decomposition:
        decl: DecompositionDecl = self._lookup(self.doc.decompositions, name, "decomposition")
        return Decomposition(self.handlebody(decl.side1.name), self.handlebody(decl.side2.name))

    def cork_triples(self, name: str) -> Tuple[CorkTriple, CorkTriple]:
        decl: CorksDecl = self._lookup(self.doc.corks, name, "corks block")
        t = CorkTriple(self.handlebody(decl.n.name), self.handlebody(decl.a1.name), self.handlebody(decl.a2.name))
        return t, t.swapped()

    def kind(self, name: str) -> str:
        for kind, table in (("handlebody", self.doc.handlebodies), ("decomposition", self.doc.decompositions),
                            ("corks", self.doc.corks)):
            if name in table:
                return kind
        raise PkitError(f"no item named {name!r}", "E-REF")

    def names(self, kind: str) -> List[str]:
        table = {"handlebody": self.doc.handlebodies, "decomposition": self.doc.decompositions,
                 "corks": self.doc.corks}[kind]
        return list(table)

    @staticmethod
    def _lookup(table, name: str, what: str):
        if name not in table:
            raise PkitError(f"no {what} named {name!r}", "E-REF")
        return table[name]

