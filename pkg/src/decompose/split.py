# src/decompose/split.py — normal generation by relators and the contractible half of a simply connected handlebody
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.decompose.rewrite import Decomposition
from src.front.diagram import FrontDiagram, concat, rename_handles
from src.handlebody.contractible import Contractible, ContractibilityCertificate, is_contractible_certificate
from src.handlebody.homology import lattice_factors, pi1_presentation
from src.handlebody.model import FramedHandle, Handlebody, ball, check, word_front
from src.handlebody.words import Word, abelianize, conjugate, format_word, invert, multiply, reduce_word
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    relator: int  # 0-based index
    exponent: int

    def word(self, relators: Sequence[Word]) -> Word:
        r = relators[self.relator]
        return conjugate(r if self.exponent > 0 else invert(r), self.conjugator)


def expand(factors: Sequence[Factor], relators: Sequence[Word]) -> Word:
    """The unreduced product of the factors, letter by letter."""
    out: List[int] = []
    for f in factors:
        r = relators[f.relator]
        body = r if f.exponent > 0 else invert(r)
        out.extend(f.conjugator)
        out.extend(body)
        out.extend(invert(f.conjugator))
    return tuple(out)


@dataclass(frozen=True)
class ConjugateSearch:
    found: bool
    expressions: Tuple[Tuple[Factor, ...], ...] = ()
    reason: str = ""
    spent: int = 0

    @property
    def status(self) -> str:
        return "FOUND" if self.found else "UNKNOWN"


def _conjugators(n_gens: int, length: int) -> List[Word]:
    letters = [g for i in range(1, n_gens + 1) for g in (i, -i)]
    out: List[Word] = [()]
    layer: List[Word] = [()]
    for _ in range(length):
        layer = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        out.extend(layer)
    return out


def abelian_obstruction(target: Word, relators: Sequence[Word], n_gens: int) -> Optional[str]:
    """Non-None when the target's abelianization lies outside the relator lattice."""
    rows = [abelianize(r, n_gens) for r in relators]
    with_target = rows + [abelianize(target, n_gens)]
    a, b = lattice_factors(rows, n_gens), lattice_factors(with_target, n_gens)
    if len(b) > len(a):
        return "abelianization: target is independent of the relators"
    prod_a = 1
    for d in a:
        prod_a *= d
    prod_b = 1
    for d in b:
        prod_b *= d
    if prod_a != prod_b:
        return f"abelianization: target has order {prod_a // prod_b} modulo the relators"
    return None


def _search_one(target: Word, relators: Sequence[Word], n_gens: int, budget: int,
                conj_length: int) -> Tuple[Optional[Tuple[Factor, ...]], int]:
    target = reduce_word(target)
    pieces = [
        (Factor(c, i, e), Factor(c, i, e).word(relators))
        for c in _conjugators(n_gens, conj_length)
        for i in range(len(relators))
        for e in (1, -1)
    ]
    counter = itertools.count()
    start: Word = ()
    heap = [(len(target), 0, next(counter), start, ())]
    seen = {start}
    spent = 0
    while heap:
        _, depth, _, w, factors = heapq.heappop(heap)
        if w == target:
            return factors, spent
        for f, piece in pieces:
            if spent >= budget:
                return None, spent
            spent += 1
            nxt = multiply(w, piece)
            if nxt in seen:
                continue
            seen.add(nxt)
            h = len(multiply(invert(nxt), target))
            heapq.heappush(heap, (h + depth + 1, depth + 1, next(counter), nxt, factors + (f,)))
    return None, spent


def express_as_conjugates(targets: Sequence[Word], relators: Sequence[Word], budget: int = 10000,
                          conj_length: int = 2, n_gens: Optional[int] = None) -> ConjugateSearch:
    """Write each target as a product of conjugates of relators^±1, by bounded best-first search."""
    relators = [reduce_word(r) for r in relators]
    letters = [abs(x) for w in list(targets) + relators for x in w]
    n_gens = n_gens if n_gens is not None else max(letters, default=0)
    exprs: List[Tuple[Factor, ...]] = []
    spent = 0
    for t in targets:
        blocked = abelian_obstruction(t, relators, n_gens)
        if blocked:
            return ConjugateSearch(False, tuple(exprs), blocked, spent)
        factors, used = _search_one(t, relators, n_gens, budget, conj_length)
        spent += used
        if factors is None:
            return ConjugateSearch(False, tuple(exprs), f"budget {budget} spent on {t}", spent)
        if reduce_word(expand(factors, relators)) != reduce_word(t):
            return ConjugateSearch(False, tuple(exprs), "expression failed free reduction", spent)
        exprs.append(factors)
    log.debug("expressed %d targets in %d steps", len(exprs), spent)
    return ConjugateSearch(True, tuple(exprs), "", spent)


# -------------------------------------------------------- the split ---

@dataclass(frozen=True)
class SlideStep:
    """One band sum of a new 2-handle with a push-off of a 2-handle of X, the band running along `conjugator`."""

    handle: str
    over: str
    conjugator: str
    exponent: int
    word: str  # attaching word of `handle` after the slide, unreduced

    def as_dict(self) -> Dict[str, object]:
        return dict(self.__dict__)


def slide_sequence(label: str, factors: Sequence[Factor], relators: Sequence[Word],
                   names: Sequence[str], over: Sequence[str]) -> Tuple[Word, Tuple[SlideStep, ...]]:
    """Start from a 0-framed unknot (one half of a cancelling 2/3 pair) and slide it once per factor."""
    word: Word = ()
    steps: List[SlideStep] = []
    for f in factors:
        r = relators[f.relator]
        word = word + tuple(f.conjugator) + (r if f.exponent > 0 else invert(r)) + invert(f.conjugator)
        steps.append(SlideStep(label, over[f.relator], format_word(f.conjugator, names), f.exponent,
                               format_word(word, names)))
    return word, tuple(steps)


@dataclass(frozen=True)
class ContractiblePiece:
    status: str                     # "FOUND" or "UNKNOWN"
    x1: Optional[Handlebody] = None
    x2: Optional[Handlebody] = None
    certificate: Optional[ContractibilityCertificate] = None
    expressions: Dict[str, str] = field(default_factory=dict)
    reason: str = ""
    slides: Tuple[SlideStep, ...] = ()

    def decomposition(self) -> Decomposition:
        return Decomposition(self.x1, self.x2)


def contractible_piece(X: Handlebody, budget: int = 10000, conj_length: int = 2) -> ContractiblePiece:
    """Split X into a contractible X1 (1-handles plus one 2-handle per generator) and the rest.

    Each new 2-handle starts unknotted and is slid over the 2-handles of X along the
    conjugators found for its generator; X1 keeps it with the word those slides leave.
    X2 keeps X's 2-handles; the 3-handles cancelling the new 2-handles appear there as
    dual 1-handles.
    """
    check(X)
    pres = pi1_presentation(X)
    g = len(pres.generators)
    if g == 0:
        return ContractiblePiece("FOUND", ball(), X, is_contractible_certificate(ball(), budget))
    targets = [(i,) for i in range(1, g + 1)]
    search = express_as_conjugates(targets, pres.relators, budget, conj_length, n_gens=g)
    if not search.found:
        return ContractiblePiece("UNKNOWN", reason=search.reason)

    front = FrontDiagram()
    handles: List[FramedHandle] = []
    shown: Dict[str, str] = {}
    slides: List[SlideStep] = []
    for i, factors in enumerate(search.expressions, start=1):
        label = f"k{i}"
        word, steps = slide_sequence(label, factors, pres.relators, pres.generators, X.labels)
        if reduce_word(word) != targets[i - 1]:
            return ContractiblePiece("UNKNOWN", reason=f"slides for {label} do not reduce to its generator")
        slides.extend(steps)
        front = concat(front, word_front(word, pres.generators, label))
        handles.append(FramedHandle(FramedComponent(label, 0)))
        shown[label] = format_word(word, pres.generators)
    x1 = check(Handlebody(pres.generators, tuple(handles), front))
    cert = is_contractible_certificate(x1, budget)

    duals = {name: f"t{i}" for i, name in enumerate(pres.generators, start=1)}
    x2 = check(Handlebody(tuple(duals.values()), X.two_handles, rename_handles(X.front, duals), -1))
    if cert.verdict is not Contractible.YES:
        return ContractiblePiece("UNKNOWN", x1, x2, cert, shown, cert.reason, tuple(slides))
    log.info("contractible piece: %d generators, %d slides, certificate %s", g, len(slides), cert.verdict.value)
    return ContractiblePiece("FOUND", x1, x2, cert, shown, slides=tuple(slides))
