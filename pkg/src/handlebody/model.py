# src/handlebody/model.py — 4-dimensional handlebodies with 1- and 2-handles drawn on one front
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Sequence, Tuple

from src.errors import FrontError, HandlebodyError
from src.front.diagram import (
    FrontDiagram,
    HandlePass,
    LeftCusp,
    RightCusp,
    Crossing,
    Event,
    checked,
    concat,
    handles_used,
    relabel,
    rename_handles,
    restrict,
    traversal,
    validate,
)
from src.front.invariants import crossing_sum, right_cusps
from src.front.moves import band_join, fish
from src.handlebody.words import Word
from src.whitehead.satellite import FramedComponent, copy_label, parallel_copies

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FramedHandle:
    attaching: FramedComponent

    @property
    def label(self) -> str:
        return self.attaching.component

    @property
    def framing(self) -> int:
        return self.attaching.framing


@dataclass(frozen=True)
class Summand:
    """Handles of one boundary-sum summand, by name. `orientation` is relative to the whole body."""

    one_handles: Tuple[str, ...] = ()
    two_handles: Tuple[str, ...] = ()
    orientation: int = 1


@dataclass(frozen=True)
class Handlebody:
    one_handles: Tuple[str, ...] = ()
    two_handles: Tuple[FramedHandle, ...] = ()
    front: FrontDiagram = field(default_factory=FrontDiagram)
    orientation: int = 1
    summands: Tuple[Summand, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "one_handles", tuple(self.one_handles))
        object.__setattr__(self, "two_handles", tuple(self.two_handles))
        if not self.summands and (self.one_handles or self.two_handles):
            whole = Summand(self.one_handles, tuple(h.label for h in self.two_handles))
            object.__setattr__(self, "summands", (whole,))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(h.label for h in self.two_handles)

    def handle(self, label: str) -> FramedHandle:
        for h in self.two_handles:
            if h.label == label:
                return h
        raise HandlebodyError(f"unknown 2-handle {label!r}")


def check(H: Handlebody) -> Handlebody:
    """Raise HandlebodyError unless the handle data and the front agree."""
    rep = validate(H.front)
    if not rep.ok:
        raise HandlebodyError(f"attaching front is invalid: {rep.message}")
    if len(set(H.one_handles)) != len(H.one_handles):
        raise HandlebodyError("duplicate 1-handle name")
    if len(set(H.labels)) != len(H.labels):
        raise HandlebodyError("duplicate 2-handle label")
    if set(H.labels) != set(H.front.components):
        raise HandlebodyError(
            f"2-handles {sorted(H.labels)} do not match front components {sorted(H.front.components)}"
        )
    stray = [h for h in handles_used(H.front) if h not in H.one_handles]
    if stray:
        raise HandlebodyError(f"front passes through undeclared 1-handles {stray}")
    if H.orientation not in (1, -1):
        raise HandlebodyError("orientation must be +1 or -1")
    if any(s.orientation not in (1, -1) for s in H.summands):
        raise HandlebodyError("summand orientation must be +1 or -1")
    ones = [n for s in H.summands for n in s.one_handles]
    twos = [n for s in H.summands for n in s.two_handles]
    if sorted(ones) != sorted(H.one_handles) or sorted(twos) != sorted(H.labels):
        raise HandlebodyError("summands do not partition the handles")
    return H


def attaching_word(H: Handlebody, label: str) -> Word:
    """Letters +i / -i for each right- / leftward pass through the i-th 1-handle (1-based)."""
    H.handle(label)
    tr = checked(H.front)
    index = {name: i + 1 for i, name in enumerate(H.one_handles)}
    word: List[int] = []
    for strand, heading in traversal(H.front, label):
        end = H.front.events[tr.right[strand] if heading > 0 else tr.left[strand]]
        if isinstance(end, HandlePass):
            if end.handle not in index:
                raise HandlebodyError(f"undeclared 1-handle {end.handle!r}")
            word.append(index[end.handle] if heading > 0 else -index[end.handle])
    return tuple(word)


def ball() -> Handlebody:
    return Handlebody()


def from_front(front: FrontDiagram, framings: Dict[str, int], one_handles: Sequence[str] = (),
               orientation: int = 1) -> Handlebody:
    handles = tuple(FramedHandle(FramedComponent(c, framings[c])) for c in front.components)
    return check(Handlebody(tuple(one_handles), handles, front, orientation))


# --------------------------------------------------------------- naming ---

def _fresh(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def rename(H: Handlebody, taken_one: Iterable[str], taken_two: Iterable[str]) -> Handlebody:
    """Rename handles of H that collide with the given names."""
    taken_one, taken_two = set(taken_one), set(taken_two)
    ones: Dict[str, str] = {}
    for n in H.one_handles:
        ones[n] = _fresh(n, taken_one | set(ones.values()))
    twos: Dict[str, str] = {}
    for lab in H.labels:
        twos[lab] = _fresh(lab, taken_two | set(twos.values()))
    front = relabel(rename_handles(H.front, ones), twos)
    return Handlebody(
        tuple(ones[n] for n in H.one_handles),
        tuple(FramedHandle(FramedComponent(twos[h.label], h.framing)) for h in H.two_handles),
        front,
        H.orientation,
        tuple(Summand(tuple(ones[n] for n in s.one_handles), tuple(twos[t] for t in s.two_handles), s.orientation)
              for s in H.summands),
    )


# ------------------------------------------------------- boundary sums ---

def boundary_sum(H1: Handlebody, H2: Handlebody, allow_reversed: bool = False) -> Handlebody:
    """H1 ♮ H2 in side-by-side charts; colliding names in H2 get a numeric suffix.

    The result carries H1's orientation. Each summand of H2 records its orientation
    relative to it, so summing an oppositely oriented H2 leaves -1 summands behind;
    that needs `allow_reversed`.
    """
    check(H1)
    check(H2)
    relative = H1.orientation * H2.orientation
    if relative < 0 and not allow_reversed:
        raise HandlebodyError(
            f"boundary sum of orientations {H1.orientation:+d} and {H2.orientation:+d}; "
            "pass allow_reversed to keep the reversed summand"
        )
    H2 = rename(H2, H1.one_handles, H1.labels)
    flipped = tuple(replace(s, orientation=s.orientation * relative) for s in H2.summands)
    return check(Handlebody(
        H1.one_handles + H2.one_handles,
        H1.two_handles + H2.two_handles,
        concat(H1.front, H2.front),
        H1.orientation,
        H1.summands + flipped,
    ))


def _summand_front(H: Handlebody, s: Summand) -> FrontDiagram:
    if not s.two_handles:
        return FrontDiagram()
    return restrict(H.front, list(s.two_handles))


def _assert_split(H: Handlebody) -> None:
    tr = checked(H.front)
    owner = {lab: i for i, s in enumerate(H.summands) for lab in s.two_handles}
    owner_one = {n: i for i, s in enumerate(H.summands) for n in s.one_handles}
    comp_owner = [owner[H.front.components[c]] for c in range(tr.n_components)]
    for _, over, under in tr.crossings:
        if comp_owner[tr.component_of[over]] != comp_owner[tr.component_of[under]]:
            raise HandlebodyError("summands cross each other; the chart is not a boundary sum")
    for idx, ev in enumerate(H.front.events):
        if isinstance(ev, HandlePass):
            s = tr.columns[idx + 1][ev.slot] if ev.side == "L" else tr.columns[idx][ev.slot]
            if owner_one[ev.handle] != comp_owner[tr.component_of[s]]:
                raise HandlebodyError("a 2-handle runs over a 1-handle of another summand")


def chart_swap(H: Handlebody) -> Handlebody:
    """Reverse the order of the boundary-sum summands, redrawing the front chart by chart."""
    check(H)
    _assert_split(H)
    order = tuple(reversed(H.summands))
    front = FrontDiagram()
    for s in order:
        front = concat(front, _summand_front(H, s))
    ones = tuple(n for s in order for n in s.one_handles)
    twos = tuple(H.handle(lab) for s in order for lab in s.two_handles)
    return check(Handlebody(ones, twos, front, H.orientation, order))


def _summand_record(H: Handlebody, s: Summand) -> Tuple:
    piece = _summand_front(H, s)
    used = handles_used(piece)
    names = {h: f"h{i + 1}" for i, h in enumerate(used)}
    piece = rename_handles(piece, names)
    framings = tuple(H.handle(lab).framing for lab in piece.components)
    return (s.orientation, len(s.one_handles), piece.word(), piece.orientations, framings)


def chart_record(H: Handlebody) -> Tuple:
    """Name-independent, order-independent record of the handle data, one entry per summand."""
    check(H)
    return tuple(sorted(_summand_record(H, s) for s in H.summands))


# ---------------------------------------------------------------- slides ---

def slide(H: Handlebody, a: str, b: str) -> Handlebody:
    """Slide 2-handle `a` over a framed push-off of `b`.

    The new framing is f_a + f_b + 2 lk(a, b'), with b' oriented as the band requires.
    """
    check(H)
    if a == b:
        raise HandlebodyError("a handle cannot slide over itself")
    ha, hb = H.handle(a), H.handle(b)
    front = H.front
    for lab in (a, b):
        if not right_cusps(front, lab):
            front = fish(front, lab)
    pushed = parallel_copies(front, FramedComponent(b, hb.framing), 2)
    b2 = copy_label(b, 1)
    cs = crossing_sum(pushed, a, b2)
    joined, flipped = band_join(pushed, a, b2)
    framing = ha.framing + hb.framing + (-cs if flipped else cs)
    twos = tuple(FramedHandle(FramedComponent(a, framing)) if h.label == a else h for h in H.two_handles)
    log.debug("slid %s over %s: framing %d -> %d", a, b, ha.framing, framing)
    return check(replace(H, two_handles=twos, front=joined))


# --------------------------------------------------------- word fronts ---

def word_front(word: Sequence[int], names: Sequence[str], label: str = "1") -> FrontDiagram:
    """A one-component front that reads `word` (up to rotation) through the named 1-handles.

    Every pass has its L end stacked on the left and its R end on the right; the
    strands between them are sorted by crossings so each handle's passes pair in order.
    """
    w = tuple(word)
    if not w:
        return FrontDiagram((LeftCusp(0), RightCusp(0)), (label,), (1,))
    if any(x == 0 or abs(x) > len(names) for x in w):
        raise HandlebodyError(f"word {w} is outside the generators {list(names)}")
    m = len(w)

    def name(t: int) -> str:
        return names[abs(w[t]) - 1]

    left: List[Tuple] = []   # ("L", letter, strand) | ("LC", lo, hi)
    right: List[Tuple] = []  # ("R", letter, strand) | ("RC", s1, s2)
    heading: List[int] = []

    def strand(d: int) -> int:
        heading.append(d)
        return len(heading) - 1

    for t in range(m):
        u = (t + 1) % m
        if w[t] > 0 and w[u] > 0:
            s = strand(1)
            left.append(("L", t, s))
            right.append(("R", u, s))
        elif w[t] < 0 and w[u] < 0:
            s = strand(-1)
            left.append(("L", u, s))
            right.append(("R", t, s))
        elif w[t] > 0:
            s1, s2 = strand(1), strand(-1)
            left.append(("L", t, s1))
            left.append(("L", u, s2))
            right.append(("RC", s1, s2))
        else:
            s1, s2 = strand(-1), strand(1)
            left.append(("LC", s1, s2))
            right.append(("R", t, s1))
            right.append(("R", u, s2))

    events: List[Event] = []
    stack: List[int] = []
    l_pos: Dict[int, int] = {}
    for unit in left:
        if unit[0] == "L":
            l_pos[unit[1]] = len(stack)
            events.append(HandlePass(len(stack), name(unit[1]), "L"))
            stack.append(unit[2])
        else:
            events.append(LeftCusp(len(stack)))
            stack.extend(unit[1:])

    def key(unit: Tuple) -> int:
        return l_pos[unit[1]] if unit[0] == "R" else stack.index(unit[1])

    right.sort(key=key)
    target = [s for unit in right for s in ((unit[2],) if unit[0] == "R" else unit[1:])]
    rank = {s: i for i, s in enumerate(target)}
    cur = list(stack)
    for i in range(len(cur)):
        for j in range(len(cur) - 1 - i):
            if rank[cur[j]] > rank[cur[j + 1]]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                events.append(Crossing(j))
    for unit in right:
        events.append(HandlePass(0, name(unit[1]), "R") if unit[0] == "R" else RightCusp(0))

    out = FrontDiagram(tuple(events), (label,), (heading[stack[0]],))
    try:
        checked(out)
    except FrontError as e:
        raise HandlebodyError(f"word front for {w} is malformed: {e.message}") from None
    return out
