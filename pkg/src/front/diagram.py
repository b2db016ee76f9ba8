# src/front/diagram.py — Morse-event words for Legendrian fronts: events, strand trace, validation, token codec
"""
A front is a word of events read left to right over horizontal strand slots
numbered from the bottom:

    Lc<i>          left cusp, opens a lower strand at i and an upper one at i+1
    Rc<i>          right cusp, closes the strands at i and i+1
    X<i>           crossing of the strands at i and i+1; the one moving down is over
    Hp<i>.<h>.L    a strand emerges from the left ball of 1-handle h at slot i
    Hp<i>.<h>.R    the strand at slot i enters the right ball of h

The k-th L pass of a handle continues the k-th R pass of the same handle.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.errors import FrontError


@dataclass(frozen=True)
class LeftCusp:
    slot: int

    def token(self) -> str:
        return f"Lc{self.slot}"


@dataclass(frozen=True)
class RightCusp:
    slot: int

    def token(self) -> str:
        return f"Rc{self.slot}"


@dataclass(frozen=True)
class Crossing:
    slot: int

    def token(self) -> str:
        return f"X{self.slot}"


@dataclass(frozen=True)
class HandlePass:
    slot: int
    handle: str
    side: str  # "L" births a strand, "R" ends one

    def token(self) -> str:
        return f"Hp{self.slot}.{self.handle}.{self.side}"


Event = Union[LeftCusp, RightCusp, Crossing, HandlePass]


def shifted(ev: Event, delta: int) -> Event:
    return replace(ev, slot=ev.slot + delta)


def is_birth(ev: Event) -> bool:
    return isinstance(ev, LeftCusp) or (isinstance(ev, HandlePass) and ev.side == "L")


# ---------------------------------------------------------------- trace ----

@dataclass(frozen=True)
class Trace:
    """Strand bookkeeping of an event word. Strand ids follow birth order."""

    error: Optional[str]
    error_index: Optional[int]
    left: Tuple[int, ...] = ()           # event index of each strand's left end
    right: Tuple[int, ...] = ()          # event index of each strand's right end
    columns: Tuple[Tuple[int, ...], ...] = ()   # columns[i] = strands bottom..top before event i
    crossings: Tuple[Tuple[int, int, int], ...] = ()  # (event, over, under)
    partner_left: Tuple[int, ...] = ()   # strand joined at the left end
    partner_right: Tuple[int, ...] = ()  # strand joined at the right end
    component_of: Tuple[int, ...] = ()
    first_strand: Tuple[int, ...] = ()   # per component, its lowest strand id

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def n_components(self) -> int:
        return len(self.first_strand)

    def strands_of(self, comp: int) -> List[int]:
        return [s for s, c in enumerate(self.component_of) if c == comp]


def _fail(msg: str, idx: int) -> Trace:
    return Trace(error=msg, error_index=idx)


@lru_cache(maxsize=4096)
def trace_events(events: Tuple[Event, ...]) -> Trace:
    state: List[int] = []
    left: List[int] = []
    right: List[Optional[int]] = []
    partner_left: List[int] = []
    partner_right: List[int] = []
    columns: List[Tuple[int, ...]] = []
    crossings: List[Tuple[int, int, int]] = []
    l_passes: Dict[str, List[Tuple[int, int]]] = {}
    r_passes: Dict[str, List[Tuple[int, int]]] = {}

    def new_strand(idx: int) -> int:
        left.append(idx)
        right.append(None)
        partner_left.append(-1)
        partner_right.append(-1)
        return len(left) - 1

    for idx, ev in enumerate(events):
        columns.append(tuple(state))
        m = len(state)
        if isinstance(ev, LeftCusp):
            if not 0 <= ev.slot <= m:
                return _fail("left cusp slot out of range", idx)
            lo, hi = new_strand(idx), new_strand(idx)
            partner_left[lo], partner_left[hi] = hi, lo
            state[ev.slot:ev.slot] = [lo, hi]
        elif isinstance(ev, RightCusp):
            if not (0 <= ev.slot and ev.slot + 1 < m):
                return _fail("right cusp needs two strands", idx)
            lo, hi = state[ev.slot], state[ev.slot + 1]
            right[lo] = right[hi] = idx
            partner_right[lo], partner_right[hi] = hi, lo
            del state[ev.slot:ev.slot + 2]
        elif isinstance(ev, Crossing):
            if not (0 <= ev.slot and ev.slot + 1 < m):
                return _fail("crossing needs two strands", idx)
            lo, hi = state[ev.slot], state[ev.slot + 1]
            crossings.append((idx, hi, lo))
            state[ev.slot], state[ev.slot + 1] = hi, lo
        elif isinstance(ev, HandlePass):
            if ev.side == "L":
                if not 0 <= ev.slot <= m:
                    return _fail("handle pass slot out of range", idx)
                s = new_strand(idx)
                state.insert(ev.slot, s)
                l_passes.setdefault(ev.handle, []).append((idx, s))
            elif ev.side == "R":
                if not 0 <= ev.slot < m:
                    return _fail("handle pass slot out of range", idx)
                s = state.pop(ev.slot)
                right[s] = idx
                r_passes.setdefault(ev.handle, []).append((idx, s))
            else:
                return _fail("handle pass side must be L or R", idx)
        else:
            return _fail("unknown event", idx)
    columns.append(tuple(state))

    if state:
        return _fail("unclosed strands", left[state[0]])

    for h in sorted(set(l_passes) | set(r_passes)):
        ls, rs = l_passes.get(h, []), r_passes.get(h, [])
        if len(ls) != len(rs):
            extra = ls[len(rs)] if len(ls) > len(rs) else rs[len(ls)]
            return _fail("unpaired handle pass", extra[0])
        for (_, born), (_, died) in zip(ls, rs):
            partner_left[born] = died
            partner_right[died] = born

    n = len(left)
    component_of = [-1] * n
    first_strand: List[int] = []
    for s in range(n):
        if component_of[s] >= 0:
            continue
        comp = len(first_strand)
        first_strand.append(s)
        cur, going_right = s, True
        while component_of[cur] < 0:
            component_of[cur] = comp
            cur, going_right = _step(events, left, right, partner_left, partner_right, cur, going_right)

    return Trace(
        error=None,
        error_index=None,
        left=tuple(left),
        right=tuple(r for r in right),
        columns=tuple(columns),
        crossings=tuple(crossings),
        partner_left=tuple(partner_left),
        partner_right=tuple(partner_right),
        component_of=tuple(component_of),
        first_strand=tuple(first_strand),
    )


def _step(events, left, right, partner_left, partner_right, s: int, going_right: bool):
    """Follow strand s off its right (or left) end; returns the next strand and heading."""
    if going_right:
        nxt = partner_right[s]
        turn = isinstance(events[right[s]], RightCusp)
    else:
        nxt = partner_left[s]
        turn = isinstance(events[left[s]], LeftCusp)
    return nxt, (not going_right) if turn else going_right


# ---------------------------------------------------------------- fronts ---

@dataclass(frozen=True)
class FrontDiagram:
    events: Tuple[Event, ...] = ()
    components: Tuple[str, ...] = ()
    orientations: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "components", tuple(str(c) for c in self.components))
        object.__setattr__(self, "orientations", tuple(int(o) for o in self.orientations))
        tr = trace_events(self.events)
        if not tr.ok:
            return
        if not self.components:
            object.__setattr__(self, "components", tuple(str(i + 1) for i in range(tr.n_components)))
        if not self.orientations:
            object.__setattr__(self, "orientations", (1,) * len(self.components))

    def __len__(self) -> int:
        return len(self.events)

    @property
    def trace(self) -> Trace:
        return trace_events(self.events)

    def word(self) -> str:
        return format_word(self.events)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "pass"
    event_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def validate(front: FrontDiagram) -> ValidationReport:
    tr = front.trace
    if not tr.ok:
        return ValidationReport(False, tr.error, tr.error_index)
    if len(front.components) != tr.n_components:
        return ValidationReport(False, "component labels do not match the word", None)
    if len(set(front.components)) != len(front.components):
        return ValidationReport(False, "duplicate component label", None)
    if len(front.orientations) != tr.n_components or any(o not in (1, -1) for o in front.orientations):
        return ValidationReport(False, "orientations must be +1 or -1 per component", None)
    return ValidationReport(True)


def checked(front: FrontDiagram) -> Trace:
    rep = validate(front)
    if not rep.ok:
        where = f" at event {rep.event_index}" if rep.event_index is not None else ""
        raise FrontError(f"invalid front: {rep.message}{where}")
    return front.trace


def component_index(front: FrontDiagram, label: str) -> int:
    try:
        return front.components.index(str(label))
    except ValueError:
        raise FrontError(f"unknown component {label!r}") from None


# ------------------------------------------------------- oriented walks ---

@lru_cache(maxsize=4096)
def _directions(events: Tuple[Event, ...], orientations: Tuple[int, ...]) -> Tuple[int, ...]:
    tr = trace_events(events)
    dirs = [0] * len(tr.left)
    for comp, first in enumerate(tr.first_strand):
        cur, going_right = first, orientations[comp] > 0
        while dirs[cur] == 0:
            dirs[cur] = 1 if going_right else -1
            cur, going_right = _step(events, tr.left, tr.right, tr.partner_left, tr.partner_right, cur, going_right)
    return tuple(dirs)


def directions(front: FrontDiagram) -> Tuple[int, ...]:
    """Horizontal heading (+1 right, -1 left) of every strand under the front's orientations."""
    checked(front)
    return _directions(front.events, front.orientations)


def traversal(front: FrontDiagram, label: str) -> List[Tuple[int, int]]:
    """(strand, heading) pairs in traversal order starting from the component's first strand."""
    tr = checked(front)
    comp = component_index(front, label)
    dirs = directions(front)
    out: List[Tuple[int, int]] = []
    first = tr.first_strand[comp]
    cur, going_right = first, dirs[first] > 0
    while True:
        out.append((cur, 1 if going_right else -1))
        cur, going_right = _step(front.events, tr.left, tr.right, tr.partner_left, tr.partner_right, cur, going_right)
        if cur == first:
            break
    return out


def strand_slot(tr: Trace, strand: int, column: int) -> int:
    return tr.columns[column].index(strand)


# -------------------------------------------------------------- editing ---

def with_events(front: FrontDiagram, events: Sequence[Event], components: Optional[Sequence[str]] = None,
                orientations: Optional[Sequence[int]] = None) -> FrontDiagram:
    out = FrontDiagram(
        tuple(events),
        tuple(front.components if components is None else components),
        tuple(front.orientations if orientations is None else orientations),
    )
    checked(out)
    return out


def reverse(front: FrontDiagram, label: str) -> FrontDiagram:
    i = component_index(front, label)
    ori = list(front.orientations)
    ori[i] = -ori[i]
    return replace(front, orientations=tuple(ori))


def relabel(front: FrontDiagram, mapping: Dict[str, str]) -> FrontDiagram:
    return replace(front, components=tuple(mapping.get(c, c) for c in front.components))


def rename_handles(front: FrontDiagram, mapping: Dict[str, str]) -> FrontDiagram:
    evs = tuple(
        replace(ev, handle=mapping.get(ev.handle, ev.handle)) if isinstance(ev, HandlePass) else ev
        for ev in front.events
    )
    return replace(front, events=evs)


def concat(first: FrontDiagram, second: FrontDiagram) -> FrontDiagram:
    """Side-by-side union: the second word starts where the first closes."""
    if set(first.components) & set(second.components):
        raise FrontError("component labels collide in split union")
    return with_events(
        first,
        first.events + second.events,
        first.components + second.components,
        first.orientations + second.orientations,
    )


def restrict(front: FrontDiagram, labels: Iterable[str]) -> FrontDiagram:
    """Drop every component not in `labels`; the remaining word is re-slotted."""
    tr = checked(front)
    keep_comps = {component_index(front, l) for l in labels}
    keep = [tr.component_of[s] in keep_comps for s in range(len(tr.left))]
    out: List[Event] = []
    for idx, ev in enumerate(front.events):
        col = tr.columns[idx]
        below = sum(1 for s in col[:ev.slot] if keep[s])
        if isinstance(ev, LeftCusp):
            if keep[tr.columns[idx + 1][ev.slot]]:
                out.append(LeftCusp(below))
        elif isinstance(ev, RightCusp):
            if keep[col[ev.slot]]:
                out.append(RightCusp(below))
        elif isinstance(ev, Crossing):
            if keep[col[ev.slot]] and keep[col[ev.slot + 1]]:
                out.append(Crossing(below))
        else:
            s = tr.columns[idx + 1][ev.slot] if ev.side == "L" else col[ev.slot]
            if keep[s]:
                out.append(replace(ev, slot=below))
    order = sorted(keep_comps)
    return with_events(
        front,
        out,
        [front.components[i] for i in order],
        [front.orientations[i] for i in order],
    )


# ---------------------------------------------------------------- codec ---

_TOKEN = re.compile(r"(Lc|Rc|X)(\d+)$|Hp(\d+)\.([A-Za-z_][\w']*)\.([LR])$")


def parse_word(text: str) -> Tuple[Event, ...]:
    events: List[Event] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        t = _TOKEN.match(tok)
        if not t:
            raise FrontError(f"bad event token {tok!r} at offset {m.start()}")
        if t.group(1):
            kind, slot = t.group(1), int(t.group(2))
            events.append({"Lc": LeftCusp, "Rc": RightCusp, "X": Crossing}[kind](slot))
        else:
            events.append(HandlePass(int(t.group(3)), t.group(4), t.group(5)))
    return tuple(events)


def format_word(events: Iterable[Event]) -> str:
    return " ".join(ev.token() for ev in events)


def front_from_text(text: str, components: Optional[Sequence[str]] = None,
                    orientations: Optional[Sequence[int]] = None) -> FrontDiagram:
    return FrontDiagram(parse_word(text), tuple(components or ()), tuple(orientations or ()))


def handles_used(front: FrontDiagram) -> List[str]:
    seen: List[str] = []
    for ev in front.events:
        if isinstance(ev, HandlePass) and ev.handle not in seen:
            seen.append(ev.handle)
    return seen
