# src/whitehead/satellite.py — n-strand Legendrian satellites of one component: parallel copies, twists, bands
"""
Every strand of the chosen component is widened into a bundle of n vertical
push-offs; copy j sits at offset j from the bottom of its bundle. Other
components keep width 1. Cusps, crossings and handle passes of the source
word expand into fixed clusters, so everything left of the component's first
event and right of its last one comes out unchanged.

Framing corrections go right after the first birth of the component, on its
lower bundle: positive full twists when the framing exceeds tb, and
stabilized crossings of each copy under the copies below it when it is lower.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from src.errors import WhiteheadError
from src.front.diagram import (
    Crossing,
    Event,
    FrontDiagram,
    HandlePass,
    LeftCusp,
    RightCusp,
    checked,
    directions,
    trace_events,
    validate,
)
from src.front.invariants import tb

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FramedComponent:
    component: str
    framing: int

    def __post_init__(self):
        object.__setattr__(self, "component", str(self.component))
        object.__setattr__(self, "framing", int(self.framing))


@dataclass(frozen=True)
class PatternTorus:
    """Meridian disc of the companion's neighbourhood: slots [lo, hi) of one column."""

    column: int
    lo: int
    hi: int
    direction: int  # heading of the companion's first strand there


@dataclass(frozen=True)
class Satellite:
    front: FrontDiagram
    torus: PatternTorus
    copy_labels: Tuple[str, ...]


class _Origin(NamedTuple):
    strand: int  # strand of the source word
    copy: int
    flip: int    # -1 for the backward branch of a stabilization


class _Builder:
    def __init__(self):
        self.events: List[Event] = []
        self.origins: List[_Origin] = []

    def emit(self, ev: Event, *born: _Origin) -> None:
        self.events.append(ev)
        self.origins.extend(born)


def copy_label(label: str, j: int) -> str:
    return label if j == 0 else f"{label}.{j + 1}"


def _require(front: FrontDiagram, fc: FramedComponent) -> int:
    rep = validate(front)
    if not rep.ok:
        raise WhiteheadError(f"invalid front: {rep.message}")
    if fc.component not in front.components:
        raise WhiteheadError(f"unknown component {fc.component!r}")
    return front.components.index(fc.component)


# ---------------------------------------------------------- twist blocks ---

def _full_twists(b: _Builder, base: int, n: int, count: int) -> None:
    for _ in range(count):
        for _ in range(n):
            for g in range(base, base + n - 1):
                b.emit(Crossing(g))


def _negative_unit(b: _Builder, base: int, n: int, strand: int) -> None:
    """Each copy j >= 1 zigzags below copies 0..j-1 and back: tb(copy j) drops by 2, lk with each by 1."""
    for j in range(1, n):
        # down: copy j turns back under the lower copies and comes out at the bottom
        b.emit(LeftCusp(base), _Origin(strand, j, 1), _Origin(strand, j, -1))
        for g in range(base + 1, base + j + 1):
            b.emit(Crossing(g))
        b.emit(RightCusp(base + j + 1))
        # up: and climbs back to its own place
        b.emit(LeftCusp(base + j + 1), _Origin(strand, j, -1), _Origin(strand, j, 1))
        for g in range(base + j, base, -1):
            b.emit(Crossing(g))
        b.emit(RightCusp(base))


# ------------------------------------------------------------- expansion ---

def expand(front: FrontDiagram, label: str, n: int, twist: int,
           signs: Optional[Sequence[int]] = None,
           bands: Optional[Dict[int, Sequence[int]]] = None,
           labels: Optional[Sequence[str]] = None) -> Satellite:
    """Replace component `label` by n copies.

    twist   framing change relative to tb; >0 adds full twists, <0 stabilized clasps
    signs   orientation factor per copy (all +1 for parallel copies)
    bands   right-cusp event index -> band numbers j joining copy j to copy j+1 there
    labels  label per copy; repeated labels are fine once bands merge copies
    """
    if n < 1:
        raise WhiteheadError("copy count must be at least 1")
    tr = checked(front)
    comp = front.components.index(label)
    dirs = directions(front)
    signs = list(signs) if signs is not None else [1] * n
    labels = list(labels) if labels is not None else [copy_label(label, j) for j in range(n)]
    bands = bands or {}

    width = [n if tr.component_of[s] == comp else 1 for s in range(len(tr.left))]
    s0 = tr.first_strand[comp]
    first = tr.left[s0]
    b = _Builder()
    torus: Optional[PatternTorus] = None

    for idx, ev in enumerate(front.events):
        col = tr.columns[idx]
        base = sum(width[s] for s in col[:ev.slot])
        if isinstance(ev, LeftCusp):
            lo, hi = tr.columns[idx + 1][ev.slot], tr.columns[idx + 1][ev.slot + 1]
            w = width[lo]
            for j in range(w):
                b.emit(LeftCusp(base + 2 * j), _Origin(lo, j, 1), _Origin(hi, j, 1))
            for j in range(1, w):
                for g in range(base + 2 * j - 1, base + j - 1, -1):
                    b.emit(Crossing(g))
        elif isinstance(ev, RightCusp):
            w = width[col[ev.slot]]
            for j in range(w - 1, 0, -1):
                for g in range(base + j, base + 2 * j):
                    b.emit(Crossing(g))
            for j in sorted(bands.get(idx, ())):
                b.emit(Crossing(base + 2 * j + 1))
            for _ in range(w):
                b.emit(RightCusp(base))
        elif isinstance(ev, Crossing):
            wa, wb = width[col[ev.slot]], width[col[ev.slot + 1]]
            for j in range(wb):
                for g in range(base + wa - 1 + j, base + j - 1, -1):
                    b.emit(Crossing(g))
        elif isinstance(ev, HandlePass):
            if ev.side == "L":
                s = tr.columns[idx + 1][ev.slot]
                for j in range(width[s]):
                    b.emit(replace(ev, slot=base + j), _Origin(s, j, 1))
            else:
                for _ in range(width[col[ev.slot]]):
                    b.emit(replace(ev, slot=base))

        if idx == first:
            torus = PatternTorus(len(b.events), base, base + n, dirs[s0])
            if twist > 0:
                _full_twists(b, base, n, twist)
            for _ in range(-twist):
                _negative_unit(b, base, n, s0)

    events = tuple(b.events)
    out_tr = trace_events(events)
    if not out_tr.ok:
        raise WhiteheadError(f"satellite word is malformed: {out_tr.error}")

    comp_labels: List[str] = []
    oris: List[int] = []
    for s in out_tr.first_strand:
        o = b.origins[s]
        src = tr.component_of[o.strand]
        if src == comp:
            comp_labels.append(labels[o.copy])
            oris.append(dirs[o.strand] * signs[o.copy] * o.flip)
        else:
            comp_labels.append(front.components[src])
            oris.append(dirs[o.strand] * o.flip)
    if len(set(comp_labels)) != len(comp_labels):
        raise WhiteheadError(f"copy labels collide: {comp_labels}")

    out = FrontDiagram(events, tuple(comp_labels), tuple(oris))
    rep = validate(out)
    if not rep.ok:
        raise WhiteheadError(f"satellite front is invalid: {rep.message}")
    log.debug("expanded %s into %d copies: %d -> %d events", label, n, len(front), len(out))
    return Satellite(out, torus, tuple(dict.fromkeys(labels)))


# --------------------------------------------------------- parallel links ---

def parallel_copies(front: FrontDiagram, fc: FramedComponent, n: int) -> FrontDiagram:
    """n co-oriented copies of the component, pairwise linking `fc.framing` times.

    Copy 1 keeps the component's label, copy j is labelled "<label>.<j>".
    """
    _require(front, fc)
    if n < 1:
        raise WhiteheadError("copy count must be at least 1")
    twist = fc.framing - tb(front, fc.component)
    return expand(front, fc.component, n, twist).front


def legendrian_parallel_link(front: FrontDiagram, fc: FramedComponent, n: int) -> FrontDiagram:
    """Parallel link with copy 1 untouched and tb(copy j) - f = -|tb - f| for the others."""
    if n < 2:
        raise WhiteheadError("a parallel link needs at least two copies")
    return parallel_copies(front, fc, n)
