# src/front/moves.py — stabilization, Legendrian front moves and word splices
from __future__ import annotations

import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.errors import FrontError, FrontMoveError
from src.front.diagram import (
    Crossing,
    Event,
    FrontDiagram,
    LeftCusp,
    RightCusp,
    checked,
    component_index,
    directions,
    reverse,
    shifted,
    with_events,
)
from src.front.invariants import right_cusps, rot, tb

log = logging.getLogger(__name__)


class MoveId(str, Enum):
    R1 = "R1"                # fish on the strand, loop above
    R1_MIRROR = "R1_MIRROR"  # fish with the loop below
    R1_INV = "R1_INV"
    R2 = "R2"                # cusp passes the strand below it
    R2_MIRROR = "R2_MIRROR"  # cusp passes the strand above it
    R2_INV = "R2_INV"
    R3 = "R3"


def _birth_site(front: FrontDiagram, label: str) -> Tuple[int, int]:
    """Column right after the birth of the component's first strand, and that strand's slot there."""
    tr = checked(front)
    s = tr.first_strand[component_index(front, label)]
    col = tr.left[s] + 1
    return col, tr.columns[col].index(s)


def _splice(front: FrontDiagram, at: int, inserted: Sequence[Event], drop: int = 0) -> FrontDiagram:
    evs = front.events[:at] + tuple(inserted) + front.events[at + drop:]
    return with_events(front, evs)


# ----------------------------------------------------------- stabilize ----

def stabilize(front: FrontDiagram, label: str, sign: int) -> FrontDiagram:
    if sign not in (1, -1):
        raise FrontError("stabilization sign must be +1 or -1")
    col, s = _birth_site(front, label)
    before = rot(front, label)
    for zigzag in ([LeftCusp(s), RightCusp(s + 1)], [LeftCusp(s + 1), RightCusp(s)]):
        out = _splice(front, col, zigzag)
        if rot(out, label) - before == sign:
            return out
    raise FrontError("stabilization did not shift the rotation number")  # unreachable for valid fronts


def legendrianize_to(front: FrontDiagram, label: str, target_tb: int,
                     signs: Optional[Sequence[int]] = None) -> FrontDiagram:
    k = tb(front, label) - target_tb
    if k < 0:
        raise FrontError(f"target tb {target_tb} exceeds tb {target_tb + k}; stabilization only lowers tb")
    if signs is None:
        first = -1 if rot(front, label) > 0 else 1
        signs = [first if i % 2 == 0 else -first for i in range(k)]
    if len(signs) != k:
        raise FrontError(f"need {k} stabilization signs, got {len(signs)}")
    out = front
    for s in signs:
        out = stabilize(out, label, s)
    log.debug("legendrianized %s to tb %d with %d stabilizations", label, target_tb, k)
    return out


# ---------------------------------------------------------------- moves ---

def _fish(slot: int, mirror: bool) -> List[Event]:
    if mirror:
        return [LeftCusp(slot), Crossing(slot + 1), RightCusp(slot)]
    return [LeftCusp(slot + 1), Crossing(slot), RightCusp(slot + 1)]


def fish(front: FrontDiagram, label: str) -> FrontDiagram:
    """tb- and rot-neutral kink on the first strand of a component; it adds one right cusp."""
    col, s = _birth_site(front, label)
    return _splice(front, col, _fish(s, False))


def _is_fish(evs: Sequence[Event], i: int) -> bool:
    if i + 3 > len(evs):
        return False
    a, b, c = evs[i:i + 3]
    if not (isinstance(a, LeftCusp) and isinstance(b, Crossing) and isinstance(c, RightCusp)):
        return False
    return (a.slot == c.slot and b.slot == a.slot - 1) or (a.slot == c.slot and b.slot == a.slot + 1)


_R2_INV_PATTERNS = (
    # (kinds, slot offsets relative to the middle crossing) -> single event
    ((LeftCusp, Crossing, Crossing), (-1, 0, -1), LeftCusp),
    ((LeftCusp, Crossing, Crossing), (1, 0, 1), LeftCusp),
    ((Crossing, Crossing, RightCusp), (-1, 0, -1), RightCusp),
    ((Crossing, Crossing, RightCusp), (1, 0, 1), RightCusp),
)


def _r2_inverse(evs: Sequence[Event], i: int) -> Optional[Event]:
    if i + 3 > len(evs):
        return None
    window = evs[i:i + 3]
    mid = window[1].slot
    for kinds, offsets, result in _R2_INV_PATTERNS:
        if all(isinstance(e, k) for e, k in zip(window, kinds)) and \
                all(e.slot == mid + o for e, o in zip(window, offsets)):
            return result(mid)
    return None


def _is_triple(evs: Sequence[Event], i: int) -> bool:
    if i + 3 > len(evs):
        return False
    a, b, c = evs[i:i + 3]
    if not all(isinstance(e, Crossing) for e in (a, b, c)):
        return False
    return a.slot == c.slot and abs(a.slot - b.slot) == 1


def front_move(front: FrontDiagram, move: MoveId, site: int, slot: int = 0) -> FrontDiagram:
    """Apply a Legendrian Reidemeister move.

    R1 and R1_MIRROR take a column `site` and the `slot` of the strand receiving the fish;
    every other move takes the event index `site` where its pattern starts.
    """
    tr = checked(front)
    evs = front.events
    move = MoveId(move)
    if move in (MoveId.R1, MoveId.R1_MIRROR):
        if not (0 <= site <= len(evs) and 0 <= slot < len(tr.columns[site])):
            raise FrontMoveError(f"no strand at slot {slot} in column {site}")
        return _splice(front, site, _fish(slot, move is MoveId.R1_MIRROR))
    if not 0 <= site < len(evs):
        raise FrontMoveError(f"site {site} outside the word")
    ev = evs[site]
    if move is MoveId.R1_INV:
        if not _is_fish(evs, site):
            raise FrontMoveError(f"no fish starts at event {site}")
        return _splice(front, site, [], drop=3)
    if move in (MoveId.R2, MoveId.R2_MIRROR):
        width = len(tr.columns[site])
        below = move is MoveId.R2
        if isinstance(ev, LeftCusp):
            j = ev.slot
            if below and j >= 1:
                return _splice(front, site, [LeftCusp(j - 1), Crossing(j), Crossing(j - 1)], drop=1)
            if not below and width > j:
                return _splice(front, site, [LeftCusp(j + 1), Crossing(j), Crossing(j + 1)], drop=1)
        elif isinstance(ev, RightCusp):
            j = ev.slot
            if below and j >= 1:
                return _splice(front, site, [Crossing(j - 1), Crossing(j), RightCusp(j - 1)], drop=1)
            if not below and width > j + 2:
                return _splice(front, site, [Crossing(j + 1), Crossing(j), RightCusp(j + 1)], drop=1)
        raise FrontMoveError(f"{move.value} does not apply at event {site}")
    if move is MoveId.R2_INV:
        single = _r2_inverse(evs, site)
        if single is None:
            raise FrontMoveError(f"no cusp-pass pattern starts at event {site}")
        return _splice(front, site, [single], drop=3)
    if move is MoveId.R3:
        if not _is_triple(evs, site):
            raise FrontMoveError(f"no triple crossing starts at event {site}")
        a, b = evs[site].slot, evs[site + 1].slot
        return _splice(front, site, [Crossing(b), Crossing(a), Crossing(b)], drop=3)
    raise FrontMoveError(f"unknown move {move}")


def applicable_moves(front: FrontDiagram) -> List[Tuple[MoveId, int, int]]:
    tr = checked(front)
    evs = front.events
    out: List[Tuple[MoveId, int, int]] = []
    for col, strands in enumerate(tr.columns):
        for s in range(len(strands)):
            out.append((MoveId.R1, col, s))
            out.append((MoveId.R1_MIRROR, col, s))
    for i, ev in enumerate(evs):
        width = len(tr.columns[i])
        if isinstance(ev, LeftCusp):
            if ev.slot >= 1:
                out.append((MoveId.R2, i, 0))
            if width > ev.slot:
                out.append((MoveId.R2_MIRROR, i, 0))
        elif isinstance(ev, RightCusp):
            if ev.slot >= 1:
                out.append((MoveId.R2, i, 0))
            if width > ev.slot + 2:
                out.append((MoveId.R2_MIRROR, i, 0))
        if _is_fish(evs, i):
            out.append((MoveId.R1_INV, i, 0))
        if _r2_inverse(evs, i) is not None:
            out.append((MoveId.R2_INV, i, 0))
        if _is_triple(evs, i):
            out.append((MoveId.R3, i, 0))
    return out


# -------------------------------------------------------------- splices ---

def _pair_up(g: int) -> List[Event]:
    """The strand just above a cusp pair sitting at g, g+1 drops below it."""
    return [Crossing(g + 1), Crossing(g)]


def _pair_down(g: int) -> List[Event]:
    """The strand just below a cusp pair sitting at g, g+1 climbs above it."""
    return [Crossing(g - 1), Crossing(g)]


def connected_sum(front: FrontDiagram, label: str, piece: FrontDiagram, piece_label: Optional[str] = None) -> FrontDiagram:
    """Legendrian connected sum of a component with a split one-component piece.

    The piece is spliced in right of the component's last right cusp; that cusp and the
    piece's first left cusp are removed and their branches joined, so tb adds with +1.
    """
    checked(front)
    tr_piece = checked(piece)
    if tr_piece.n_components != 1:
        raise FrontError("connected sum needs a one-component piece")
    cusps = right_cusps(front, label)
    if not cusps:
        raise FrontError(f"component {label!r} has no right cusp to sum at")
    i = cusps[-1]
    tr = front.trace
    s = front.events[i].slot
    lower = tr.columns[i][s]
    want = directions(front)[lower]

    first_lc = next((j for j, ev in enumerate(piece.events) if isinstance(ev, LeftCusp)), None)
    if first_lc is None:
        raise FrontError("piece has no left cusp to sum at")
    lower_piece = tr_piece.columns[first_lc + 1][piece.events[first_lc].slot]
    if directions(piece)[lower_piece] != want:
        piece = reverse(piece, piece.components[0])

    out: List[Event] = list(front.events[:i])
    for j, ev in enumerate(piece.events):
        if j == first_lc:
            top = len(tr_piece.columns[j])
            for q in range(top - 1, ev.slot - 1, -1):
                out.extend(_pair_down(s + q + 1))
            continue
        out.append(shifted(ev, s))
    out.extend(front.events[i + 1:])
    return with_events(front, out)


def band_join(front: FrontDiagram, a: str, b: str) -> Tuple[FrontDiagram, bool]:
    """Band two components together at their last right cusps.

    Returns the joined front (component `a` absorbs `b`) and whether `b` had to be
    reversed for the band to be orientable.
    """
    tr = checked(front)
    ca, cb = component_index(front, a), component_index(front, b)
    if ca == cb:
        raise FrontError("band needs two distinct components")
    ra, rb = right_cusps(front, a), right_cusps(front, b)
    if not ra or not rb:
        raise FrontError("both components need a right cusp for a band")
    i1, i2 = sorted((ra[-1], rb[-1]))
    dirs = directions(front)
    low1 = tr.columns[i1][front.events[i1].slot]
    low2 = tr.columns[i2][front.events[i2].slot]
    flipped = dirs[low1] != dirs[low2]
    if flipped:
        front = reverse(front, b)

    evs = front.events
    out: List[Event] = list(evs[:i1])
    g = evs[i1].slot
    for idx in range(i1 + 1, i2):
        ev = evs[idx]
        if isinstance(ev, LeftCusp):
            if ev.slot < g:
                out.append(ev)
                g += 2
            else:
                out.append(shifted(ev, 2))
        elif isinstance(ev, (RightCusp, Crossing)):
            if ev.slot + 1 == g:
                out.extend(_pair_up(g))
                g += 1
            if ev.slot + 1 < g:
                out.append(ev)
                if isinstance(ev, RightCusp):
                    g -= 2
            else:
                out.append(shifted(ev, 2))
        else:
            if ev.slot < g:
                out.append(ev)
                g += 1 if ev.side == "L" else -1
            else:
                out.append(shifted(ev, 2))
    j = evs[i2].slot
    while g < j:
        out.extend(_pair_up(g))
        g += 1
    while g > j:
        out.extend(_pair_down(g))
        g -= 1
    out.extend([RightCusp(j + 1), RightCusp(j)])
    out.extend(evs[i2 + 1:])

    first = min(tr.first_strand[ca], tr.first_strand[cb])
    labels, oris = [], []
    for comp, lab in enumerate(front.components):
        if comp not in (ca, cb):
            labels.append(lab)
            oris.append(front.orientations[comp])
        elif tr.first_strand[comp] == first:
            labels.append(a)
            oris.append(directions(front)[first])
    return with_events(front, out, labels, oris), flipped
