# src/front/invariants.py — classical invariants read off an oriented event word
from __future__ import annotations

from typing import Dict, List, Tuple

from src.errors import FrontError
from src.front.diagram import (
    FrontDiagram,
    HandlePass,
    LeftCusp,
    RightCusp,
    checked,
    component_index,
    directions,
)


def crossing_signs(front: FrontDiagram) -> List[Tuple[int, int, int, int]]:
    """(event, over strand, under strand, sign); positive when both strands head the same way."""
    tr = checked(front)
    dirs = directions(front)
    return [(idx, over, under, dirs[over] * dirs[under]) for idx, over, under in tr.crossings]


def writhe(front: FrontDiagram, label: str) -> int:
    tr = checked(front)
    comp = component_index(front, label)
    return sum(
        sign for _, over, under, sign in crossing_signs(front)
        if tr.component_of[over] == comp and tr.component_of[under] == comp
    )


def linking_number(front: FrontDiagram, a: str, b: str) -> int:
    tr = checked(front)
    ca, cb = component_index(front, a), component_index(front, b)
    if ca == cb:
        raise FrontError("linking number needs two distinct components")
    total = 0
    for _, over, under, sign in crossing_signs(front):
        if {tr.component_of[over], tr.component_of[under]} == {ca, cb}:
            total += sign
    if total % 2:
        raise FrontError(f"odd crossing count between {a!r} and {b!r}; linking is not defined across 1-handles here")
    return total // 2


def crossing_sum(front: FrontDiagram, a: str, b: str) -> int:
    """Signed count of crossings between two components (twice the linking number when defined)."""
    tr = checked(front)
    ca, cb = component_index(front, a), component_index(front, b)
    return sum(
        sign for _, over, under, sign in crossing_signs(front)
        if {tr.component_of[over], tr.component_of[under]} == {ca, cb}
    )


def cusp_events(front: FrontDiagram, label: str) -> List[int]:
    tr = checked(front)
    comp = component_index(front, label)
    out = []
    for idx, ev in enumerate(front.events):
        if isinstance(ev, RightCusp) and tr.component_of[tr.columns[idx][ev.slot]] == comp:
            out.append(idx)
        elif isinstance(ev, LeftCusp) and tr.component_of[tr.columns[idx + 1][ev.slot]] == comp:
            out.append(idx)
    return out


def right_cusps(front: FrontDiagram, label: str) -> List[int]:
    return [i for i in cusp_events(front, label) if isinstance(front.events[i], RightCusp)]


def tb(front: FrontDiagram, label: str) -> int:
    return writhe(front, label) - len(right_cusps(front, label))


def cusp_counts(front: FrontDiagram, label: str) -> Tuple[int, int]:
    """(down, up): a cusp is down when the traversal leaves it lower than it came in."""
    tr = checked(front)
    dirs = directions(front)
    down = up = 0
    for idx in cusp_events(front, label):
        ev = front.events[idx]
        lower = tr.columns[idx][ev.slot] if isinstance(ev, RightCusp) else tr.columns[idx + 1][ev.slot]
        # right cusp: rightward on the lower branch climbs; left cusp: rightward lower branch means we came down
        heading_right = dirs[lower] > 0
        if isinstance(ev, RightCusp):
            up, down = (up + 1, down) if heading_right else (up, down + 1)
        else:
            up, down = (up, down + 1) if heading_right else (up + 1, down)
    return down, up


def rot(front: FrontDiagram, label: str) -> int:
    down, up = cusp_counts(front, label)
    return (down - up) // 2


def handle_multiplicity(front: FrontDiagram, label: str, handle: str) -> int:
    """Signed number of passes of a component through a 1-handle (+1 per rightward entry)."""
    tr = checked(front)
    comp = component_index(front, label)
    dirs = directions(front)
    total = 0
    for idx, ev in enumerate(front.events):
        if isinstance(ev, HandlePass) and ev.handle == handle and ev.side == "R":
            s = tr.columns[idx][ev.slot]
            if tr.component_of[s] == comp:
                total += dirs[s]
    return total


def invariant_rows(front: FrontDiagram) -> List[Dict[str, int]]:
    return [
        {"component": c, "tb": tb(front, c), "rot": rot(front, c), "writhe": writhe(front, c),
         "right_cusps": len(right_cusps(front, c))}
        for c in front.components
    ]
