# src/decompose/rewrite.py — defect-lowering rewrites of 2-handles and two-sided swap moves
"""
Active side: carve a disc whose boundary is P_n of the handle's meridian
(1-handle c<i>), cap the carving off with a 0-framed 2-handle along P_k of the
new meridian (p<i>), and sum the rewritten handle with P_n(meridian of c<i>).
The handle keeps its label and framing; its tb rises by n.

Passive side: the other half gets a carving 1-handle e<i> and a 2-handle g<i>
attached along P_n(unknot, 0) # P_k(meridian of e<i>), framed canonically.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import pandas as pd

from src.errors import DecomposeError
from src.front.diagram import FrontDiagram, LeftCusp, RightCusp, concat
from src.front.invariants import right_cusps, tb
from src.front.moves import connected_sum, fish
from src.decompose.positron import meridian_multiple
from src.handlebody.certificate import defect_handle, defect_total
from src.handlebody.homology import euler_characteristic
from src.handlebody.model import FramedHandle, Handlebody, Summand, check
from src.whitehead.multiple import WhiteheadParams, canonical_framing, whitehead_multiple
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)

DISC_FRAMING = 0


def _names(*sides: Handlebody) -> set:
    out = set()
    for H in sides:
        out |= set(H.one_handles) | set(H.labels)
    return out


def fresh_tag(*sides: Handlebody) -> int:
    taken = _names(*sides)
    i = 1
    while any(f"{p}{i}" in taken for p in "cpeg"):
        i += 1
    return i


def _check_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise DecomposeError(f"k must be odd and at least 3, got {k}")


def choose_k(bound: int, k_min: int = 3, k_cap: int = 99) -> int:
    """Smallest odd k >= max(k_min, bound, 3), or an error past the cap."""
    k = max(k_min, bound, 3)
    if k % 2 == 0:
        k += 1
    if k > k_cap:
        raise DecomposeError(f"no odd k >= {bound} within the cap {k_cap}")
    return k


def _add(H: Handlebody, one: str, handle: FramedHandle, piece: FrontDiagram,
         into: Optional[int] = None) -> Handlebody:
    """Append a 1-handle and a 2-handle drawn on `piece`, in summand `into` or a new one."""
    summands = list(H.summands)
    if into is None:
        summands.append(Summand((one,), (handle.label,)))
    else:
        s = summands[into]
        summands[into] = Summand(s.one_handles + (one,), s.two_handles + (handle.label,), s.orientation)
    return check(Handlebody(
        H.one_handles + (one,),
        H.two_handles + (handle,),
        concat(H.front, piece) if piece.events else H.front,
        H.orientation,
        tuple(summands),
    ))


def reduce_defect_step(Z: Handlebody, handle: str, n: int, k: int, tag: Optional[int] = None) -> Handlebody:
    check(Z)
    _check_k(k)
    if n < 1:
        raise DecomposeError(f"n must be at least 1, got {n}")
    h = Z.handle(handle)
    if defect_handle(Z, h) == 0:
        raise DecomposeError(f"handle {handle!r} already has defect 0")
    i = fresh_tag(Z) if tag is None else tag
    carve, cap = f"c{i}", f"p{i}"

    # h' = h # P_n(meridian of the carving)
    base = Z.front if right_cusps(Z.front, handle) else fish(Z.front, handle)
    summed = connected_sum(base, handle, meridian_multiple(carve, handle + "~", n))
    cap_front = meridian_multiple(carve, cap, k)
    home = next(j for j, s in enumerate(Z.summands) if handle in s.two_handles)

    staged = replace(Z, front=summed)
    out = _add(staged, carve, FramedHandle(FramedComponent(cap, DISC_FRAMING)), cap_front, into=home)
    log.debug("reduced %s by n=%d with k=%d: tb %d -> %d", handle, n, k,
              tb(Z.front, handle), tb(out.front, handle))
    return out


def passive_piece(n: int, k: int, tag: int) -> Tuple[str, FramedHandle, FrontDiagram]:
    """(e<i>, g<i>, front of g<i>) for the side that receives the carved neighbourhood."""
    carve, label = f"e{tag}", f"g{tag}"
    disc = FrontDiagram((LeftCusp(0), RightCusp(0)), (label,), (1,))
    pn, _ = whitehead_multiple(disc, FramedComponent(label, DISC_FRAMING), WhiteheadParams(n))
    front = connected_sum(pn, label, meridian_multiple(carve, label + "~", k))
    return carve, FramedHandle(FramedComponent(label, canonical_framing(n, DISC_FRAMING))), front


def passive_bound(n: int) -> int:
    """Defect of g before the P_k sum; k has to reach it."""
    disc = FrontDiagram((LeftCusp(0), RightCusp(0)), ("g",), (1,))
    pn, fc = whitehead_multiple(disc, FramedComponent("g", DISC_FRAMING), WhiteheadParams(n))
    return max(fc.framing + 1 - tb(pn, "g"), 0)


def passive_modify(H: Handlebody, n: int, k: int, tag: int) -> Handlebody:
    check(H)
    _check_k(k)
    carve, g, front = passive_piece(n, k, tag)
    return _add(H, carve, g, front)


# ------------------------------------------------------------- two sides ---

@dataclass(frozen=True)
class LedgerEntry:
    pass_no: int
    active: int
    handle: str
    n: int
    k: int
    defect_before: int
    defect_after: int
    active_total_before: int
    active_total_after: int
    passive_total_before: int
    passive_total_after: int
    dchi_active: int
    dchi_passive: int


@dataclass(frozen=True)
class DefectLedger:
    entries: Tuple[LedgerEntry, ...] = ()

    def add(self, entry: LedgerEntry) -> "DefectLedger":
        return DefectLedger(self.entries + (entry,))

    def to_frame(self) -> pd.DataFrame:
        cols = list(LedgerEntry.__dataclass_fields__)
        return pd.DataFrame([e.__dict__ for e in self.entries], columns=cols)

    def as_rows(self) -> List[Dict[str, int]]:
        return [dict(e.__dict__) for e in self.entries]


@dataclass(frozen=True)
class Decomposition:
    side1: Handlebody
    side2: Handlebody
    ledger: DefectLedger = field(default_factory=DefectLedger)
    gluing: str = "symbolic"

    def __post_init__(self):
        if self.side1.orientation != 1 or self.side2.orientation != -1:
            object.__setattr__(self, "side1", replace(self.side1, orientation=1))
            object.__setattr__(self, "side2", replace(self.side2, orientation=-1))

    def side(self, i: int) -> Handlebody:
        if i not in (1, 2):
            raise DecomposeError(f"side must be 1 or 2, got {i}")
        return self.side1 if i == 1 else self.side2


def swap_move(dec: Decomposition, side: int, handle: str, n: int, k: int, pass_no: int = 1) -> Decomposition:
    active, passive = dec.side(side), dec.side(3 - side)
    tag = fresh_tag(active, passive)
    d_before = defect_handle(active, handle)
    a_total, p_total = defect_total(active), defect_total(passive)

    active2 = reduce_defect_step(active, handle, n, k, tag)
    passive2 = passive_modify(passive, n, k, tag)

    entry = LedgerEntry(
        pass_no, side, handle, n, k,
        d_before, defect_handle(active2, handle),
        a_total, defect_total(active2),
        p_total, defect_total(passive2),
        euler_characteristic(active2) - euler_characteristic(active),
        euler_characteristic(passive2) - euler_characteristic(passive),
    )
    s1, s2 = (active2, passive2) if side == 1 else (passive2, active2)
    log.info("swap on side %d at %s: defect %d -> %d", side, handle, entry.defect_before, entry.defect_after)
    return Decomposition(s1, s2, dec.ledger.add(entry), dec.gluing)
