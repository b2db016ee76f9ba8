# src/decompose/convex.py — two-pass driver clearing the defects of both halves of a decomposition
from __future__ import annotations

import logging

from src.decompose.rewrite import Decomposition, choose_k, passive_bound, swap_move
from src.handlebody.certificate import defect_handle, defect_total
from src.handlebody.model import check

log = logging.getLogger(__name__)


def _clear_side(dec: Decomposition, side: int, pass_no: int, k_min: int, k_cap: int) -> Decomposition:
    for label in dec.side(side).labels:  # declaration order, snapshot before the pass
        d = defect_handle(dec.side(side), label)
        if d == 0:
            continue
        k = choose_k(passive_bound(d), k_min, k_cap)
        dec = swap_move(dec, side, label, d, k, pass_no)
    return dec


def convex_decompose(dec: Decomposition, k_min: int = 3, k_cap: int = 99) -> Decomposition:
    """Pass 1 clears side 1 against side 2; pass 2 does the same on the reversed decomposition."""
    check(dec.side1)
    check(dec.side2)
    before = (defect_total(dec.side1), defect_total(dec.side2))
    dec = _clear_side(dec, 1, 1, k_min, k_cap)
    dec = _clear_side(dec, 2, 2, k_min, k_cap)
    log.info("convex decomposition: defects %s -> (%d, %d) in %d swaps", before,
             defect_total(dec.side1), defect_total(dec.side2), len(dec.ledger.entries))
    return dec
