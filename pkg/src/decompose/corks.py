# src/decompose/corks.py — making both sides of a cork decomposition pseudo-convex at once
"""
A triple (N, A1, A2) stands for M1 = N ∪ A1 and M2 = N ∪ A2. Gluings are
symbolic; every identity below is checked on cell counts, homology, defects
and chart records only.

  step 1  clear N against A1 and A2 with the same moves
  step 2  clear each cork; the carved neighbourhood goes to the other cork
  step 3  Ñ = N'' ♮ (-A1''),  Ã1 = A1'' ♮ A2'',  Ã2 = A2'' ♮ A1''
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Tuple

from src.errors import DecomposeError
from src.decompose.positron import positron
from src.decompose.rewrite import (
    DefectLedger,
    LedgerEntry,
    choose_k,
    fresh_tag,
    passive_bound,
    passive_modify,
    reduce_defect_step,
)
from src.front.diagram import front_from_text
from src.handlebody.certificate import defect_handle, defect_total
from src.handlebody.contractible import DoubleSummary, double_check, is_contractible_certificate
from src.handlebody.homology import euler_characteristic
from src.handlebody.model import FramedHandle, Handlebody, boundary_sum, chart_record, check, from_front
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorkTriple:
    N: Handlebody
    A1: Handlebody
    A2: Handlebody
    phi1: str = "phi1"
    phi2: str = "phi2"

    def swapped(self) -> "CorkTriple":
        return CorkTriple(self.N, self.A2, self.A1, self.phi2, self.phi1)


def closed_chi(N: Handlebody, A: Handlebody) -> int:
    """χ of N ∪ A glued along a closed 3-manifold."""
    return euler_characteristic(N) + euler_characteristic(A)


@lru_cache(maxsize=16)
def check_s4_summand(k: int, budget: int = 10000) -> DoubleSummary:
    """Double of the positron W_k that a rewrite splits off."""
    return double_check(positron(k).realized, budget)


@dataclass(frozen=True)
class CorkRun:
    before: CorkTriple
    after: CorkTriple
    ledger: DefectLedger
    gates: Tuple[Dict[str, object], ...] = ()
    certificates: Dict[str, str] = field(default_factory=dict)

    def chi_identities(self) -> Dict[str, Tuple[int, int]]:
        return {
            "M1": (closed_chi(self.before.N, self.before.A1), closed_chi(self.after.N, self.after.A1)),
            "M2": (closed_chi(self.before.N, self.before.A2), closed_chi(self.after.N, self.after.A2)),
        }


def _reduce_all(active: Handlebody, partners: List[Handlebody], pass_no: int, side: int,
                ledger: DefectLedger, gates: List[Dict[str, object]], k_min: int, k_cap: int):
    """Clear every defect of `active`; each move drops the carved neighbourhood into every partner."""
    for label in active.labels:
        d = defect_handle(active, label)
        if d == 0:
            continue
        k = choose_k(passive_bound(d), k_min, k_cap)
        tag = fresh_tag(active, *partners)
        a_total = defect_total(active)
        p_total = sum(defect_total(p) for p in partners)
        new_active = reduce_defect_step(active, label, d, k, tag)
        new_partners = [passive_modify(p, d, k, tag) for p in partners]
        ledger = ledger.add(LedgerEntry(
            pass_no, side, label, d, k, d, defect_handle(new_active, label),
            a_total, defect_total(new_active),
            p_total, sum(defect_total(p) for p in new_partners),
            euler_characteristic(new_active) - euler_characteristic(active),
            sum(euler_characteristic(q) - euler_characteristic(p) for p, q in zip(partners, new_partners)),
        ))
        gates.append({"pass": pass_no, "handle": label, "k": k, "s4_compatible": check_s4_summand(k).s4_compatible})
        active, partners = new_active, new_partners
    return active, partners, ledger


def cork_pseudoconvexify(t1: CorkTriple, t2: CorkTriple, k_min: int = 3, k_cap: int = 99,
                         budget: int = 10000) -> Tuple[CorkRun, CorkRun]:
    """t2 must be t1 with its corks exchanged; returns the runs for M1 and M2."""
    for H in (t1.N, t1.A1, t1.A2, t2.N, t2.A1, t2.A2):
        check(H)
    if chart_record(t1.N) != chart_record(t2.N):
        raise DecomposeError("the two triples do not share N")
    if chart_record(t1.A1) != chart_record(t2.A2) or chart_record(t1.A2) != chart_record(t2.A1):
        raise DecomposeError("the second triple must carry the corks of the first in swapped order")

    ledger = DefectLedger()
    gates: List[Dict[str, object]] = []

    # step 1: N against both corks with identical moves
    N1, (A1, A2), ledger = _reduce_all(t1.N, [t1.A1, t1.A2], 1, 1, ledger, gates, k_min, k_cap)

    # step 2: each cork upside down; its carving lands in the other cork
    A1, (A2,), ledger = _reduce_all(A1, [A2], 2, 2, ledger, gates, k_min, k_cap)
    A2, (A1,), ledger = _reduce_all(A2, [A1], 2, 3, ledger, gates, k_min, k_cap)

    # step 3: the reversed cork stays a -1 summand of N
    minus_a1 = replace(A1, orientation=-A1.orientation)
    N_t = boundary_sum(N1, minus_a1, allow_reversed=True)
    A1_t = boundary_sum(A1, A2)
    A2_t = boundary_sum(A2, A1)

    certs = {
        "A1": is_contractible_certificate(A1_t, budget).verdict.value,
        "A2": is_contractible_certificate(A2_t, budget).verdict.value,
    }
    log.info("corks: defects N %d, A1 %d, A2 %d; certificates %s",
             defect_total(N_t), defect_total(A1_t), defect_total(A2_t), certs)
    after = CorkTriple(N_t, A1_t, A2_t, t1.phi1, t1.phi2)
    run1 = CorkRun(t1, after, ledger, tuple(gates), certs)
    run2 = CorkRun(t2, after.swapped(), ledger, tuple(gates), {"A1": certs["A2"], "A2": certs["A1"]})
    return run1, run2


def demo_cork_triples() -> Tuple[CorkTriple, CorkTriple]:
    """N: a 0-framed unknot (defect 2); corks from W_3 and W_5 with raised framings (defects 1 and 2)."""
    N = from_front(front_from_text("Lc0 Rc0", ["u"]), {"u": 0})
    a1, a2 = positron(3).realized, positron(5).realized
    A1 = replace(a1, two_handles=(FramedHandle(FramedComponent("p", 2)),))
    A2 = replace(a2, two_handles=(FramedHandle(FramedComponent("p", 5)),))
    t = CorkTriple(N, check(A1), check(A2))
    return t, t.swapped()
