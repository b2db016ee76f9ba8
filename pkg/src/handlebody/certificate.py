# src/handlebody/certificate.py — 2-handle defects and the framing criterion for pseudo-convex handlebodies
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple, Union

import pandas as pd

from src.front.diagram import FrontDiagram
from src.front.invariants import tb
from src.front.moves import legendrianize_to
from src.handlebody.model import FramedHandle, Handlebody, check

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    PC = "PC"
    NOT_YET = "NOT_YET"


def defect_handle(H: Handlebody, h: Union[FramedHandle, str]) -> int:
    """max{f + 1 - tb(K), 0}"""
    label = h if isinstance(h, str) else h.label
    handle = H.handle(label)
    return max(handle.framing + 1 - tb(H.front, label), 0)


def defect_total(H: Handlebody) -> int:
    return sum(defect_handle(H, h) for h in H.two_handles)


@dataclass(frozen=True)
class LedgerRow:
    handle: str
    tb: int
    framing: int
    defect: int
    stabilizations: int


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    total_defect: int
    rows: Tuple[LedgerRow, ...]
    front: FrontDiagram  # after the recorded stabilizations

    def table(self) -> pd.DataFrame:
        return pd.DataFrame([r.__dict__ for r in self.rows],
                            columns=["handle", "tb", "framing", "defect", "stabilizations"])

    def as_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "total_defect": self.total_defect,
            "handles": [dict(r.__dict__) for r in self.rows],
            "stabilized_front": self.front.word(),
        }


def pc_certificate(H: Handlebody) -> Certificate:
    """Stabilize every handle with tb > f + 1 down to f + 1; PC iff no defect remains."""
    check(H)
    front = H.front
    rows: List[LedgerRow] = []
    for h in H.two_handles:
        t = tb(front, h.label)
        extra = t - (h.framing + 1)
        if extra > 0:
            front = legendrianize_to(front, h.label, h.framing + 1)
        rows.append(LedgerRow(h.label, t, h.framing, max(-extra, 0), max(extra, 0)))
    total = sum(r.defect for r in rows)
    verdict = Verdict.PC if total == 0 else Verdict.NOT_YET
    log.info("pc certificate: %s (defect %d over %d handles)", verdict.value, total, len(rows))
    return Certificate(verdict, total, tuple(rows), front)
