# src/handlebody/contractible.py — contractibility certificates and the double-is-S^4 gate
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict

from src.handlebody.homology import homology, pi1_presentation
from src.handlebody.model import Handlebody
from src.handlebody.tietze import trivialize

log = logging.getLogger(__name__)


class Contractible(str, Enum):
    YES = "YES"
    UNKNOWN = "UNKNOWN"  # never a refutation


@dataclass(frozen=True)
class ContractibilityCertificate:
    verdict: Contractible
    reason: str
    moves: int = 0

    def as_dict(self) -> Dict[str, object]:
        return {"verdict": self.verdict.value, "reason": self.reason, "moves": self.moves}


def is_contractible_certificate(H: Handlebody, budget: int = 10000) -> ContractibilityCertificate:
    hs = homology(H)
    if hs.chi != 1:
        return ContractibilityCertificate(Contractible.UNKNOWN, f"euler characteristic {hs.chi}")
    if not hs.h1_trivial:
        return ContractibilityCertificate(Contractible.UNKNOWN, f"H1 = {hs.h1_text}")
    if hs.h2_rank:
        return ContractibilityCertificate(Contractible.UNKNOWN, f"H2 has rank {hs.h2_rank}")
    pres = pi1_presentation(H)
    res = trivialize(len(pres.generators), pres.relators, budget)
    if res.trivial:
        log.debug("presentation trivialized in %d moves", res.moves)
        return ContractibilityCertificate(Contractible.YES, "presentation trivialized", res.moves)
    return ContractibilityCertificate(
        Contractible.UNKNOWN, f"tietze search stopped ({res.reason}) with {res.generators_left} generators", res.moves
    )


@dataclass(frozen=True)
class DoubleSummary:
    chi: int
    s4_compatible: bool
    reason: str

    def as_dict(self) -> Dict[str, object]:
        return {"chi": self.chi, "s4_compatible": self.s4_compatible, "reason": self.reason}


def double_check(H: Handlebody, budget: int = 10000) -> DoubleSummary:
    """Homotopy-level shadow of "the double is S^4": a contractible piece doubles to a homotopy sphere."""
    cert = is_contractible_certificate(H, budget)
    chi = 2 * homology(H).chi
    if cert.verdict is Contractible.YES:
        return DoubleSummary(chi, True, "contractible piece; double has chi 2 and trivial homology")
    return DoubleSummary(chi, False, cert.reason)
