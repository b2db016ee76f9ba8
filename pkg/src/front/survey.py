# src/front/survey.py — exhaustive small-front search for the maximal tb of a certified unknot
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

from src.front.diagram import Crossing, Event, FrontDiagram, LeftCusp, RightCusp, format_word
from src.front.invariants import tb
from src.front.resolve import is_unknotted

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnknotSurvey:
    max_events: int
    max_tb: Optional[int]
    witness: str
    closed_words: int
    certified: int
    pruned: int

    def as_dict(self) -> dict:
        return {
            "max_events": self.max_events,
            "max_tb": self.max_tb,
            "witness": self.witness,
            "closed_words": self.closed_words,
            "certified_unknots": self.certified,
            "pruned": self.pruned,
        }


def unknot_survey(max_events: int = 12) -> UnknotSurvey:
    """Depth-first enumeration of one-component S^3 fronts with at most `max_events` events.

    A branch is cut once even an all-positive completion could not beat the best tb found.
    """
    best: List[Optional[int]] = [None]
    witness: List[str] = [""]
    stats = {"closed": 0, "certified": 0, "pruned": 0}
    word: List[Event] = []

    def visit(m: int, xs: int, rcs: int) -> None:
        if word and m == 0:
            stats["closed"] += 1
            front = FrontDiagram(tuple(word))
            if len(front.components) != 1:
                return
            value = tb(front, front.components[0])
            if best[0] is not None and value <= best[0]:
                return
            if is_unknotted(front, front.components[0]):
                stats["certified"] += 1
                best[0], witness[0] = value, format_word(word)
            return
        remaining = max_events - len(word)
        if remaining < m // 2 or remaining == 0:
            return
        ceiling = xs + (remaining - m // 2) - rcs - m // 2
        if best[0] is not None and ceiling <= best[0]:
            stats["pruned"] += 1
            return
        options: List[Event] = [LeftCusp(i) for i in range(m + 1)]
        options += [Crossing(i) for i in range(m - 1)]
        options += [RightCusp(i) for i in range(m - 1)]
        for ev in options:
            word.append(ev)
            if isinstance(ev, LeftCusp):
                visit(m + 2, xs, rcs)
            elif isinstance(ev, Crossing):
                visit(m, xs + 1, rcs)
            else:
                visit(m - 2, xs, rcs + 1)
            word.pop()

    visit(0, 0, 0)
    log.info("unknot survey up to %d events: max tb %s over %d closed words", max_events, best[0], stats["closed"])
    return UnknotSurvey(max_events, best[0], witness[0], stats["closed"], stats["certified"], stats["pruned"])
