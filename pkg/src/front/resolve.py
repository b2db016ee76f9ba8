# src/front/resolve.py — planar diagrams with over/under data, Gauss codes, a sound unknot certificate
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.front.diagram import FrontDiagram, HandlePass, checked, restrict, traversal
from src.front.invariants import crossing_signs


@dataclass(frozen=True)
class ResolvedCrossing:
    event: int
    over: str      # component labels
    under: str
    sign: int


@dataclass(frozen=True)
class ResolvedDiagram:
    crossings: Tuple[ResolvedCrossing, ...]
    components: Tuple[str, ...]
    orientations: Tuple[int, ...]
    gauss: Tuple[Tuple[int, ...], ...]   # per component: +i over crossing i, -i under it (1-based)

    def as_dict(self) -> Dict[str, object]:
        return {
            "crossings": [
                {"event": c.event, "over": c.over, "under": c.under, "sign": c.sign} for c in self.crossings
            ],
            "components": list(self.components),
            "orientations": list(self.orientations),
            "gauss": [list(g) for g in self.gauss],
        }


def resolve(front: FrontDiagram) -> ResolvedDiagram:
    tr = checked(front)
    signs = crossing_signs(front)
    number = {idx: k + 1 for k, (idx, _, _, _) in enumerate(signs)}
    over_at = {idx: over for idx, over, _, _ in signs}
    on_strand: Dict[int, List[int]] = {}
    for idx, over, under, _ in signs:
        on_strand.setdefault(over, []).append(idx)
        on_strand.setdefault(under, []).append(idx)

    gauss = []
    for label in front.components:
        code: List[int] = []
        for strand, heading in traversal(front, label):
            hits = on_strand.get(strand, [])
            for idx in (hits if heading > 0 else reversed(hits)):
                code.append(number[idx] if over_at[idx] == strand else -number[idx])
        gauss.append(tuple(code))

    crossings = tuple(
        ResolvedCrossing(
            idx,
            front.components[tr.component_of[over]],
            front.components[tr.component_of[under]],
            sign,
        )
        for idx, over, under, sign in signs
    )
    return ResolvedDiagram(crossings, front.components, front.orientations, tuple(gauss))


def gauss_code(front: FrontDiagram, label: str) -> Tuple[int, ...]:
    rd = resolve(front)
    return rd.gauss[rd.components.index(label)]


# ----------------------------------------------------- unknot certificate ---

def _descending(code: List[int]) -> bool:
    n = len(code)
    for start in range(n):
        seen = set()
        ok = True
        for j in range(n):
            c = code[(start + j) % n]
            if abs(c) not in seen:
                if c < 0:
                    ok = False
                    break
                seen.add(abs(c))
        if ok:
            return True
    return False


def _reduce_once(code: List[int]):
    n = len(code)
    for i in range(n):
        a, b = code[i], code[(i + 1) % n]
        if abs(a) == abs(b) and n >= 2:
            return [c for c in code if abs(c) != abs(a)]
    pairs = {}
    for i in range(n):
        a, b = code[i], code[(i + 1) % n]
        if abs(a) == abs(b) or (a > 0) != (b > 0):
            continue
        key = frozenset((abs(a), abs(b)))
        if key in pairs and pairs[key] != (a > 0):
            return [c for c in code if abs(c) not in key]
        pairs.setdefault(key, a > 0)
    return None


def is_unknotted(front: FrontDiagram, label: str) -> bool:
    """True only when the component is certainly the unknot; False means "not certified"."""
    single = restrict(front, [label])
    if any(isinstance(ev, HandlePass) for ev in single.events):
        return False
    code = list(gauss_code(single, label))
    while code:
        if _descending(code):
            return True
        nxt = _reduce_once(code)
        if nxt is None:
            return False
        code = nxt
    return True
