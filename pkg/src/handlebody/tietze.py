# src/handlebody/tietze.py — bounded Tietze search for trivial group presentations
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.handlebody.words import Word, cyclic_reduce, invert, multiply, rotations, substitute

log = logging.getLogger(__name__)

State = Tuple[int, Tuple[Word, ...]]  # (generator count, relators)


@dataclass(frozen=True)
class TietzeResult:
    trivial: bool
    moves: int
    generators_left: int
    reason: str = ""


def _drop_generator(relators: Sequence[Word], g: int, value: Word) -> List[Word]:
    """Substitute generator g := value and renumber the generators above it."""
    out: List[Word] = []
    for r in relators:
        w = substitute(r, g, value)
        w = [x - 1 if x > g else x + 1 if x < -g else x for x in w]
        out.append(cyclic_reduce(w))
    return out


def _eliminate_once(n: int, relators: List[Word]) -> Optional[Tuple[int, List[Word]]]:
    for i, r in enumerate(relators):
        for g in range(1, n + 1):
            hits = [k for k, x in enumerate(r) if abs(x) == g]
            if len(hits) != 1:
                continue
            k = hits[0]
            rotated = r[k:] + r[:k]          # x^e · v = 1
            v = rotated[1:]
            value = invert(v) if rotated[0] > 0 else tuple(v)
            rest = relators[:i] + relators[i + 1:]
            return n - 1, _drop_generator(rest, g, value)
    return None


def simplify(n: int, relators: Sequence[Word]) -> Tuple[State, int]:
    """Apply generator eliminations until none applies; returns the state and the moves spent."""
    rels = [cyclic_reduce(r) for r in relators]
    moves = 0
    while True:
        rels = [r for r in rels if r]
        step = _eliminate_once(n, rels)
        if step is None:
            break
        n, rels = step
        moves += 1
    return (n, tuple(sorted(rels, key=lambda r: (len(r), r)))), moves


def _weight(state: State) -> Tuple[int, int]:
    n, rels = state
    return n, sum(len(r) for r in rels)


def trivialize(n: int, relators: Sequence[Word], budget: int) -> TietzeResult:
    """Best-first search over relator products (r_a -> r_a · rot(r_b)^±1) with eliminations in between.

    Deterministic for a given input and budget; each generated state costs one move.
    """
    start, spent = simplify(n, relators)
    if start[0] == 0:
        return TietzeResult(True, spent, 0)
    counter = itertools.count()
    heap = [(_weight(start), next(counter), start)]
    seen = {start}
    best = start[0]
    while heap:
        _, _, (gens, rels) = heapq.heappop(heap)
        for a, b in itertools.permutations(range(len(rels)), 2):
            for rot in rotations(rels[b]):
                for piece in (rot, invert(rot)):
                    if spent >= budget:
                        log.debug("tietze budget %d spent with %d generators left", budget, best)
                        return TietzeResult(False, spent, best, "budget")
                    spent += 1
                    new = list(rels)
                    new[a] = cyclic_reduce(multiply(rels[a], piece))
                    state, used = simplify(gens, new)
                    spent += used
                    if state[0] == 0:
                        return TietzeResult(True, spent, 0)
                    best = min(best, state[0])
                    if state not in seen:
                        seen.add(state)
                        heapq.heappush(heap, (_weight(state), next(counter), state))
    return TietzeResult(False, spent, best, "search space exhausted")
