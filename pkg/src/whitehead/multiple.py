# src/whitehead/multiple.py — Whitehead multiples P_n(K, f): alternating parallel copies joined by n-1 bands
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from src.errors import WhiteheadError
from src.front.diagram import FrontDiagram, checked, component_index, directions, handles_used
from src.front.invariants import handle_multiplicity, right_cusps, tb
from src.front.moves import fish
from src.whitehead.satellite import FramedComponent, PatternTorus, Satellite, _require, expand

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WhiteheadParams:
    n: int
    band_sites: Tuple[int, ...] = ()  # right-cusp event indices of K, one per band

    def __post_init__(self):
        if int(self.n) < 1:
            raise WhiteheadError(f"copy count must be at least 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "band_sites", tuple(int(s) for s in self.band_sites))


def canonical_framing(n: int, f: int) -> int:
    if n < 1:
        raise WhiteheadError(f"copy count must be at least 1, got {n}")
    return f if n % 2 else 0


def _band_plan(front: FrontDiagram, label: str, params: WhiteheadParams) -> Dict[int, List[int]]:
    cusps = right_cusps(front, label)
    sites = params.band_sites or (cusps[-1],) * (params.n - 1)
    if len(sites) != params.n - 1:
        raise WhiteheadError(f"need {params.n - 1} band sites, got {len(sites)}")
    plan: Dict[int, List[int]] = {}
    for j, site in enumerate(sites):
        if site not in cusps:
            raise WhiteheadError(f"band site {site} is not a right cusp of {label!r}")
        plan.setdefault(site, []).append(j)
    return plan


def _build(front: FrontDiagram, fc: FramedComponent, params: WhiteheadParams) -> Satellite:
    _require(front, fc)
    label, n = fc.component, params.n
    if n >= 2 and not right_cusps(front, label):
        if params.band_sites:
            raise WhiteheadError(f"component {label!r} has no right cusp for the given band sites")
        front = fish(front, label)
    bands = _band_plan(front, label, params) if n >= 2 else {}
    return expand(
        front, label, n,
        twist=fc.framing - tb(front, label),
        signs=[1 if j % 2 == 0 else -1 for j in range(n)],
        bands=bands,
        labels=[label] * n,
    )


def whitehead_multiple(front: FrontDiagram, fc: FramedComponent,
                       params: WhiteheadParams) -> Tuple[FrontDiagram, FramedComponent]:
    """Band sum of n f-framed copies of K with alternating orientations.

    The result keeps K's label and comes with its canonical framing.
    """
    sat = _build(front, fc, params)
    log.info("P_%d(%s, %d): %d events", params.n, fc.component, fc.framing, len(sat.front))
    return sat.front, FramedComponent(fc.component, canonical_framing(params.n, fc.framing))


def pattern_torus(front: FrontDiagram, fc: FramedComponent, params: WhiteheadParams) -> PatternTorus:
    return _build(front, fc, params).torus


def homology_multiplicity(front: FrontDiagram, component: str, handle: Union[str, PatternTorus]) -> int:
    """Signed count of passes through a 1-handle, or through the meridian disc of a pattern torus."""
    tr = checked(front)
    if isinstance(handle, PatternTorus):
        comp = component_index(front, component)
        if not 0 <= handle.column < len(tr.columns):
            raise WhiteheadError(f"pattern torus column {handle.column} is outside the word")
        dirs = directions(front)
        strands = tr.columns[handle.column][handle.lo:handle.hi]
        return sum(dirs[s] * handle.direction for s in strands if tr.component_of[s] == comp)
    if handle not in handles_used(front):
        raise WhiteheadError(f"unknown handle {handle!r}")
    return handle_multiplicity(front, component, handle)
