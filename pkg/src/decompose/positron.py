# src/decompose/positron.py — the carved-disc gadget W_n and meridian satellites through a 1-handle
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from src.errors import DecomposeError
from src.front.diagram import FrontDiagram, HandlePass, LeftCusp
from src.front.moves import fish
from src.handlebody.model import FramedHandle, Handlebody, check
from src.whitehead.multiple import WhiteheadParams, canonical_framing, whitehead_multiple
from src.whitehead.satellite import FramedComponent


def meridian(handle: str, label: str) -> FrontDiagram:
    """One rightward pass through `handle`: tb 0, rot 0."""
    return FrontDiagram((HandlePass(0, handle, "L"), HandlePass(0, handle, "R")), (label,), (1,))


def meridian_multiple(handle: str, label: str, n: int) -> FrontDiagram:
    """P_n of the meridian with framing 0; tb = n - 1 and the multiplicity through `handle` is n mod 2.

    The front always carries a left cusp so it can be summed into another knot.
    """
    out, _ = whitehead_multiple(meridian(handle, label), FramedComponent(label, 0), WhiteheadParams(n))
    if not any(isinstance(ev, LeftCusp) for ev in out.events):
        out = fish(out, label)
    return out


@dataclass(frozen=True)
class Positron:
    n: int
    realized: Handlebody


@lru_cache(maxsize=64)
def positron(n: int, one: str = "c", two: str = "p") -> Positron:
    if n < 1:
        raise DecomposeError(f"positron needs n >= 1, got {n}")
    front = meridian_multiple(one, two, n)
    handle = FramedHandle(FramedComponent(two, canonical_framing(n, 0)))
    return Positron(n, check(Handlebody((one,), (handle,), front)))
