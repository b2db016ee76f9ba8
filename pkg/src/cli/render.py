# src/cli/render.py — fixed-grid SVG of a front: cusps as arcs, over/under crossings, 1-handle brackets
from __future__ import annotations

import drawsvg as draw

from src.front.diagram import Crossing, FrontDiagram, HandlePass, LeftCusp, RightCusp, checked

STROKE = "#222"
HANDLE = "#b03a2e"


def render_front(front: FrontDiagram, unit: int = 24, margin: int = 16, title: str = "") -> str:
    """Event i sits at x = margin + (2i + 1)·unit; slot s at a fixed height counted from the bottom."""
    tr = checked(front)
    n_events = len(front.events)
    tallest = max((len(c) for c in tr.columns), default=0)
    width = 2 * margin + 2 * unit * max(n_events, 1)
    height = 2 * margin + unit * max(tallest, 1)

    def x(i: int) -> float:
        return margin + (2 * i + 1) * unit

    def y(slot: float) -> float:
        return height - margin - (slot + 0.5) * unit

    d = draw.Drawing(width, height)
    d.append(draw.Rectangle(0, 0, width, height, fill="white"))
    if title:
        d.append(draw.Text(title, 10, margin / 2, margin / 2 + 4, fill=STROKE))

    def line(x1, y1, x2, y2, cls: str) -> None:
        d.append(draw.Line(x1, y1, x2, y2, stroke=STROKE, stroke_width=1.5, class_=cls))

    for i, ev in enumerate(front.events):
        before, after = tr.columns[i], tr.columns[i + 1]
        cx = x(i)
        busy = set()
        if isinstance(ev, LeftCusp):
            lo, hi = y(ev.slot), y(ev.slot + 1)
            p = draw.Path(stroke=STROKE, stroke_width=1.5, fill="none", class_="cusp")
            p.M(cx + unit, hi).Q(cx + unit / 2, hi, cx, (lo + hi) / 2).Q(cx + unit / 2, lo, cx + unit, lo)
            d.append(p)
            busy.update(after[ev.slot:ev.slot + 2])
        elif isinstance(ev, RightCusp):
            lo, hi = y(ev.slot), y(ev.slot + 1)
            p = draw.Path(stroke=STROKE, stroke_width=1.5, fill="none", class_="cusp")
            p.M(cx - unit, hi).Q(cx - unit / 2, hi, cx, (lo + hi) / 2).Q(cx - unit / 2, lo, cx - unit, lo)
            d.append(p)
            busy.update(before[ev.slot:ev.slot + 2])
        elif isinstance(ev, Crossing):
            lo, hi = y(ev.slot), y(ev.slot + 1)
            # over: the strand heading down
            line(cx - unit, hi, cx + unit, lo, "crossing")
            gap = unit / 4
            line(cx - unit, lo, cx - gap, lo + (hi - lo) * (unit - gap) / (2 * unit), "crossing")
            line(cx + gap, lo + (hi - lo) * (unit + gap) / (2 * unit), cx + unit, hi, "crossing")
            busy.update(before[ev.slot:ev.slot + 2])
        elif isinstance(ev, HandlePass):
            sy = y(ev.slot)
            if ev.side == "L":
                line(cx, sy, cx + unit, sy, "strand")
                busy.add(after[ev.slot])
            else:
                line(cx - unit, sy, cx, sy, "strand")
                busy.add(before[ev.slot])
            d.append(draw.Rectangle(cx - unit / 8, sy - unit / 2, unit / 4, unit, fill=HANDLE,
                                    fill_opacity=0.3, stroke=HANDLE, class_=f"handle handle-{ev.side}"))
            d.append(draw.Text(ev.handle, 9, cx - unit / 4, sy - unit / 2 - 2, fill=HANDLE))
        for s in before:
            if s in busy or s not in after:
                continue
            line(cx - unit, y(before.index(s)), cx + unit, y(after.index(s)), "strand")
    return d.as_svg()


def cusp_count(svg: str) -> int:
    return svg.count('class="cusp"')
