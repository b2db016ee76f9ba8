# src/cli/corpus.py — seeded random fronts and the property run behind `pkit corpus`
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from src.front.diagram import FrontDiagram, front_from_text
from src.front.invariants import linking_number, rot, tb
from src.front.moves import applicable_moves, front_move, stabilize
from src.whitehead.multiple import WhiteheadParams, homology_multiplicity, pattern_torus, whitehead_multiple
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)

UNKNOT = "Lc0 Rc0"
LINKS = ("Lc0 Lc1 X2 X0 Rc1 Rc0", "Lc0 Lc2 X1 X1 Rc0 Rc0", "Lc0 Rc0 Lc0 Rc0")


def torus_front(m: int) -> str:
    """Two-strand torus front with m crossings; a knot for odd m, tb = m - 2."""
    return " ".join(["Lc0", "Lc2"] + ["X1"] * m + ["Rc0", "Rc0"])


def random_knot(rng: np.random.Generator) -> Tuple[str, FrontDiagram]:
    """Unknot, stabilized unknot, or a stabilized two-strand torus knot."""
    family = int(rng.integers(0, 3))
    if family == 0:
        return "unknot", front_from_text(UNKNOT)
    if family == 1:
        base, name = front_from_text(UNKNOT), "stabilized unknot"
    else:
        m = int(rng.choice([3, 5]))
        base, name = front_from_text(torus_front(m)), f"torus(2,{m})"
    for _ in range(int(rng.integers(0, 3 if family == 2 else 4))):
        base = stabilize(base, "1", int(rng.choice([1, -1])))
    return name, base


def knot_corpus(seed: int = 7, size: int = 24) -> List[Tuple[str, FrontDiagram]]:
    """`size` knots; the fixed head guarantees every family and a tb = 0 knot are present."""
    rng = np.random.default_rng(seed)
    trefoil = front_from_text(torus_front(3))
    head = [
        ("unknot", front_from_text(UNKNOT)),
        ("stabilized unknot", stabilize(front_from_text(UNKNOT), "1", 1)),
        ("torus(2,3)", trefoil),
        ("torus(2,3)", stabilize(trefoil, "1", -1)),
    ]
    return (head + [random_knot(rng) for _ in range(max(size - len(head), 0))])[:max(size, len(head))]


# ---- properties ----

def expected_whitehead_tb(t: int, n: int) -> int:
    return (n % 2) * t + n - 1


def whitehead_rows(corpus: List[Tuple[str, FrontDiagram]], ns=range(2, 8)) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for idx, (family, K) in enumerate(corpus):
        t = tb(K, "1")
        fc = FramedComponent("1", t)
        for n in ns:
            params = WhiteheadParams(n)
            out, _ = whitehead_multiple(K, fc, params)
            t_out = tb(out, "1")
            mult = homology_multiplicity(out, "1", pattern_torus(K, fc, params))
            rows.append({
                "knot": idx, "family": family, "tb": t, "n": n, "tb_out": t_out,
                "gain": t_out - t, "expected": expected_whitehead_tb(t, n) - t,
                "multiplicity": mult, "parity": n % 2,
            })
    df = pd.DataFrame(rows)
    if not df.empty:
        df["tb_ok"] = df["gain"] == df["expected"]
        df["parity_ok"] = df["multiplicity"] == df["parity"]
    return df


def _signature(front: FrontDiagram) -> Tuple:
    comps = front.components
    return (
        tuple((tb(front, c), rot(front, c)) for c in comps),
        tuple(linking_number(front, a, b) for i, a in enumerate(comps) for b in comps[i + 1:]),
    )


def move_rows(seed: int = 7, trials: int = 1000, corpus=None) -> pd.DataFrame:
    """One random applicable move per trial, on a random corpus front or link."""
    rng = np.random.default_rng(seed + 1)
    pool = [K for _, K in (corpus or knot_corpus(seed))] + [front_from_text(w) for w in LINKS]
    rows: List[Dict[str, object]] = []
    for trial in range(trials):
        i = int(rng.integers(0, len(pool)))
        front = pool[i]
        moves = applicable_moves(front)
        move, site, slot = moves[int(rng.integers(0, len(moves)))]
        after = front_move(front, move, site, slot)
        rows.append({
            "trial": trial, "front": i, "move": move.value, "site": site, "slot": slot,
            "ok": _signature(front) == _signature(after),
        })
    return pd.DataFrame(rows)


@dataclass(frozen=True)
class CorpusRun:
    seed: int
    whitehead: pd.DataFrame
    moves: pd.DataFrame
    failures: Tuple[Dict[str, object], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> Dict[str, object]:
        wh, mv = self.whitehead, self.moves
        return {
            "seed": self.seed,
            "knots": int(wh["knot"].nunique()) if not wh.empty else 0,
            "whitehead_cases": len(wh),
            "tb_identity_ok": int(wh["tb_ok"].sum()) if not wh.empty else 0,
            "parity_ok": int(wh["parity_ok"].sum()) if not wh.empty else 0,
            "move_trials": len(mv),
            "moves_ok": int(mv["ok"].sum()) if not mv.empty else 0,
            "moves_by_kind": {k: int(v) for k, v in mv["move"].value_counts().sort_index().items()} if not mv.empty else {},
            "failures": list(self.failures),
        }


def run_corpus(seed: int = 7, size: int = 24, trials: int = 1000) -> CorpusRun:
    corpus = knot_corpus(seed, size)
    wh = whitehead_rows(corpus)
    mv = move_rows(seed, trials, corpus)
    failures: List[Dict[str, object]] = []
    for rec in wh[~(wh["tb_ok"] & wh["parity_ok"])].to_dict("records"):
        failures.append({"property": "whitehead", **{k: (int(v) if isinstance(v, (np.integer, bool, np.bool_)) else v)
                                                     for k, v in rec.items()}})
    for rec in mv[~mv["ok"]].to_dict("records"):
        failures.append({"property": "move", "trial": int(rec["trial"]), "move": rec["move"],
                         "site": int(rec["site"])})
    log.info("corpus seed %d: %d whitehead cases, %d move trials, %d failures", seed, len(wh), len(mv), len(failures))
    return CorpusRun(seed, wh, mv, tuple(failures))
