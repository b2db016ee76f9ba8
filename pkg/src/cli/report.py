# src/cli/report.py — command dispatch and the versioned JSON report
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from src.cli.build import Workspace
from src.cli.corpus import run_corpus
from src.cli.render import render_front
from src.decompose.convex import convex_decompose
from src.decompose.corks import CorkRun, check_s4_summand, cork_pseudoconvexify
from src.decompose.split import contractible_piece
from src.decompose.rewrite import Decomposition, choose_k, passive_bound, reduce_defect_step
from src.errors import DecomposeError, PkitError
from src.front.invariants import invariant_rows, rot, tb
from src.front.survey import unknot_survey
from src.handlebody.certificate import defect_handle, defect_total, pc_certificate
from src.handlebody.contractible import is_contractible_certificate
from src.handlebody.homology import homology, intersection_form, pi1_presentation
from src.handlebody.model import Handlebody, chart_record
from src.whitehead.multiple import (
    WhiteheadParams,
    homology_multiplicity,
    pattern_torus,
    whitehead_multiple,
)
from src.whitehead.satellite import FramedComponent

log = logging.getLogger(__name__)

SCHEMA = 1
SYMBOLIC_GLUING = "gluing maps are symbolic: identities are checked on handles, homology and defects only"
PASSIVE_FRAMING = "passive handles g<i> carry canonical_framing(n, 0), taking 0 as the framing of the carved disc"


@dataclass
class Report:
    command: str
    params: Dict[str, Any]
    input: Dict[str, Any]
    results: Dict[str, Any]
    warnings: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return {"schema": SCHEMA, "command": self.command, "params": self.params, "input": self.input,
                "results": self.results, "warnings": self.warnings}

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, sort_keys=True, default=_plain) + "\n"


def _plain(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (tuple, set)):
        return list(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def input_digest(text: Optional[str], path: Optional[str]) -> Dict[str, Any]:
    if text is None:
        return {}
    return {"file": os.path.basename(path) if path else "<stdin>",
            "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest()}


def _records(df: pd.DataFrame) -> List[Dict[str, Any]]:
    return json.loads(df.to_json(orient="records"))


# ---- per-handlebody tables ----

def handle_table(H: Handlebody) -> pd.DataFrame:
    rows = {r["component"]: r for r in invariant_rows(H.front)}
    out = []
    for h in H.two_handles:
        r = rows[h.label]
        out.append({"handle": h.label, "framing": h.framing, "tb": r["tb"], "rot": r["rot"],
                    "writhe": r["writhe"], "defect": defect_handle(H, h)})
    return pd.DataFrame(out, columns=["handle", "framing", "tb", "rot", "writhe", "defect"])


def summarize(H: Handlebody, budget: int) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "one_handles": list(H.one_handles),
        "orientation": H.orientation,
        "summand_orientations": [s.orientation for s in H.summands],
        "homology": homology(H).as_dict(),
        "pi1": pi1_presentation(H).as_dict(),
        "handles": _records(handle_table(H)),
        "total_defect": defect_total(H),
        "contractible": is_contractible_certificate(H, budget).as_dict(),
    }
    if not H.one_handles:
        out["intersection_form"] = intersection_form(H).as_dict()
    return out


def _brief(H: Handlebody) -> Dict[str, Any]:
    return {"homology": homology(H).as_dict(), "total_defect": defect_total(H),
            "one_handles": len(H.one_handles), "two_handles": len(H.two_handles)}


# ---- commands ----

def cmd_invariants(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    budget = p["budget"]
    kind = ws.kind(target)
    if kind == "handlebody":
        return summarize(ws.handlebody(target), budget)
    if kind == "decomposition":
        dec = ws.decomposition(target)
        return {"side1": summarize(dec.side1, budget), "side2": summarize(dec.side2, budget)}
    t, _ = ws.cork_triples(target)
    return {"N": summarize(t.N, budget), "A1": summarize(t.A1, budget), "A2": summarize(t.A2, budget)}


def cmd_defect(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    cert = pc_certificate(ws.handlebody(target))
    out = cert.as_dict()
    out["table"] = _records(cert.table())
    return out


def _pick_handle(H: Handlebody, p: Dict[str, Any], want_defect: bool = False) -> str:
    if p.get("handle"):
        H.handle(p["handle"])
        return p["handle"]
    if not H.labels:
        raise PkitError("handlebody has no 2-handles", "E-HANDLEBODY")
    if want_defect:
        for label in H.labels:
            if defect_handle(H, label) > 0:
                return label
    return H.labels[0]


def cmd_whitehead(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    H = ws.handlebody(target)
    label = _pick_handle(H, p)
    n = p.get("n", 2)
    t = tb(H.front, label)
    f = p["f"] if p.get("f") is not None else t
    fc = FramedComponent(label, f)
    params = WhiteheadParams(n)
    out, framed = whitehead_multiple(H.front, fc, params)
    t_out = tb(out, label)
    expected = (n % 2) * t + n - 1 if f == t else None
    return {
        "handle": label,
        "n": n,
        "framing_in": f,
        "tb_in": t,
        "rot_in": rot(H.front, label),
        "tb_out": t_out,
        "rot_out": rot(out, label),
        "tb_gain": t_out - t,
        "expected_tb_out": expected,
        "tb_identity_holds": expected is None or t_out == expected,
        "canonical_framing": framed.framing,
        "homology_multiplicity": homology_multiplicity(out, label, pattern_torus(H.front, fc, params)),
        "events": len(out),
        "front": out.word(),
    }


def _whitehead_warnings(results: Dict[str, Any]) -> List[str]:
    if results["n"] % 2 == 0 and results["tb_in"] != 0 and results["framing_in"] == results["tb_in"]:
        return [f"even n: tb(P_n) - tb(K) equals n - 1 only when tb(K) = 0; here the gain is {results['tb_gain']}"]
    return []


def cmd_reduce(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    H = ws.handlebody(target)
    label = _pick_handle(H, p, want_defect=True)
    d = defect_handle(H, label)
    if d == 0:
        raise DecomposeError(f"handle {label!r} already has defect 0")
    n = p.get("n", d)
    if n < 1:
        raise DecomposeError(f"n must be at least 1, got {n}")
    k = p.get("k")
    if k is None:
        k = choose_k(passive_bound(n), p["k_min"], p["k_cap"])
    after = reduce_defect_step(H, label, n, k)
    return {
        "handle": label,
        "n": n,
        "k": k,
        "before": {"defect": d, "tb": tb(H.front, label), **_brief(H)},
        "after": {"defect": defect_handle(after, label), "tb": tb(after.front, label), **_brief(after)},
        "invariants_preserved": homology(H).invariants() == homology(after).invariants(),
        "summand_double": check_s4_summand(k, p["budget"]).as_dict(),
    }


def _decompose(dec: Decomposition, p: Dict[str, Any]) -> Dict[str, Any]:
    out = convex_decompose(dec, p["k_min"], p["k_cap"])
    return {
        "before": {"side1": _brief(dec.side1), "side2": _brief(dec.side2)},
        "after": {"side1": _brief(out.side1), "side2": _brief(out.side2)},
        "ledger": _records(out.ledger.to_frame()),
        "swaps": len(out.ledger.entries),
        "gluing": out.gluing,
    }


def cmd_decompose(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    if ws.kind(target) == "decomposition":
        return _decompose(ws.decomposition(target), p)
    piece = contractible_piece(ws.handlebody(target), p["budget"], p["conjugator_length"])
    out: Dict[str, Any] = {"contractible_piece": {
        "status": piece.status,
        "reason": piece.reason,
        "expressions": dict(piece.expressions),
        "slides": [s.as_dict() for s in piece.slides],
        "certificate": piece.certificate.as_dict() if piece.certificate else None,
    }}
    if piece.status == "FOUND":
        out.update(_decompose(piece.decomposition(), p))
    return out


def _cork_run(run: CorkRun) -> Dict[str, Any]:
    after = run.after
    return {
        "defects": {"N": defect_total(after.N), "A1": defect_total(after.A1), "A2": defect_total(after.A2)},
        "chi": {k: {"before": v[0], "after": v[1]} for k, v in run.chi_identities().items()},
        "certificates": dict(run.certificates),
        "corks_record_identical": chart_record(after.A1) == chart_record(after.A2),
        "n_summand_orientations": [s.orientation for s in after.N.summands],
    }


def cmd_corks(ws: Workspace, target: str, p: Dict[str, Any], cfg) -> Dict[str, Any]:
    t1, t2 = ws.cork_triples(target)
    r1, r2 = cork_pseudoconvexify(t1, t2, p["k_min"], p["k_cap"], p["budget"])
    return {
        "M1": _cork_run(r1),
        "M2": _cork_run(r2),
        "gates": [dict(g) for g in r1.gates],
        "ledger": _records(r1.ledger.to_frame()),
    }


COMMANDS: Dict[str, Callable] = {
    "invariants": cmd_invariants,
    "defect": cmd_defect,
    "whitehead": cmd_whitehead,
    "reduce": cmd_reduce,
    "decompose": cmd_decompose,
    "corks": cmd_corks,
}


def merged_params(cfg: Dict[str, Dict[str, Any]], directive: Dict[str, Any], flags: Dict[str, Any]) -> Dict[str, Any]:
    """config < `run` directive < command-line flags."""
    p: Dict[str, Any] = {
        "budget": cfg["search"]["budget"],
        "conjugator_length": cfg["search"]["conjugator_length"],
        "k_min": cfg["decompose"]["k_min"],
        "k_cap": cfg["decompose"]["k_cap"],
    }
    p.update(directive)
    p.update({k: v for k, v in flags.items() if v is not None})
    return p


def run(ws: Workspace, command: str, target: str, params: Dict[str, Any],
        cfg: Dict[str, Dict[str, Any]], source: Dict[str, Any]):
    """A Report for every command but `render`, which returns SVG text."""
    if command == "render":
        H = ws.handlebody(target)
        return render_front(H.front, cfg["render"]["unit"], cfg["render"]["margin"], title=target)
    if command not in COMMANDS:
        raise PkitError(f"unknown command {command!r}")
    log.info("%s %s %s", command, target, params)
    results = COMMANDS[command](ws, target, params, cfg)
    warnings: List[str] = []
    if command == "whitehead":
        warnings += _whitehead_warnings(results)
    if command in ("decompose", "corks"):
        warnings += [SYMBOLIC_GLUING, PASSIVE_FRAMING]
    shown = {k: v for k, v in params.items() if v is not None}
    return Report(command, {"target": target, **shown}, source, results, warnings)


def corpus_report(seed: int, size: int, trials: int) -> Report:
    res = run_corpus(seed, size, trials)
    warnings = [] if res.ok else [f"{len(res.failures)} property failures"]
    return Report("corpus", {"seed": seed, "fronts": size, "moves": trials}, {}, res.as_dict(), warnings)


def survey_report(max_events: int) -> Report:
    s = unknot_survey(max_events)
    warnings = []
    if s.max_tb is not None and s.max_tb > -1:
        warnings.append(f"certified unknot with tb {s.max_tb} exceeds the tight bound -1")
    return Report("survey", {"max_events": max_events}, {}, s.as_dict(), warnings)

