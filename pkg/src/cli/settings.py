# src/cli/settings.py — config.toml loading with defaults and the PKIT_BUDGET override
from __future__ import annotations

import copy
import logging
import os
from typing import Any, Dict, Optional

try:
    import tomllib  # py3.11+
except ModuleNotFoundError:
    import tomli as tomllib

log = logging.getLogger(__name__)

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "search": {"budget": 10000, "conjugator_length": 2},
    "survey": {"max_events": 12},
    "decompose": {"k_cap": 99, "k_min": 3},
    "corpus": {"seed": 7, "fronts": 24, "moves": 1000},
    "render": {"unit": 24, "margin": 16},
    "report": {"schema": 1, "indent": 2},
}


def load_cfg(path: str = "config.toml") -> Dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except Exception:
        return {}


def settings(path: Optional[str] = "config.toml") -> Dict[str, Dict[str, Any]]:
    """Defaults, overlaid by the config file, overlaid by the environment."""
    out = copy.deepcopy(DEFAULTS)
    for section, values in (load_cfg(path) if path else {}).items():
        if isinstance(values, dict):
            out.setdefault(section, {}).update(values)
    env = os.environ.get("PKIT_BUDGET")
    if env:
        try:
            out["search"]["budget"] = int(env)
        except ValueError:
            log.warning("ignoring PKIT_BUDGET=%r (not an integer)", env)
    out["report"]["schema"] = 1
    return out
