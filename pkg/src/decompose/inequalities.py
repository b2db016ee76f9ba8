# src/decompose/inequalities.py — slice-Bennequin and adjunction predicates
from __future__ import annotations

from src.errors import DecomposeError


def bennequin_check(tb: int, f: int, rot: int, chi: int) -> bool:
    """(tb - f) + |rot| <= -chi for a surface of Euler characteristic chi bounded by the knot."""
    if chi > 1:
        raise DecomposeError(f"a bounded surface has chi <= 1, got {chi}")
    return (tb - f) + abs(rot) <= -chi


def adjunction_check(chi: int, self_int: int, k_dot_f: int) -> bool:
    """-chi(F) >= F·F + K·F; K·F comes from the caller."""
    return -chi >= self_int + k_dot_f
