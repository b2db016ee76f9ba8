# src/handlebody/homology.py — cell counts, H1/H2 from the relator matrix, π1 presentations, linking forms
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from src.errors import HandlebodyError
from src.front.invariants import linking_number
from src.handlebody.model import Handlebody, attaching_word, check
from src.handlebody.words import Word, abelianize, cyclic_reduce, format_word


def euler_characteristic(H: Handlebody) -> int:
    return 1 - len(H.one_handles) + len(H.two_handles)


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(cyclic_reduce(r) for r in self.relators))

    def as_dict(self) -> Dict[str, object]:
        return {
            "generators": list(self.generators),
            "relators": [format_word(r, self.generators) for r in self.relators],
        }


def pi1_presentation(H: Handlebody) -> Presentation:
    check(H)
    return Presentation(H.one_handles, tuple(attaching_word(H, h.label) for h in H.two_handles))


def relator_matrix(H: Handlebody) -> List[List[int]]:
    """Rows are the abelianized attaching words, columns the 1-handles."""
    g = len(H.one_handles)
    return [abelianize(attaching_word(H, h.label), g) for h in H.two_handles]


def lattice_factors(rows: List[List[int]], n_cols: int) -> Tuple[int, ...]:
    """Nonzero invariant factors of an integer matrix; their count is its rank."""
    live = [j for j in range(n_cols) if any(r[j] for r in rows)]
    rows = [[r[j] for j in live] for r in rows if any(r)]
    if not rows:
        return ()
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return tuple(abs(int(f)) for f in factors if int(f) != 0)


@dataclass(frozen=True)
class HomologySummary:
    chi: int
    h1_rank: int
    h1_torsion: Tuple[int, ...]
    h2_rank: int
    relators: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def h1_trivial(self) -> bool:
        return self.h1_rank == 0 and not self.h1_torsion

    @property
    def h1_text(self) -> str:
        parts = []
        if self.h1_rank:
            parts.append("Z" if self.h1_rank == 1 else f"Z^{self.h1_rank}")
        parts += [f"Z/{d}" for d in self.h1_torsion]
        return " + ".join(parts) or "0"

    def invariants(self) -> Tuple[int, int, Tuple[int, ...], int]:
        return self.chi, self.h1_rank, self.h1_torsion, self.h2_rank

    def as_dict(self) -> Dict[str, object]:
        return {
            "chi": self.chi,
            "h1": self.h1_text,
            "h1_rank": self.h1_rank,
            "h1_torsion": list(self.h1_torsion),
            "h2_rank": self.h2_rank,
        }


def homology(H: Handlebody) -> HomologySummary:
    check(H)
    rows = relator_matrix(H)
    g = len(H.one_handles)
    factors = lattice_factors(rows, g)
    rank = len(factors)
    return HomologySummary(
        chi=euler_characteristic(H),
        h1_rank=g - rank,
        h1_torsion=tuple(d for d in factors if d > 1),
        h2_rank=len(H.two_handles) - rank,
        relators=tuple(tuple(r) for r in rows),
    )


# ------------------------------------------------------------- S^3 charts ---

def linking_matrix(H: Handlebody) -> List[List[int]]:
    """Framings on the diagonal, linking numbers off it; only for handlebodies without 1-handles."""
    check(H)
    if H.one_handles:
        raise HandlebodyError("linking matrix needs a chart without 1-handles")
    labels = H.labels
    out = [[0] * len(labels) for _ in labels]
    for i, a in enumerate(labels):
        out[i][i] = H.handle(a).framing
        for j in range(i + 1, len(labels)):
            out[i][j] = out[j][i] = linking_number(H.front, a, labels[j])
    return out


@dataclass(frozen=True)
class IntersectionForm:
    matrix: Tuple[Tuple[int, ...], ...]
    signature: int
    determinant: int

    def as_dict(self) -> Dict[str, object]:
        return {"matrix": [list(r) for r in self.matrix], "signature": self.signature,
                "determinant": self.determinant}


def intersection_form(H: Handlebody) -> IntersectionForm:
    q = linking_matrix(H)
    if not q:
        return IntersectionForm((), 0, 1)
    eig = np.linalg.eigvalsh(np.array(q, dtype=float))
    signature = int(np.sum(eig > 1e-9) - np.sum(eig < -1e-9))
    return IntersectionForm(tuple(tuple(r) for r in q), signature, int(Matrix(q).det()))
