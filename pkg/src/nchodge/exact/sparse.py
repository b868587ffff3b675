"""Sparse exact elimination over Q for large, sparse, small-integer systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, Mapping

SparseVec = Dict[Hashable, Fraction]


class Echelon:
    """Incremental row echelon form; each stored vector has a distinct leading key."""

    def __init__(self, order=None):
        self.pivots: Dict[Hashable, SparseVec] = {}
        self.key = order or (lambda k: k)

    def reduce(self, v: Mapping) -> SparseVec:
        v = {k: Fraction(a) for k, a in v.items() if a}
        while v:
            lead = min(v, key=self.key)
            p = self.pivots.get(lead)
            if p is None:
                return v
            c = v[lead]
            for k, a in p.items():
                b = v.get(k, 0) - c * a
                if b:
                    v[k] = b
                else:
                    v.pop(k, None)
        return v

    def add(self, v: Mapping) -> bool:
        """Insert v; return True if it was independent of the stored vectors."""
        v = self.reduce(v)
        if not v:
            return False
        lead = min(v, key=self.key)
        c = v[lead]
        self.pivots[lead] = {k: a / c for k, a in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def sparse_rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def restrict(v: Mapping, keep) -> SparseVec:
    return {k: a for k, a in v.items() if keep(k)}
