"""Monodromy weight filtrations and the Hodge numbers read off from them."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import InconsistentParity, NilpotencyBoundViolated, NotNilpotent
from .exact.jordan import is_nilpotent, jordan_nilpotent, nilpotency_index
from .exact.matrix import Matrix

# subspaces

Subspace = Tuple[tuple, ...]  # rows of the reduced echelon form of a spanning set


def subspace(vectors: Iterable, dim: int) -> Subspace:
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vecs:
        return ()
    R, piv = Matrix(vecs, ncols=dim).rref()
    return tuple(R.rows[i] for i in range(len(piv)))


def sub_dim(S: Subspace) -> int:
    return len(S)


def sub_sum(A: Subspace, B: Subspace, dim: int) -> Subspace:
    return subspace(list(A) + list(B), dim)


def sub_contains(big: Subspace, small: Subspace, dim: int) -> bool:
    return len(sub_sum(big, small, dim)) == len(big)


def sub_image(N: Matrix, S: Subspace) -> Subspace:
    return subspace([N.apply(v) for v in S], N.nrows)


def sub_intersect(A: Subspace, B: Subspace, dim: int) -> Subspace:
    if not A or not B:
        return ()
    MA = Matrix.from_columns(A)
    MB = Matrix.from_columns(B)
    K = MA.hstack(-MB).nullspace()
    return subspace([MA.apply(k[: len(A)]) for k in K], dim)


def kernel(N: Matrix) -> Subspace:
    return subspace(N.nullspace(), N.ncols)


def image(N: Matrix) -> Subspace:
    return subspace(N.columns(), N.nrows)


def full(dim: int) -> Subspace:
    return subspace(Matrix.identity(dim).columns(), dim)


# filtrations

@dataclass(frozen=True)
class WeightFiltration:
    """Increasing filtration W_k; ``subspaces`` maps each stored index k to a basis matrix.

    Indices below the stored range read as 0, above it as the full space.
    """

    dim: int
    center: int
    subspaces: Mapping[int, Matrix]
    chain: Mapping[int, Subspace] = field(repr=False, compare=False, default=None)

    @property
    def lo(self) -> int:
        return min(self.subspaces)

    @property
    def hi(self) -> int:
        return max(self.subspaces)

    def W(self, k: int) -> Subspace:
        if k < self.lo:
            return ()
        if k > self.hi:
            return full(self.dim)
        return self.chain[k]

    def dims(self, ks: Optional[Iterable[int]] = None) -> List[int]:
        ks = range(self.lo, self.hi + 1) if ks is None else ks
        return [len(self.W(k)) for k in ks]

    def gr_dim(self, k: int) -> int:
        return len(self.W(k)) - len(self.W(k - 1))

    def gr_dims(self) -> Dict[int, int]:
        out = {}
        for k in range(self.lo, self.hi + 1):
            d = self.gr_dim(k)
            if d:
                out[k] = d
        return out

    def same_chain(self, other: "WeightFiltration") -> bool:
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return all(self.W(k) == other.W(k) for k in range(lo - 1, hi + 2))


def _make(dim: int, center: int, chain: Dict[int, Subspace]) -> WeightFiltration:
    mats = {k: Matrix.from_columns(list(S), nrows=dim) if S else Matrix([[] for _ in range(dim)], ncols=0)
            for k, S in chain.items()}
    return WeightFiltration(dim, center, mats, chain)


def weights_of_jordan_basis(sizes: List[int], center: int) -> List[int]:
    """Weight of each Jordan basis column (chains stored bottom first)."""
    out = []
    for s in sizes:
        out.extend(center - (s - 1) + 2 * i for i in range(s))
    return out


def weight_filtration_any_center(N: Matrix, m: int) -> WeightFiltration:
    """Jordan-basis construction, no bound on the center (weights may be negative)."""
    n = N.nrows
    if n and not is_nilpotent(N):
        raise NotNilpotent("weight filtrations need a nilpotent operator")
    sizes, B = jordan_nilpotent(N) if n else ([], Matrix([], 0))
    wts = weights_of_jordan_basis(sizes, m)
    top = max(sizes) - 1 if sizes else 0
    lo, hi = m - top - 1, m + top
    chain = {}
    for k in range(lo, hi + 1):
        chain[k] = subspace([B.col(i) for i, w in enumerate(wts) if w <= k], n)
    return _make(n, m, chain)


def weight_filtration(N: Matrix, m: int) -> WeightFiltration:
    """The weight filtration of nilpotent N centered at m >= 0 (requires N^(m+1) = 0).

    Stored indices run over [-1, 2m].
    """
    n = N.nrows
    if m < 0:
        raise NilpotencyBoundViolated("center must be nonnegative")
    if n and not is_nilpotent(N):
        raise NotNilpotent("weight filtrations need a nilpotent operator")
    if n and not (N ** (m + 1)).is_zero():
        raise NilpotencyBoundViolated(f"N^{m + 1} is not zero")
    wf = weight_filtration_any_center(N, m)
    chain = {k: wf.W(k) for k in range(-1, 2 * m + 1)}
    return _make(n, m, chain)


def weight_filtration_formula(N: Matrix, m: int) -> WeightFiltration:
    """Oracle: W_k(N, m) = sum_j ker N^(k-m+j+1) cap im N^j (no Jordan basis)."""
    n = N.nrows
    idx = nilpotency_index(N) if n else 0
    pows = [Matrix.identity(n)]
    for _ in range(idx + 1):
        pows.append(pows[-1] @ N)

    def P(k):
        return pows[k] if k < len(pows) else pows[-1]

    top = max(idx - 1, 0)
    chain = {}
    for k in range(m - top - 1, m + top + 1):
        kk = k - m
        S: Subspace = ()
        for j in range(max(0, -kk), idx + 1):
            e = kk + j + 1
            if e <= 0:
                continue
            S = sub_sum(S, sub_intersect(kernel(P(e)), image(P(j)), n), n)
        chain[k] = S
    return _make(n, m, chain)


def check_defining_properties(wf: WeightFiltration, N: Matrix) -> bool:
    """N W_k in W_(k-2) for all k, and N^l : gr_(m+l) -> gr_(m-l) bijective for l >= 0."""
    n = wf.dim
    m = wf.center
    for k in range(wf.lo - 1, wf.hi + 3):
        if not sub_contains(wf.W(k - 2), sub_image(N, wf.W(k)), n):
            return False
    Nl = Matrix.identity(n)
    for l in range(0, wf.hi - m + 2):
        up, down = m + l, m - l
        if wf.gr_dim(up) != wf.gr_dim(down):
            return False
        img = sub_sum(sub_image(Nl, wf.W(up)), wf.W(down - 1), n)
        if len(img) - len(wf.W(down - 1)) != wf.gr_dim(down):
            return False
        Nl = Nl @ N
    return True


def brute_force_filtrations(N: Matrix, m: int, lo: Optional[int] = None, hi: Optional[int] = None,
                            limit: int = 2) -> List[WeightFiltration]:
    """Enumerate chains satisfying both defining properties.

    Candidate subspaces are all sums of the N-stable pieces ker N^a cap im N^b;
    the search walks k from ``lo`` to ``hi`` keeping N W_k in W_(k-2), then
    checks the graded isomorphisms.  Returns up to ``limit`` solutions so the
    caller can assert uniqueness.
    """
    n = N.nrows
    idx = nilpotency_index(N) if n else 0
    if lo is None:
        lo = m - max(idx - 1, 0)
    if hi is None:
        hi = m + max(idx - 1, 0)
    pows = [Matrix.identity(n)]
    for _ in range(idx + 1):
        pows.append(pows[-1] @ N)
    atoms = set()
    for a in range(idx + 1):
        for b in range(idx + 1):
            atoms.add(sub_intersect(kernel(pows[a]), image(pows[b]), n))
    atoms = [A for A in atoms if A]
    cands = {(): None}
    frontier = [()]
    while frontier:
        nxt = []
        for S in frontier:
            for A in atoms:
                T = sub_sum(S, A, n)
                if T not in cands:
                    cands[T] = None
                    nxt.append(T)
        frontier = nxt
    cands = sorted(cands, key=len)
    V = full(n)
    sols: List[WeightFiltration] = []

    # memo keyed by candidate position; hashing Fraction tuples is slow
    ids = {S: i for i, S in enumerate(cands)}
    images = [sub_image(N, S) for S in cands]
    contains: Dict[Tuple[int, int], bool] = {}

    def inside(a: int, b: int) -> bool:
        key = (a, b)
        if key not in contains:
            small, big = cands[a], cands[b]
            contains[key] = len(small) <= len(big) and sub_contains(big, small, n)
        return contains[key]

    def idx_of(S) -> int:
        if S not in ids:
            ids[S] = len(cands)
            cands.append(S)
        return ids[S]

    image_ids = [idx_of(T) for T in images]
    n_cands = len(image_ids)

    def dfs(k, chain):
        if len(sols) >= limit:
            return
        if k > hi:
            if cands[chain[hi]] != V:
                return
            wf = _make(n, m, {kk: cands[chain[kk]] for kk in range(lo - 1, hi + 1)})
            if check_defining_properties(wf, N):
                sols.append(wf)
            return
        prev = chain[k - 1]
        below2 = chain.get(k - 2, empty)
        for i in range(n_cands):
            if not inside(prev, i) or not inside(image_ids[i], below2):
                continue
            chain[k] = i
            dfs(k + 1, chain)
            del chain[k]

    empty = idx_of(())
    dfs(lo, {lo - 1: empty, lo - 2: empty})
    return sols


# graded spaces and Hodge tables

@dataclass(frozen=True)
class GradedSpaceWithN:
    """Degree a -> nilpotent operator N_a on a space of dimension N_a.nrows."""

    degrees: Mapping[int, Matrix]

    def dim(self, a: int) -> int:
        return self.degrees[a].nrows

    @classmethod
    def single(cls, a: int, N: Matrix) -> "GradedSpaceWithN":
        return cls({a: N})

    def to_json(self):
        return {"degrees": [{"a": a, "dim": N.nrows, "N": N.to_json()}
                            for a, N in sorted(self.degrees.items())]}

    @classmethod
    def from_json(cls, data) -> "GradedSpaceWithN":
        out = {}
        for d in data["degrees"]:
            dim = int(d["dim"])
            N = Matrix.q(d["N"]) if d.get("N") else Matrix.zeros(dim, dim)
            if N.shape != (dim, dim):
                raise ValueError(f"degree {d['a']}: N has shape {N.shape}, expected {dim}x{dim}")
            out[int(d["a"])] = N
        return cls(out)


class HodgeTable(dict):
    """(p, q) -> positive integer; missing entries read as 0."""

    def get_h(self, p, q) -> int:
        return self.get((Fraction(p), Fraction(q)), 0)

    def add(self, p, q, h: int):
        if h:
            key = (Fraction(p), Fraction(q))
            self[key] = self.get(key, 0) + h

    def row_sums(self) -> Dict[Fraction, int]:
        out: Dict[Fraction, int] = {}
        for (p, q), h in self.items():
            out[p + q] = out.get(p + q, 0) + h
        return out

    def to_json(self):
        return [{"p": _num(p), "q": _num(q), "h": h} for (p, q), h in sorted(self.items())]

    @classmethod
    def from_json(cls, data) -> "HodgeTable":
        t = cls()
        for e in data:
            t.add(Fraction(str(e["p"])), Fraction(str(e["q"])), int(e["h"]))
        return t

    def __repr__(self):
        return "HodgeTable(" + ", ".join(f"h^{{{_num(p)},{_num(q)}}}={h}" for (p, q), h in sorted(self.items())) + ")"


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def lg_hodge_numbers(H: GradedSpaceWithN, indexing: str = "doubled") -> HodgeTable:
    """Hodge numbers from the weight filtration of N_a centered at a on each H^a.

    doubled: h^{p,q} = dim gr_{2p}, q = a - p.   literal: h^{p,q} = dim gr_p, q = a - p.
    """
    if indexing not in ("doubled", "literal"):
        raise ValueError(f"unknown indexing {indexing!r}")
    table = HodgeTable()
    for a, N in sorted(H.degrees.items()):
        wf = weight_filtration(N, a)
        for k, d in wf.gr_dims().items():
            p = Fraction(k, 2) if indexing == "doubled" else Fraction(k)
            if p.denominator != 1:
                warnings.warn(f"half-integer Hodge index p = {p} in degree {a}; reported verbatim")
            table.add(p, a - p, d)
    return table


def fano_hodge_from_hh(HH: GradedSpaceWithN, n: int) -> HodgeTable:
    """h^{p,q}(X) = dim gr_(p+q-n) of W(N_a, a) on HH_a, with p - q = a."""
    table = HodgeTable()
    for a, N in sorted(HH.degrees.items()):
        if abs(a) > n:
            raise ValueError(f"Hochschild degree {a} outside [-{n}, {n}]")
        wf = weight_filtration_any_center(N, a)
        for k, d in wf.gr_dims().items():
            s = k + n  # p + q
            if (s + a) % 2:
                raise InconsistentParity(f"weight {k} in HH_{a} gives p+q = {s}, p-q = {a}: no integer solution")
            p, q = (s + a) // 2, (s - a) // 2
            table.add(p, q, d)
    return table


def mirror_match_check(lg: HodgeTable, fano: HodgeTable, n: int) -> List[dict]:
    """Entries where lg h^{p,q} differs from fano h^{p,n-q}; empty means the tables match."""
    keys = set(lg) | {(p, n - q) for (p, q) in fano}
    out = []
    for p, q in sorted(keys):
        a, b = lg.get_h(p, q), fano.get_h(p, n - q)
        if a != b:
            out.append({"p": _num(p), "q": _num(q), "lg": a, "fano": b})
    return out


def single_block_space(a: int, size: int) -> GradedSpaceWithN:
    from .exact.jordan import jordan_block
    return GradedSpaceWithN({a: jordan_block(size)})
