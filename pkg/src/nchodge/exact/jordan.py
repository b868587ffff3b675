"""Jordan structure of nilpotent matrices and rational spectra."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple

from ..errors import IrrationalEigenvalues, NotNilpotent
from .matrix import Matrix
from .poly import Poly


def _extend_basis(sub: List[tuple], ambient: List[tuple]) -> List[tuple]:
    """Vectors from ``ambient`` (in order) completing ``sub`` to span(sub + ambient)."""
    chosen = list(sub)
    added = []
    rank = Matrix.from_columns(chosen).rank() if chosen else 0
    for v in ambient:
        trial = chosen + [v]
        r = Matrix.from_columns(trial).rank()
        if r > rank:
            chosen, rank = trial, r
            added.append(v)
    return added


def is_nilpotent(N: Matrix) -> bool:
    return (N ** N.nrows).is_zero() if N.nrows else True


def nilpotency_index(N: Matrix) -> int:
    """Smallest k with N^k = 0."""
    P = Matrix.identity(N.nrows)
    for k in range(N.nrows + 1):
        if P.is_zero():
            return k
        P = P @ N
    raise NotNilpotent("matrix is not nilpotent")


def jordan_nilpotent(N: Matrix) -> Tuple[List[int], Matrix]:
    """Block sizes (descending) and a basis B with B^-1 N B in Jordan form.

    Blocks have ones on the superdiagonal; each chain is stored bottom first,
    so the columns of a block are N^(k-1)v, ..., Nv, v.
    """
    n = N.nrows
    if N.ncols != n:
        raise ValueError("jordan_nilpotent needs a square matrix")
    if n == 0:
        return [], Matrix([], 0)
    if not is_nilpotent(N):
        raise NotNilpotent("N^dim is not zero")
    kers = [[]]
    P = Matrix.identity(n)
    top = 0
    while True:
        P = P @ N
        top += 1
        kers.append(P.nullspace())
        if len(kers[-1]) == n:
            break
    chains: List[List[tuple]] = []
    # images of already chosen chains, indexed by the level they reach
    for k in range(top, 0, -1):
        below = list(kers[k - 1])
        for ch in chains:
            # vector of chain at level k: N^(len-k) top
            below.append(ch[len(ch) - k])
        for v in _extend_basis(below, kers[k]):
            chain = [v]
            for _ in range(k - 1):
                chain.append(N.apply(chain[-1]))
            chains.append(chain)
    chains.sort(key=len, reverse=True)
    cols = []
    sizes = []
    for ch in chains:
        sizes.append(len(ch))
        cols.extend(reversed(ch))
    return sizes, Matrix.from_columns(cols)


def jordan_block(k: int) -> Matrix:
    return Matrix.q([[1 if j == i + 1 else 0 for j in range(k)] for i in range(k)])


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([Fraction(0)] * off + list(r) + [Fraction(0)] * (n - off - b.ncols))
        off += b.ncols
    return Matrix(rows, ncols=n)


def block_sizes_from_ranks(N: Matrix) -> List[int]:
    """Jordan block sizes via the rank sequence of powers (independent of chains)."""
    n = N.nrows
    ranks = [n]
    P = Matrix.identity(n)
    while ranks[-1]:
        P = P @ N
        r = P.rank()
        if r == ranks[-1]:
            raise NotNilpotent("rank sequence stalls")
        ranks.append(r)
    # number of blocks of size >= k is rank N^(k-1) - rank N^k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        sizes.extend([k] * (c - nxt))
    return sorted(sizes, reverse=True)


# rational spectra

def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return out


def rational_roots(p: Poly) -> Dict[Fraction, int]:
    """Rational roots with multiplicity, by the rational root theorem."""
    roots: Dict[Fraction, int] = {}
    if p.is_zero():
        raise ValueError("zero polynomial")
    while p.degree > 0 and p.c[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = Poly(p.c[1:])
    if p.degree <= 0:
        return roots
    den = 1
    for a in p.c:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in p.c]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        lin = Poly([-r, 1])
        while p.degree > 0:
            q, rem = p.divmod(lin)
            if rem.is_zero():
                roots[r] = roots.get(r, 0) + 1
                p = q
            else:
                break
    return roots


def rational_spectrum(A: Matrix) -> Dict[Fraction, int]:
    """Eigenvalues with algebraic multiplicity; raises unless all are rational."""
    cp = A.charpoly()
    roots = rational_roots(cp)
    if sum(roots.values()) != A.nrows:
        raise IrrationalEigenvalues(f"characteristic polynomial {cp.to_str('x')} has non-rational roots")
    return roots


def generalized_eigenspace(A: Matrix, lam, mult: int) -> List[tuple]:
    n = A.nrows
    B = A - Matrix.identity(n).scale(lam)
    return (B ** mult).nullspace()


def jordan_chevalley(A: Matrix):
    """(S, N) with A = S + N, S semisimple (rational spectrum), N nilpotent, SN = NS."""
    spec = rational_spectrum(A)
    cols = []
    diag = []
    for lam in sorted(spec):
        vs = generalized_eigenspace(A, lam, spec[lam])
        cols.extend(vs)
        diag.extend([lam] * len(vs))
    P = Matrix.from_columns(cols)
    S = P @ Matrix.diag(diag) @ P.inverse()
    return S, A - S


def eigen_basis_split(A: Matrix):
    """Basis adapted to generalized eigenspaces: (P, [(lam, dim), ...]) in sorted order."""
    spec = rational_spectrum(A)
    cols = []
    blocks = []
    for lam in sorted(spec):
        vs = generalized_eigenspace(A, lam, spec[lam])
        cols.extend(vs)
        blocks.append((lam, len(vs)))
    return Matrix.from_columns(cols), blocks
