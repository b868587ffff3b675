"""Q[t]-lattices inside Q[t, 1/t]^r, presented by Laurent generator vectors.

A lattice is stored by its Hermite normal form basis: columns c_0..c_{r-1},
c_i vanishing above row i, pivot of c_i a monic power of t, and entries of
earlier columns in row i reduced modulo that pivot.  Equal lattices give
identical bases, so lattices can be compared with ``==``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from ..errors import NCHodgeError
from .laurent import LaurentPoly
from .matrix import Matrix
from .poly import Poly


class NotFullLattice(NCHodgeError):
    pass


def _to_poly(x: LaurentPoly, shift: int) -> Poly:
    c = {}
    for (k,), a in x.terms.items():
        c[k + shift] = a
    if not c:
        return Poly()
    if min(c) < 0:
        raise ValueError("shift too small")
    return Poly([c.get(i, 0) for i in range(max(c) + 1)])


def _to_laurent(p: Poly, shift: int, var: str) -> LaurentPoly:
    return LaurentPoly((var,), {(i - shift,): a for i, a in enumerate(p.c) if a})


def hermite_basis(gens: Sequence[Sequence[LaurentPoly]], var: str = "t") -> List[List[LaurentPoly]]:
    """HNF basis (list of columns) of the Q[t]-span of Laurent vectors; requires full rank."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        raise NotFullLattice("no generators")
    r = len(gens[0])
    shift = 0
    for g in gens:
        for x in g:
            if x:
                shift = max(shift, -x.min_exp())
    pool = [[_to_poly(x, shift) for x in g] for g in gens]
    basis: List[List[Poly]] = []
    for i in range(r):
        live = [c for c in pool if c[i]]
        dead = [c for c in pool if not c[i]]
        if not live:
            raise NotFullLattice(f"generators do not span row {i}")
        # Euclid on row i until one column carries the gcd
        while len(live) > 1:
            live.sort(key=lambda c: c[i].degree)
            piv = live[0]
            nxt = [piv]
            for c in live[1:]:
                q = c[i] // piv[i]
                c2 = [a - q * b for a, b in zip(c, piv)]
                if c2[i]:
                    nxt.append(c2)
                elif any(c2):
                    dead.append(c2)
            live = nxt
        piv = live[0]
        lc = piv[i].lc()
        piv = [a / lc for a in piv]
        basis.append(piv)
        pool = dead
    if any(any(c) for c in pool):
        # leftover generators are combinations already reduced to zero in every row
        raise NotFullLattice("unexpected leftover generators")
    # pivots must be powers of t for the lattice to be full in Q[t,1/t]^r
    for i, c in enumerate(basis):
        p = c[i]
        if any(p.c[: p.degree]):
            raise NotFullLattice(f"pivot {p.to_str('t')} is not a power of t")
    # reduce entries below each pivot row
    for i in range(r):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return [[_to_laurent(p, shift, var) for p in c] for c in basis]


def lattice_matrix(gens: Sequence[Sequence[LaurentPoly]], var: str = "t") -> Matrix:
    cols = hermite_basis(gens, var)
    return Matrix.from_columns(cols)


def standard_lattice(r: int, var: str = "t", power: int = 0) -> List[List[LaurentPoly]]:
    """Columns of t^power * Q[t]^r."""
    zero = LaurentPoly.zero((var,))
    return [[LaurentPoly.var((var,), var, power) if i == j else zero for i in range(r)] for j in range(r)]


def lattice_sum(*gen_lists, var: str = "t") -> Matrix:
    gens = []
    for g in gen_lists:
        gens.extend(g)
    return lattice_matrix(gens, var)


def columns(M: Matrix) -> List[List[LaurentPoly]]:
    return [list(c) for c in M.columns()]


def valuation_matrix(M: Matrix) -> int:
    """Smallest exponent among the entries (order of the pole/zero at t = 0)."""
    vals = [x.min_exp() for r in M.rows for x in r if x]
    if not vals:
        raise ValueError("zero matrix")
    return min(vals)


def lattice_contains(L: Matrix, vectors: Sequence[Sequence[LaurentPoly]], var: str = "t") -> bool:
    return lattice_matrix(columns(L) + [list(v) for v in vectors], var) == L


def fraction_matrix(M: Matrix) -> Matrix:
    """Constant matrix of a Laurent matrix with constant entries."""
    return M.map(lambda x: x.constant_term() if isinstance(x, LaurentPoly) else Fraction(x))
