"""Birkhoff factorization of invertible Laurent matrices in one variable.

A Laurent matrix G(u) clutches the trivial bundles on the two charts of P^1.
We factor G = Gminus * diag(u^e_1, ..., u^e_r) * Gplus with Gminus invertible
over Q[1/u] and Gplus invertible over Q[u].

Algorithm: column reduction.  Right-multiply by unimodular polynomial
column operations until the leading coefficient vectors (coefficient of the
top power of u in each column) are independent.  Each step lowers the top
degree of one column; the total top degree is bounded below by the degree
of det G, so the loop terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import List, Sequence, Tuple

from ..errors import NotInvertible
from .laurent import LaurentPoly
from .matrix import Matrix
from .poly import RatFunc

def lp(x, var="u") -> LaurentPoly:
    """Coerce ints, Fractions, RatFuncs (monomial denominator) to LaurentPoly."""
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const((var,), x)
    return LaurentPoly.from_ratfunc(x, var)


def laurent_matrix(rows, var="u") -> Matrix:
    return Matrix([[lp(x, var) for x in r] for r in rows])


def to_ratfunc_matrix(G: Matrix) -> Matrix:
    return G.map(lambda x: x.to_ratfunc() if isinstance(x, LaurentPoly) else RatFunc(x))


def from_ratfunc_matrix(G: Matrix, var="u") -> Matrix:
    return G.map(lambda x: LaurentPoly.from_ratfunc(x, var))


def laurent_det(G: Matrix) -> LaurentPoly:
    if _nvars(G) > 1:
        return cofactor_det(G)
    var = _var_of(G)
    return LaurentPoly.from_ratfunc(to_ratfunc_matrix(G).det(), var)


def laurent_inverse(G: Matrix) -> Matrix:
    if _nvars(G) > 1:
        return _adjugate_inverse(G)
    var = _var_of(G)
    return from_ratfunc_matrix(to_ratfunc_matrix(G).inverse(), var)


def _nvars(G: Matrix) -> int:
    for r in G.rows:
        for x in r:
            if isinstance(x, LaurentPoly):
                return x.nvars
    return 1


def cofactor_det(G: Matrix):
    """Laplace expansion along the first row; fine for the small ranks used here."""
    n = G.nrows
    if n == 1:
        return G[0, 0]
    acc = G[0, 0] * 0
    for j in range(n):
        if G[0, j]:
            minor = G.submatrix(range(1, n), [k for k in range(n) if k != j])
            term = G[0, j] * cofactor_det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _adjugate_inverse(G: Matrix) -> Matrix:
    """Inverse of a multivariate Laurent matrix whose determinant is a unit (a monomial)."""
    n = G.nrows
    det = cofactor_det(G)
    if not det.is_monomial():
        raise NotInvertible("determinant is not a unit of the Laurent ring")
    if n == 1:
        return Matrix([[det ** -1]])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = G.submatrix([k for k in range(n) if k != j], [k for k in range(n) if k != i])
            c = cofactor_det(minor)
            row.append((c if (i + j) % 2 == 0 else -c) / det)
        rows.append(row)
    return Matrix(rows)


def _var_of(G: Matrix) -> str:
    for r in G.rows:
        for x in r:
            if isinstance(x, LaurentPoly):
                return x.vars[0]
    return "u"


def laurent_eye(r: int, var="u") -> Matrix:
    one, zero = LaurentPoly.const((var,), 1), LaurentPoly.zero((var,))
    return Matrix.identity(r, one=one, zero=zero)


def _top(col: Sequence[LaurentPoly]) -> int:
    return max(x.max_exp() for x in col if x)


def _lead(col: Sequence[LaurentPoly], k: int) -> List[Fraction]:
    return [x.terms.get((k,), Fraction(0)) for x in col]


def is_polynomial_matrix(G: Matrix) -> bool:
    return all(not x or x.min_exp() >= 0 for r in G.rows for x in r)


def is_copolynomial_matrix(G: Matrix) -> bool:
    """All entries in Q[1/u]."""
    return all(not x or x.max_exp() <= 0 for r in G.rows for x in r)


def value_at_infinity(G: Matrix) -> Matrix:
    return G.map(lambda x: x.constant_term())


def value_at_zero(G: Matrix) -> Matrix:
    return G.map(lambda x: x.constant_term())


@dataclass(frozen=True)
class Birkhoff:
    """G = gminus * diag(u^exponents) * gplus, exponents listed in factor order.

    ``normalized`` records whether gminus(inf) = I could be achieved.  That is
    impossible for some inputs once an order of the exponents is fixed, so the
    factor order is chosen (descending first) to make it hold when it can.
    """

    gminus: Matrix
    exponents: Tuple[int, ...]
    gplus: Matrix
    normalized: bool

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.exponents, reverse=True))

    def middle(self) -> Matrix:
        var = _var_of(self.gminus)
        return Matrix.diag([LaurentPoly.var((var,), var, e) for e in self.exponents],
                           zero=LaurentPoly.zero((var,)))

    def product(self) -> Matrix:
        return self.gminus @ self.middle() @ self.gplus


def column_reduce(G: Matrix):
    """Return (GA, A, nu): A unimodular over Q[u], GA column reduced with top degrees nu."""
    r = G.nrows
    var = _var_of(G)
    cols = [list(c) for c in G.columns()]
    A = [list(c) for c in laurent_eye(r, var).columns()]
    for c in cols:
        if not any(c):
            raise NotInvertible("zero column")
    while True:
        nu = [_top(c) for c in cols]
        L = Matrix.from_columns([_lead(c, k) for c, k in zip(cols, nu)])
        ker = L.nullspace()
        if not ker:
            break
        a = ker[0]
        J = [j for j in range(r) if a[j]]
        j0 = max(J, key=lambda j: (nu[j], j))
        for j in J:
            if j == j0:
                continue
            f = LaurentPoly.monomial((var,), (nu[j0] - nu[j],), a[j] / a[j0])
            cols[j0] = [x + f * y for x, y in zip(cols[j0], cols[j])]
            A[j0] = [x + f * y for x, y in zip(A[j0], A[j])]
        if not any(cols[j0]):
            raise NotInvertible("columns are dependent over the Laurent ring")
    return Matrix.from_columns(cols), Matrix.from_columns(A), nu


def _order_candidates(nu: Sequence[int], exhaustive: bool):
    idx = sorted(range(len(nu)), key=lambda j: (-nu[j], j))
    yield tuple(idx)
    if not exhaustive:
        return
    seen = {tuple(nu[j] for j in idx)}
    for perm in permutations(idx):
        key = tuple(nu[j] for j in perm)
        if key in seen:
            continue
        seen.add(key)
        yield perm


def _in_parabolic(C: Matrix, nu: Sequence[int]) -> bool:
    """C maps into the stabilizer of the degree filtration: C_ij != 0 only if nu_j >= nu_i."""
    return all(not C[i, j] or nu[j] >= nu[i] for i in range(C.nrows) for j in range(C.ncols))


def birkhoff_factorize(G: Matrix, exhaustive_limit: int = 6) -> Birkhoff:
    """Factor an invertible Laurent matrix (entries LaurentPoly in one variable)."""
    r = G.nrows
    if r != G.ncols:
        raise NotInvertible("non-square matrix")
    var = _var_of(G)
    G = G.map(lambda x: lp(x, var))
    det = laurent_det(G)
    if not det.is_monomial():
        raise NotInvertible(f"determinant {det.to_str()} is not a unit of the Laurent ring")
    GA, A, nu = column_reduce(G)
    # X = GA * diag(u^-nu) lies in GL(Q[1/u])
    X = GA @ Matrix.diag([LaurentPoly.var((var,), var, -k) for k in nu], zero=LaurentPoly.zero((var,)))
    Ainv = laurent_inverse(A)
    C = value_at_infinity(X)
    for order in _order_candidates(nu, r <= exhaustive_limit):
        nu_o = [nu[j] for j in order]
        Co = Matrix.from_columns([C.col(j) for j in order])
        if _in_parabolic(Co, nu_o):
            Xo = Matrix.from_columns([X.col(j) for j in order])
            Cinv = Co.inverse().map(lambda a: LaurentPoly.const((var,), a))
            D = Matrix.diag([LaurentPoly.var((var,), var, k) for k in nu_o], zero=LaurentPoly.zero((var,)))
            Dinv = Matrix.diag([LaurentPoly.var((var,), var, -k) for k in nu_o], zero=LaurentPoly.zero((var,)))
            Cl = Co.map(lambda a: LaurentPoly.const((var,), a))
            gminus = Xo @ Cinv
            # Ainv rows reordered to match the column order of X
            Ainv_o = Matrix([Ainv.rows[j] for j in order])
            gplus = Dinv @ Cl @ D @ Ainv_o
            return Birkhoff(gminus, tuple(nu_o), gplus, True)
    order = next(_order_candidates(nu, False))
    Xo = Matrix.from_columns([X.col(j) for j in order])
    Ainv_o = Matrix([Ainv.rows[j] for j in order])
    return Birkhoff(Xo, tuple(nu[j] for j in order), Ainv_o, False)


def splitting_degrees(G: Matrix) -> Tuple[int, ...]:
    return birkhoff_factorize(G).degrees


def exponents_by_sections(G: Matrix):
    """Independent oracle: the exponent multiset from bounded-degree section counts.

    V_m = {p in Q[u]^r : every entry of G p has top degree <= m}.  If
    G = Gminus diag(u^e) Gplus then dim V_m = sum_k max(0, m - e_k + 1), so the
    number of exponents equal to m is a second difference of dim V_m.  Only
    linear algebra on coefficient vectors is used; no factorization.
    """
    var = _var_of(G)
    G = G.map(lambda x: lp(x, var))
    r = G.nrows
    hi = max(x.max_exp() for row in G.rows for x in row if x)
    # p = G^-1 (G p), so deg p <= m + top; and V_m = 0 once m + top < 0.
    top = max(x.max_exp() for row in laurent_inverse(G).rows for x in row if x)

    def dim_v(m):
        bound = m + top
        if bound < 0:
            return 0
        unknowns = [(j, d) for j in range(r) for d in range(bound + 1)]
        rows = []
        for i in range(r):
            for e in range(m + 1, hi + bound + 1):
                rows.append([G[i, j].terms.get((e - d,), Fraction(0)) for (j, d) in unknowns])
        if not rows:
            return len(unknowns)
        return len(unknowns) - Matrix.q(rows).rank()

    m = -top
    dims = {m - 2: 0, m - 1: 0}
    out = []
    while len(out) < r:
        dims[m] = dim_v(m)
        out.extend([m] * ((dims[m] - dims[m - 1]) - (dims[m - 1] - dims[m - 2])))
        m += 1
    return tuple(sorted(out, reverse=True))
