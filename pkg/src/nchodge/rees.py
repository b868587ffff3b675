"""Rees bundle of the Deligne splitting filtration and its extension over the blown-up plane.

Coordinates: the input connection lives on the v-line (v = u at q = 1).  The
Rees bundle lives on the (v, q)-chart of the blow-up of the (u, q)-plane at
the origin, where u = v q; the other chart has coordinates (u, w) with
w = 1/v and q = u w.  The exceptional line E is {q = 0} in the first chart
and {u = 0} in the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .connections import (MeroConnection1, TwoParamConnection, amodel_at_q1, check_flatness,
                          dubrovin_pn, gauge_transform, intertwiner)
from .errors import NotExtendable, UnsupportedExtension
from .exact.birkhoff import laurent_inverse
from .exact.lattice import hermite_basis, standard_lattice
from .exact.laurent import LaurentPoly
from .exact.matrix import Matrix
from .normal import bundle_splitting, normalize_at_infinity

VQ = ("v", "q")
UQ = ("u", "q")


def _rename(x: LaurentPoly, vars=VQ) -> LaurentPoly:
    """One-variable Laurent polynomial -> the first variable of ``vars``."""
    (name,) = x.vars
    return x.substitute_monomials(vars, {name: ((1,) + (0,) * (len(vars) - 1), 1)})


def _mono(vars, exp, a=1) -> LaurentPoly:
    return LaurentPoly.monomial(vars, tuple(exp), a)


@dataclass(frozen=True)
class ReesBundle:
    """Rees bundle in the frame tau = e * A(v) * diag(q^-delta_k) * q^-twist.

    ``A`` is the splitting frame (a Laurent matrix in one variable, invertible
    over polynomials), ``splitting_degrees`` are the degrees of its columns,
    ``degrees`` is the dressing vector (normally equal to the splitting
    degrees) and ``twist`` is the scalar semisimple residue at infinity.
    """

    base: MeroConnection1
    rank: int
    splitting_degrees: Tuple[int, ...]
    degrees: Tuple[int, ...]
    twist: Fraction
    A: Matrix
    connection: TwoParamConnection
    window: str = "(-1,0]"

    def dressing(self) -> Matrix:
        return Matrix.diag([_mono(VQ, (0, -d)) for d in self.degrees], zero=LaurentPoly.zero(VQ))

    def in_input_frame(self) -> TwoParamConnection:
        """Same connection in the frame e * A D A^-1, which is e at q = 1."""
        A = self.A.map(_rename)
        Ai = laurent_inverse(A)
        return two_param_gauge(self.connection, Ai)

    def to_json(self):
        return {"rank": self.rank, "splitting_degrees": list(self.splitting_degrees),
                "degrees": list(self.degrees), "twist": str(self.twist),
                "splitting_frame": [[x.to_str() for x in r] for r in self.A.rows],
                "connection": self.connection.to_json()}


def two_param_gauge(c: TwoParamConnection, g: Matrix) -> TwoParamConnection:
    """Gauge by a Laurent matrix g: A_x -> g^-1 A_x g + g^-1 dg/dx."""
    x, y = c.vars
    gi = laurent_inverse(g)
    Ax = gi @ c.Ax @ g + gi @ g.map(lambda e: e.diff(x))
    Ay = gi @ c.Ay @ g + gi @ g.map(lambda e: e.diff(y))
    return TwoParamConnection(c.vars, Ax, Ay)


def rees_bundle(c: MeroConnection1, window: str = "(-1,0]",
                degrees: Optional[Sequence[int]] = None) -> ReesBundle:
    """Dress a splitting frame of the Deligne extension by q^-d_k.

    ``degrees`` overrides the dressing vector (the default is the splitting
    type itself); other vectors give bundles that usually fail to extend.
    """
    ext = normalize_at_infinity(c, window)
    S = ext.semisimple
    lams = {S[i, i] for i in range(S.nrows)}
    if len(lams) != 1:
        raise UnsupportedExtension("Rees dressing needs a single residue eigenvalue class at infinity")
    (lam,) = lams
    sp = bundle_splitting(ext.gauge)
    d = tuple(-x for x in sp.factor_exponents)
    delta = d if degrees is None else tuple(int(x) for x in degrees)
    if len(delta) != c.rank:
        raise ValueError("degree vector has the wrong length")
    A = sp.A.map(_rename)
    Ac = c.laurent_matrix().map(_rename)
    Ai = laurent_inverse(A)
    Asig = Ai @ Ac @ A + Ai @ A.map(lambda e: e.diff("v"))
    r = c.rank
    Av = Matrix([[Asig[i, j] * _mono(VQ, (0, delta[i] - delta[j])) for j in range(r)] for i in range(r)])
    Aq = Matrix.diag([_mono(VQ, (0, -1), -dk - lam) for dk in delta], zero=LaurentPoly.zero(VQ))
    con = TwoParamConnection(VQ, Av, Aq)
    con = TwoParamConnection(VQ, Av, Aq, checked_flat=check_flatness(con))
    return ReesBundle(c, r, d, delta, lam, sp.A, con, window)


@dataclass(frozen=True)
class ExtendabilityReport:
    extendable: bool
    exceptional_degrees: Tuple[int, ...]
    hyperbola_lattice: Matrix  # Deligne lattice along w = 0, in the untwisted Rees frame
    exceptional_frame: Matrix  # frame of the restriction to E near w = 0
    connection: Optional[TwoParamConnection] = None
    pole_orders: Optional[Dict[str, int]] = None

    def to_json(self):
        out = {"extendable": self.extendable,
               "exceptional_degrees": list(self.exceptional_degrees),
               "exceptional_frame": [[x.to_str() for x in r] for r in self.exceptional_frame.rows]}
        if self.connection is not None:
            out["connection"] = self.connection.to_json()
            out["pole_orders"] = self.pole_orders
        return out


def hyperbola_lattice(rb: ReesBundle) -> Matrix:
    """Deligne lattice at w = 0 of the Rees bundle restricted to vq = u, in the Rees frame.

    Along the hyperbola, q^-delta = u^-delta v^delta and u is constant, so after
    the constant gauge u^delta the family is the input connection in the frame
    e A(v) v^delta, for every u at once.
    """
    c = rb.base
    A = rb.A  # one variable, named like the base
    (name,) = A[0, 0].vars if A.nrows else (c.var,)
    V = (name,)
    g = A @ Matrix.diag([LaurentPoly.var(V, name, k) for k in rb.degrees], zero=LaurentPoly.zero(V))
    g = g.map(lambda e: e.substitute_monomials((c.var,), {name: ((1,), 1)}))
    ext = normalize_at_infinity(gauge_transform(c, g), rb.window)
    return Matrix.from_columns(hermite_basis([list(col) for col in ext.gauge.columns()]))


def graded_lattice(N: Matrix, delta: Sequence[int]) -> Matrix:
    """Associated graded of a lattice for the filtration by the weights ``delta``.

    In coordinates sorted by increasing weight, the Hermite basis is lower
    triangular, so the part of the lattice vanishing on weights below a is
    spanned by the columns with pivot of weight at least a; projecting those
    pivoting at weight a onto the weight-a coordinates gives the graded piece.
    """
    r = N.nrows
    order = sorted(range(r), key=lambda i: (delta[i], i))
    cols = [[col[i] for i in order] for col in N.columns()]
    H = hermite_basis(cols)
    zero = H[0][0] * 0
    blocks = [delta[i] for i in order]
    graded = [[H[j][i] if blocks[i] == blocks[j] else zero for i in range(r)] for j in range(r)]
    # undo the permutation
    back = [0] * r
    for pos, i in enumerate(order):
        back[i] = pos
    out_cols = [None] * r
    for pos, i in enumerate(order):
        out_cols[i] = [graded[pos][back[k]] for k in range(r)]
    return Matrix.from_columns(out_cols)


def _pole_order(M: Matrix, idx: int) -> int:
    worst = 0
    for row in M.rows:
        for e in row:
            if e:
                worst = max(worst, -e.min_exp(idx))
    return worst


def extend_over_blowup(rb: ReesBundle, strict: bool = False) -> ExtendabilityReport:
    N = hyperbola_lattice(rb)
    ZE = graded_lattice(N, rb.degrees)
    degs = bundle_splitting(ZE).degrees
    ok = all(x == 0 for x in degs)
    if not ok:
        if strict:
            raise NotExtendable(degs)
        return ExtendabilityReport(False, degs, N, ZE)
    if N != Matrix.from_columns(standard_lattice(rb.rank)):
        raise UnsupportedExtension("trivial on the exceptional line but the Rees frame does not extend; "
                                   "only the constant-frame pushforward is implemented")
    # push forward along v = u/q
    images = {"v": ((1, -1), 1), "q": ((0, 1), 1)}
    Av = rb.connection.Ax.map(lambda e: e.substitute_monomials(UQ, images))
    Aq = rb.connection.Ay.map(lambda e: e.substitute_monomials(UQ, images))
    inv_q = _mono(UQ, (0, -1))
    u_q2 = _mono(UQ, (1, -2))
    Au = Av.map(lambda e: e * inv_q)
    Aq2 = Aq - Av.map(lambda e: e * u_q2)
    out = TwoParamConnection(UQ, Au, Aq2)
    out = TwoParamConnection(UQ, Au, Aq2, checked_flat=check_flatness(out))
    poles = {"u": max(_pole_order(Au, 0) - 0, _pole_order(Aq2, 0)),
             "q": max(_pole_order(Au, 1), _pole_order(Aq2, 1))}
    return ExtendabilityReport(True, degs, N, ZE, out, poles)


def monomial_coefficients(M: Matrix) -> Dict[tuple, Matrix]:
    out: Dict[tuple, list] = {}
    r, s = M.shape
    for i in range(r):
        for j in range(s):
            for exp, a in M[i, j].terms.items():
                out.setdefault(exp, [[Fraction(0)] * s for _ in range(r)])[i][j] = a
    return {k: Matrix(v) for k, v in out.items()}


def two_param_constant_gauge(a: TwoParamConnection, b: TwoParamConnection) -> Optional[Matrix]:
    """Constant invertible K with K^-1 a K = b, or None."""
    if a.vars != b.vars or a.rank != b.rank:
        return None
    As = [monomial_coefficients(a.Ax), monomial_coefficients(a.Ay)]
    Bs = [monomial_coefficients(b.Ax), monomial_coefficients(b.Ay)]
    return intertwiner(As, Bs, a.rank)


def verify_amodel_reconstruction(n: int, window: str = "(-1,0]") -> bool:
    c = amodel_at_q1(n)
    rep = extend_over_blowup(rees_bundle(c, window), strict=True)
    return two_param_constant_gauge(rep.connection, dubrovin_pn(n)) is not None
