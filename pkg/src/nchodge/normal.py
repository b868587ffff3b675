"""Normal forms at u = infinity, logarithmic extensions and their splitting types.

Everything here works in the coordinate t = 1/u with the operator
theta = t d/dt, so the connection reads theta + C(t) with C(t) = t B(t) where
A(u) du = B(t) dt.  Frames are written as f = e * g(t) with e the trivial
frame of the input, and gauges act by C -> g^-1 C g + g^-1 theta(g).

Supported class: A(u) has poles only at u = 0 and u = infinity, so every
matrix in sight is a Laurent matrix in t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .connections import MeroConnection1
from .errors import (IrregularAtInfinity, NCHodgeError, NonLaurentGauge, NotQuasiUnipotent,
                     NotSpecial)
from .exact.birkhoff import birkhoff_factorize, laurent_inverse, value_at_infinity
from .exact.jordan import eigen_basis_split, jordan_chevalley, jordan_nilpotent, rational_spectrum
from .exact.lattice import NotFullLattice, hermite_basis, standard_lattice
from .exact.laurent import LaurentPoly
from .exact.matrix import Matrix

T = ("t",)
WINDOWS = ("(-1,0]", "[0,1)")


def _zero():
    return LaurentPoly.zero(T)


def _const(a):
    return LaurentPoly.const(T, a)


def _tpow(k):
    return LaurentPoly.var(T, "t", k)


def lconst(M: Matrix) -> Matrix:
    return M.map(_const)


def ldiag(entries) -> Matrix:
    return Matrix.diag(list(entries), zero=_zero())


def theta(x: LaurentPoly) -> LaurentPoly:
    return x.euler("t")


def theta_matrix(g: Matrix) -> Matrix:
    return g.map(theta)


def coefficient(M: Matrix, k: int) -> Matrix:
    return M.map(lambda x: x.terms.get((k,), Fraction(0)))


def min_exponent(M: Matrix) -> int:
    vals = [x.min_exp() for r in M.rows for x in r if x]
    return min(vals) if vals else 0


def max_exponent(M: Matrix) -> int:
    vals = [x.max_exp() for r in M.rows for x in r if x]
    return max(vals) if vals else 0


def theta_form_at_infinity(c: MeroConnection1) -> Matrix:
    """C(t) = t B(t) for the connection written near u = infinity."""
    try:
        A = c.laurent_matrix()
    except NonLaurentGauge:
        raise
    # A(u) du with u = 1/t, du = -dt/t^2, so theta-form is -A(1/t)/t
    images = {c.var: ((-1,), 1)}
    return A.map(lambda x: -(x.substitute_monomials(T, images)) * _tpow(-1))


def apply_gauge(C: Matrix, g: Matrix) -> Matrix:
    gi = laurent_inverse(g)
    return gi @ C @ g + gi @ theta_matrix(g)


def u_matrix(g: Matrix, var: str = "u") -> Matrix:
    """Rewrite a Laurent matrix in t as one in u = 1/t."""
    return g.map(lambda x: x.substitute_monomials((var,), {"t": ((-1,), 1)}))


# regular singularity and the log lattice

def levelt_lattice(C: Matrix, budget: Optional[int] = None) -> Matrix:
    """Smallest theta-stable lattice containing Q[t]^r (Gerard-Levelt saturation)."""
    r = C.nrows
    budget = r + 1 if budget is None else budget
    L = standard_lattice(r)
    for _ in range(budget + 1):
        images = []
        for v in L:
            tv = [theta(x) for x in v]
            Cv = C.apply(v)
            images.append([a + b for a, b in zip(tv, Cv)])
        try:
            L2 = hermite_basis(L + images)
        except NotFullLattice as e:
            raise IrregularAtInfinity(str(e)) from None
        if L2 == L:
            return Matrix.from_columns(L)
        L = L2
    raise IrregularAtInfinity(f"lattice saturation did not stabilize within {budget} steps")


@dataclass(frozen=True)
class LatticeExtension:
    """Extension frame f = e * gauge(t) at the point, t the local coordinate there."""

    point: str
    gauge: Matrix  # Laurent in t
    theta_form: Matrix  # connection matrix of theta in the frame f (polynomial in t)
    residue: Matrix
    semisimple: Matrix
    nilpotent: Matrix
    window: str = "(-1,0]"

    def gauge_u(self) -> Matrix:
        return u_matrix(self.gauge)

    def to_json(self):
        return {"point": self.point, "window": self.window,
                "gauge": [[x.to_str() for x in r] for r in self.gauge.rows],
                "residue": self.residue.to_json(), "S": self.semisimple.to_json(),
                "N": self.nilpotent.to_json()}


def _in_window(lam: Fraction, window: str) -> bool:
    if window == "(-1,0]":
        return -1 < lam <= 0
    if window == "[0,1)":
        return 0 <= lam < 1
    raise ValueError(f"unknown window {window!r}")


def _is_polynomial(M: Matrix) -> bool:
    return all(not x or x.min_exp() >= 0 for r in M.rows for x in r)


def normalize_at_infinity(c: MeroConnection1, window: str = "(-1,0]") -> LatticeExtension:
    """Deligne extension at infinity with residue eigenvalues in the window."""
    if window not in WINDOWS:
        raise ValueError(f"window must be one of {WINDOWS}")
    C = theta_form_at_infinity(c)
    g = levelt_lattice(C)
    C = apply_gauge(C, g)
    if not _is_polynomial(C):
        raise IrregularAtInfinity("saturated lattice is not logarithmic")
    # shearing: move one eigenvalue class at a time by one step toward the window
    guard = 0
    while True:
        R0 = coefficient(C, 0)
        spec = rational_spectrum(R0)
        bad = [lam for lam in sorted(spec) if not _in_window(lam, window)]
        if not bad:
            break
        guard += 1
        if guard > 10000:
            raise NCHodgeError("shearing did not terminate")
        P, blocks = eigen_basis_split(R0)
        Pl = lconst(P)
        C = apply_gauge(C, Pl)
        g = g @ Pl
        lam = bad[0]
        too_high = lam > 0 if window == "(-1,0]" else lam >= 1
        step = -1 if too_high else 1
        shifts = []
        for mu, d in blocks:
            shifts.extend([step if mu == lam else 0] * d)
        D = ldiag([_tpow(m) for m in shifts])
        C = apply_gauge(C, D)
        g = g @ D
        if not _is_polynomial(C):
            raise IrregularAtInfinity("shearing produced a pole; input outside the supported class")
    # make the semisimple part diagonal
    R0 = coefficient(C, 0)
    P, _ = eigen_basis_split(R0)
    Pl = lconst(P)
    C = apply_gauge(C, Pl)
    g = g @ Pl
    R = coefficient(C, 0)
    S, N = jordan_chevalley(R)
    return LatticeExtension("inf", g, C, R, S, N, window)


def monodromy_log_nilpotent(c: MeroConnection1, window: str = "(-1,0]") -> Matrix:
    """Nilpotent part of the normalized residue at infinity.

    The logarithm of the monodromy is a nonzero multiple of a conjugate of
    this matrix; weight filtrations only see its Jordan type.
    """
    return normalize_at_infinity(c, window).nilpotent


# Poincare-Dulac gauge

def sylvester_solve(R: Matrix, k: int, rhs: Matrix) -> Matrix:
    """Solve (R + k) X - X R = rhs."""
    r = R.nrows
    rows = []
    b = []
    for i in range(r):
        for j in range(r):
            row = [Fraction(0)] * (r * r)
            for l in range(r):
                row[l * r + j] += R[i, l]
                row[i * r + l] -= R[l, j]
            row[i * r + j] += k
            rows.append(row)
            b.append([rhs[i, j]])
    X = Matrix(rows).solve(Matrix(b))
    if X is None:
        raise NCHodgeError("resonant residue: Poincare-Dulac step has no solution")
    return Matrix([[X[i * r + j, 0] for j in range(r)] for i in range(r)])


def poincare_dulac(C: Matrix, order: int) -> Matrix:
    """Polynomial P(t) = I + ... + P_order t^order with P^-1 C P + P^-1 theta P = C(0) + O(t^(order+1))."""
    r = C.nrows
    R = coefficient(C, 0)
    Cs = [coefficient(C, k) for k in range(order + 1)]
    Ps = [Matrix.identity(r)]
    for k in range(1, order + 1):
        acc = Matrix.zeros(r, r)
        for j in range(k):
            acc = acc + Cs[k - j] @ Ps[j]
        Ps.append(sylvester_solve(R, k, -acc))
    P = Matrix.zeros(r, r, zero=_zero())
    for k, Pk in enumerate(Ps):
        P = P + Pk.map(lambda a: LaurentPoly.monomial(T, (k,), a))
    return P


# splitting types

@dataclass(frozen=True)
class Splitting:
    """Bundle on P^1: trivial frame e on the u-chart, frame f = e * g at infinity.

    With H = g^-1 (as a function of u) = X diag(u^x) A^-1, X in GL(Q[1/u])
    and A in GL(Q[u]), the frame sigma = e A splits the bundle and
    sigma_k spans a line bundle of degree -x_k.
    """

    degrees: Tuple[int, ...]
    factor_exponents: Tuple[int, ...]
    X: Matrix
    A: Matrix
    normalized: bool


def bundle_splitting(g_t: Matrix) -> Splitting:
    G = u_matrix(g_t)
    H = laurent_inverse(G)
    b = birkhoff_factorize(H)
    A = laurent_inverse(b.gplus)
    degs = tuple(sorted((-x for x in b.exponents), reverse=True))
    return Splitting(degs, b.exponents, b.gminus, A, b.normalized)


def deligne_splitting_type(c: MeroConnection1, window: str = "(-1,0]") -> Tuple[int, ...]:
    if not c.is_laurent():
        raise NonLaurentGauge("finite singular points other than u = 0")
    ext = normalize_at_infinity(c, window)
    return bundle_splitting(ext.gauge).degrees


# skewed extension

@dataclass(frozen=True)
class SkewedExtension:
    lattice: Matrix  # HNF basis in t, columns in the trivial frame
    shifts: Tuple[int, ...]
    weights: Tuple[int, ...]
    splitting: Splitting

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.splitting.degrees

    @property
    def special(self) -> bool:
        return all(d == 0 for d in self.degrees)


def adapted_jordan_basis(S: Matrix, N: Matrix):
    """Constant basis B, eigenvalue per column, weight (center 0) per column.

    S must be diagonal; chains of N are taken inside each eigenvalue block.
    """
    r = S.nrows
    lams = [S[i, i] for i in range(r)]
    cols: List[tuple] = [None] * 0
    lam_of: List[Fraction] = []
    wts: List[int] = []
    for lam in sorted(set(lams)):
        idx = [i for i in range(r) if lams[i] == lam]
        Nb = N.submatrix(idx, idx)
        sizes, B = jordan_nilpotent(Nb)
        pos = 0
        for s in sizes:
            for k in range(s):
                v = [Fraction(0)] * r
                col = B.col(pos + k)
                for a, i in zip(col, idx):
                    v[i] = a
                cols.append(tuple(v))
                lam_of.append(lam)
                wts.append(-(s - 1) + 2 * k)
            pos += s
    return Matrix.from_columns(cols), lam_of, wts


def skewed_extension(c: MeroConnection1, window: str = "(-1,0]") -> SkewedExtension:
    """Extension at infinity matching the weight filtration of the residue nilpotent.

    In the normal-form frame e g P (where theta acts by the constant residue
    R = S + N), the Jordan chain vector of weight w and eigenvalue lam is
    rescaled by t^(w/2 - lam); those exponents must be integers.
    """
    ext = normalize_at_infinity(c, window)
    S, N = ext.semisimple, ext.nilpotent
    if not all(S[i, j] == 0 for i in range(S.nrows) for j in range(S.ncols) if i != j):
        raise NotQuasiUnipotent("semisimple part is not diagonal")
    B, lams, wts = adapted_jordan_basis(S, N)
    shifts = []
    for lam, w in zip(lams, wts):
        s = Fraction(w, 2) - lam
        if s.denominator != 1:
            raise NotQuasiUnipotent(f"eigenvalue {lam} with weight {w} is not compatible with a sign-twisted unipotent monodromy")
        shifts.append(int(s))
    g = ext.gauge
    gi = laurent_inverse(g)
    val_g, val_gi = min_exponent(g), min_exponent(gi)
    order = max(0, max(shifts) - min(shifts) - val_g - val_gi)
    P = poincare_dulac(ext.theta_form, order)
    Phi = g @ P @ lconst(B) @ ldiag([_tpow(s) for s in shifts])
    a = max(shifts) - val_gi
    gens = [list(col) for col in Phi.columns()] + standard_lattice(c.rank, power=a)
    L = Matrix.from_columns(hermite_basis(gens))
    return SkewedExtension(L, tuple(shifts), tuple(wts), bundle_splitting(L))


def is_special(c: MeroConnection1, window: str = "(-1,0]") -> bool:
    return skewed_extension(c, window).special


def canonical_psi(c: MeroConnection1, unit: Sequence, window: str = "(-1,0]") -> Tuple[Fraction, ...]:
    """Value at infinity, in the skewed frame, of the global section equal to ``unit`` at u = 0."""
    sk = skewed_extension(c, window)
    if not sk.special:
        raise NotSpecial(sk.degrees)
    sp = sk.splitting
    A0 = sp.A.map(lambda x: x.constant_term())  # polynomial in u, value at u = 0
    coeffs = A0.inverse().apply([Fraction(x) for x in unit])
    Xinf = value_at_infinity(sp.X)
    return tuple(Xinf.apply(coeffs))
