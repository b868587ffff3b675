"""Meromorphic connections on the u-line and on two-parameter planes.

A ``MeroConnection1`` is d + A(u) du on the trivial bundle, entries of A
reduced rational functions.  A ``TwoParamConnection`` is
d + A_x dx + A_y dy with Laurent polynomial entries in two named variables
(every two-parameter connection built here has poles only on xy = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .errors import NoFlatDressing, NonLaurentGauge, SingularGauge
from .exact.laurent import LaurentPoly
from .exact.matrix import Matrix
from .exact.parse import parse_rational_function, parse_laurent
from .exact.poly import Poly, RatFunc

INF = "inf"
Point = Union[Fraction, str]


def _rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return x.to_ratfunc()
    return RatFunc(x)


def rf_matrix(M: Matrix) -> Matrix:
    return M.map(_rf)


@dataclass(frozen=True)
class MeroConnection1:
    """d + A(u) du; A a square matrix of RatFunc in ``var``."""

    A: Matrix
    var: str = "u"

    def __post_init__(self):
        if not self.A.is_square():
            raise ValueError("connection matrix must be square")
        object.__setattr__(self, "A", rf_matrix(self.A))

    @property
    def rank(self) -> int:
        return self.A.nrows

    @classmethod
    def from_strings(cls, rows, var: str = "u") -> "MeroConnection1":
        return cls(Matrix([[parse_rational_function(str(s), var) for s in r] for r in rows]), var)

    @classmethod
    def log_diag(cls, residues, var: str = "u") -> "MeroConnection1":
        """d + diag(residues) du/u."""
        x = RatFunc(1) / RatFunc(Poly.x())
        return cls(Matrix.diag([x * Fraction(r) for r in residues], zero=RatFunc(0)), var)

    @classmethod
    def trivial(cls, r: int, var: str = "u") -> "MeroConnection1":
        return cls(Matrix.zeros(r, r, zero=RatFunc(0)), var)

    @classmethod
    def from_coefficients(cls, coeffs: Dict[int, Matrix], var: str = "u") -> "MeroConnection1":
        """A(u) = sum_k coeffs[k] u^k with constant matrices."""
        r = next(iter(coeffs.values())).nrows
        A = Matrix.zeros(r, r, zero=RatFunc(0))
        for k, C in coeffs.items():
            uk = RatFunc(Poly.x()) ** k
            A = A + C.map(lambda a: uk * a)
        return cls(A, var)

    def to_json(self):
        return {"rank": self.rank, "A": [[x.to_str(self.var) for x in r] for r in self.A.rows]}

    @classmethod
    def from_json(cls, data) -> "MeroConnection1":
        var = data.get("var", "u")
        c = cls.from_strings(data["A"], var)
        if "rank" in data and int(data["rank"]) != c.rank:
            raise ValueError("rank field does not match matrix size")
        return c

    def finite_poles(self):
        """Roots (in Q) and the squarefree denominator of all entries."""
        den = Poly([1])
        from .exact.poly import poly_lcm
        for r in self.A.rows:
            for x in r:
                den = poly_lcm(den, x.den)
        return den

    def is_laurent(self) -> bool:
        den = self.finite_poles()
        return not any(den.c[: den.degree])

    def laurent_matrix(self) -> Matrix:
        if not self.is_laurent():
            raise NonLaurentGauge("connection has finite poles away from u = 0")
        return self.A.map(lambda x: LaurentPoly.from_ratfunc(x, self.var))

    def direct_sum(self, other: "MeroConnection1") -> "MeroConnection1":
        r, s = self.rank, other.rank
        rows = [list(row) + [RatFunc(0)] * s for row in self.A.rows]
        rows += [[RatFunc(0)] * r + list(row) for row in other.A.rows]
        return MeroConnection1(Matrix(rows), self.var)

    def __eq__(self, other):
        return isinstance(other, MeroConnection1) and self.A == other.A

    def __hash__(self):
        return hash(self.A)


# local expansions

def series_at(r: RatFunc, point: Point, upto: int) -> Dict[int, Fraction]:
    """Laurent coefficients of r in the local coordinate at ``point`` for exponents <= upto.

    At a finite point a the coordinate is t = u - a; at infinity t = 1/u.
    Returns {} for r = 0.
    """
    if not r:
        return {}
    if point == INF:
        # r(1/t): numerator and denominator reversed with a monomial factor
        n, d = r.num, r.den
        # r(1/t) = t^(deg d - deg n) * rev(n)(t) / rev(d)(t)
        shift = d.degree - n.degree
        num = Poly(reversed(n.c))
        den = Poly(reversed(d.c))
    else:
        a = Fraction(point)
        sub = Poly([a, 1])
        num = r.num.compose(sub)
        den = r.den.compose(sub)
        shift = 0
        vn = num.valuation()
        vd = den.valuation()
        num = Poly(num.c[vn:])
        den = Poly(den.c[vd:])
        shift = vn - vd
    # now r = t^shift * num/den with den(0) != 0, num(0) != 0
    out = {}
    n_terms = upto - shift + 1
    if n_terms <= 0:
        return {}
    inv0 = 1 / den.c[0]
    q = []
    for k in range(n_terms):
        acc = num.coeff(k)
        for j in range(1, min(k, den.degree) + 1):
            acc -= den.c[j] * q[k - j]
        q.append(acc * inv0)
    for k, a in enumerate(q):
        if a:
            out[k + shift] = a
    return out


def valuation_at(r: RatFunc, point: Point) -> Optional[int]:
    if not r:
        return None
    if point == INF:
        return r.den.degree - r.num.degree
    a = Fraction(point)
    sub = Poly([a, 1])
    return r.num.compose(sub).valuation() - r.den.compose(sub).valuation()


@dataclass(frozen=True)
class PoleData:
    location: Point
    order: int
    leading: Matrix
    residue: Matrix

    def to_json(self):
        return {"at": str(self.location), "order": self.order,
                "leading": self.leading.to_json(), "residue": self.residue.to_json()}


REGULAR = None


def form_matrix_at(c: MeroConnection1, point: Point) -> Matrix:
    """Matrix B(t) with A(u) du = B(t) dt in the local coordinate t (RatFunc entries in t)."""
    if point == INF:
        inv = RatFunc(1) / RatFunc(Poly.x())
        return c.A.map(lambda x: -(x.compose(inv)) * inv * inv)
    sub = Poly([Fraction(point), 1])
    return c.A.map(lambda x: RatFunc(1) * x.num.compose(sub) / x.den.compose(sub))


def pole_data(c: MeroConnection1, at: Point):
    """Order, leading coefficient and residue of A du at the point; None if regular."""
    B = form_matrix_at(c, at)
    vals = [valuation_at(x, 0) for r in B.rows for x in r if x]
    if not vals or min(vals) >= 0:
        return REGULAR
    order = -min(vals)
    r = c.rank
    rows_l = [[Fraction(0)] * r for _ in range(r)]
    rows_r = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            s = series_at(B[i, j], 0, -1)
            rows_l[i][j] = s.get(-order, Fraction(0))
            rows_r[i][j] = s.get(-1, Fraction(0))
    lead, res = Matrix(rows_l), Matrix(rows_r)
    return PoleData(at, order, lead, res)


def gauge_transform(c: MeroConnection1, g: Matrix) -> MeroConnection1:
    """A -> g^-1 A g + g^-1 dg/du."""
    g = rf_matrix(g)
    det = g.det()
    if not det:
        raise SingularGauge("gauge matrix is singular")
    gi = g.inverse()
    dg = g.map(lambda x: x.derivative())
    return MeroConnection1(gi @ c.A @ g + gi @ dg, c.var)


def constant_gauge_equivalent(A: MeroConnection1, B: MeroConnection1) -> Optional[Matrix]:
    """A constant invertible K with K^-1 A K = B, or None.

    Solves A K = K B coefficientwise (a linear system after clearing a common
    denominator) and looks for an invertible element of the solution space.
    """
    if A.rank != B.rank:
        return None
    den = common_denominator([A.A, B.A])
    return intertwiner([coefficient_matrices(A.A, den)], [coefficient_matrices(B.A, den)], A.rank)


def common_denominator(mats) -> Poly:
    from .exact.poly import poly_lcm
    den = Poly([1])
    for M in mats:
        for row in M.rows:
            for x in row:
                den = poly_lcm(den, _rf(x).den)
    return den


def coefficient_matrices(M: Matrix, den: Poly) -> Dict[int, Matrix]:
    """den * M expanded as sum_k C_k u^k with constant C_k."""
    out: Dict[int, list] = {}
    r, s = M.shape
    for i in range(r):
        for j in range(s):
            x = _rf(M[i, j])
            p = x.num * (den // x.den)
            for k, a in enumerate(p.c):
                if a:
                    out.setdefault(k, [[Fraction(0)] * s for _ in range(r)])[i][j] = a
    return {k: Matrix(v) for k, v in out.items()}


def intertwiner(As, Bs, r: int) -> Optional[Matrix]:
    """Invertible constant K with A K = K B for each pair of coefficient dictionaries."""
    rows = []
    Z = Matrix.zeros(r, r)
    for Ad, Bd in zip(As, Bs):
        for k in sorted(set(Ad) | set(Bd)):
            A = Ad.get(k, Z)
            B = Bd.get(k, Z)
            for i in range(r):
                for j in range(r):
                    row = [Fraction(0)] * (r * r)
                    for l in range(r):
                        row[l * r + j] += A[i, l]
                        row[i * r + l] -= B[l, j]
                    rows.append(row)
    if rows:
        kern = Matrix(rows).nullspace()
    else:
        kern = [tuple(Fraction(int(a == b)) for a in range(r * r)) for b in range(r * r)]
    return invertible_element(kern, r)


def invertible_element(kern, r: int, tries: int = 30) -> Optional[Matrix]:
    """Invertible matrix in the span of the given (flattened) matrices, if one is found.

    Invertible elements form a Zariski-open set, so seeded random integer
    combinations find one unless the determinant vanishes identically on the span.
    """
    import random
    if not kern:
        return None
    mats = [Matrix([list(v[i * r:(i + 1) * r]) for i in range(r)]) for v in kern]
    for M in mats:
        if M.det():
            return M
    rng = random.Random(0)
    for _ in range(tries):
        K = Matrix.zeros(r, r)
        for M in mats:
            K = K + M.scale(Fraction(rng.randint(-1000, 1000)))
        if K.det():
            return K
    return None


# two-parameter connections

@dataclass(frozen=True)
class TwoParamConnection:
    """d + A[x] dx + A[y] dy with ``vars = (x, y)``; entries LaurentPoly in (x, y)."""

    vars: Tuple[str, str]
    Ax: Matrix
    Ay: Matrix
    checked_flat: bool = False

    @property
    def rank(self) -> int:
        return self.Ax.nrows

    def component(self, name: str) -> Matrix:
        if name == self.vars[0]:
            return self.Ax
        if name == self.vars[1]:
            return self.Ay
        raise KeyError(name)

    def curvature(self) -> Matrix:
        x, y = self.vars
        dxAy = self.Ay.map(lambda e: e.diff(x))
        dyAx = self.Ax.map(lambda e: e.diff(y))
        return dxAy - dyAx + self.Ax @ self.Ay - self.Ay @ self.Ax

    def to_json(self):
        x, y = self.vars
        return {"rank": self.rank, "vars": list(self.vars),
                "A" + x: [[e.to_str() for e in r] for r in self.Ax.rows],
                "A" + y: [[e.to_str() for e in r] for r in self.Ay.rows],
                "flat": check_flatness(self)}

    @classmethod
    def from_json(cls, data) -> "TwoParamConnection":
        vars = tuple(data.get("vars", ["u", "q"]))
        x, y = vars
        Ax = Matrix([[parse_laurent(str(s), vars) for s in r] for r in data["A" + x]])
        Ay = Matrix([[parse_laurent(str(s), vars) for s in r] for r in data["A" + y]])
        return cls(vars, Ax, Ay)

    def __eq__(self, other):
        return isinstance(other, TwoParamConnection) and self.vars == other.vars and \
            self.Ax == other.Ax and self.Ay == other.Ay

    def __hash__(self):
        return hash((self.vars, self.Ax, self.Ay))


def check_flatness(c: TwoParamConnection) -> bool:
    return c.curvature().is_zero()


def lmat(M: Matrix, vars, scale: LaurentPoly = None) -> Matrix:
    """Constant matrix -> Laurent matrix in ``vars``, optionally times a Laurent polynomial."""
    out = M.map(lambda a: LaurentPoly.const(vars, a))
    if scale is not None:
        out = out.map(lambda e: e * scale)
    return out


def flat_dressing_exponents(M1: Matrix, Gr: Matrix) -> Dict[Tuple[int, int], int]:
    """Exponents e_ij with M(q)_ij = M1_ij q^e_ij solving q M' = M - [Gr, M]."""
    r = M1.nrows
    for i in range(r):
        for j in range(r):
            if i != j and Gr[i, j]:
                raise NoFlatDressing("grading operator must be diagonal")
    out = {}
    for i in range(r):
        for j in range(r):
            if M1[i, j]:
                e = 1 - (Gr[i, i] - Gr[j, j])
                if e.denominator != 1:
                    raise NoFlatDressing(f"entry ({i},{j}) needs the non-integral power q^{e}")
                out[(i, j)] = int(e)
    return out


def build_dubrovin(M1: Matrix, Gr: Matrix, n: Optional[int] = None, dress: bool = True) -> TwoParamConnection:
    """A_u = u^-2 M(q) + u^-1 Gr, A_q = -u^-1 q^-1 M(q), with M(1) = M1 and M(q) flat.

    ``dress=False`` keeps M = M1 constant (generally not flat; used as a contrast).
    """
    vars = ("u", "q")
    r = M1.nrows
    if n is not None:
        for i in range(r):
            if (2 * Gr[i, i]).denominator != 1:
                raise NoFlatDressing("grading entries must be half-integers")
    exps = flat_dressing_exponents(M1, Gr) if dress else {k: 0 for k in
                                                          ((i, j) for i in range(r) for j in range(r)) if M1[k]}
    Mq = Matrix([[LaurentPoly.monomial(vars, (0, exps[(i, j)]), M1[i, j]) if (i, j) in exps
                  else LaurentPoly.zero(vars) for j in range(r)] for i in range(r)])
    u_2 = LaurentPoly.monomial(vars, (-2, 0))
    u_1 = LaurentPoly.monomial(vars, (-1, 0))
    uq = LaurentPoly.monomial(vars, (-1, -1), -1)
    Au = Mq.map(lambda e: e * u_2) + lmat(Gr, vars, u_1)
    Aq = Mq.map(lambda e: e * uq)
    c = TwoParamConnection(vars, Au, Aq)
    flat = check_flatness(c)
    return TwoParamConnection(vars, Au, Aq, checked_flat=flat)


def pn_quantum_data(n: int) -> Tuple[Matrix, Matrix]:
    """(M1, Gr) for projective n-space: M1 = -(n+1) * (H quantum-multiplied) at q = 1."""
    r = n + 1
    H = [[Fraction(0)] * r for _ in range(r)]
    for i in range(n):
        H[i + 1][i] = Fraction(1)
    H[0][n] = Fraction(1)
    M1 = Matrix(H).scale(Fraction(-(n + 1)))
    Gr = Matrix.diag([Fraction(2 * i - n, 2) for i in range(r)])
    return M1, Gr


def dubrovin_pn(n: int) -> TwoParamConnection:
    M1, Gr = pn_quantum_data(n)
    return build_dubrovin(M1, Gr, n)


def slice_at(c: TwoParamConnection, name: str, value) -> MeroConnection1:
    """Restrict to {name = value} (value nonzero rational): one-variable connection in the other variable."""
    other = c.vars[1] if name == c.vars[0] else c.vars[0]
    M = c.component(other).map(lambda e: e.evaluate(name, value))
    return MeroConnection1(M.map(lambda e: e.to_ratfunc()), other)


def amodel_at_q1(n: int) -> MeroConnection1:
    return slice_at(dubrovin_pn(n), "q", 1)


def restrict_to_line(c: TwoParamConnection, v) -> MeroConnection1:
    """Pull back along u = v q (first variable = v * second); result is a connection in q."""
    v = Fraction(v)
    if v == 0:
        raise ValueError("slope must be nonzero")
    x, y = c.vars
    vars1 = (y,)
    images = {x: ((1,), v), y: ((1,), 1)}
    Ax = c.Ax.map(lambda e: e.substitute_monomials(vars1, images))
    Ay = c.Ay.map(lambda e: e.substitute_monomials(vars1, images))
    # du = v dq
    M = Ax.map(lambda e: e * v) + Ay
    return MeroConnection1(M.map(lambda e: e.to_ratfunc()), y)


def connection_from_coeffs(leading: Matrix, residue: Matrix, var: str = "u") -> MeroConnection1:
    """d + (u^-2 leading + u^-1 residue) du."""
    return MeroConnection1.from_coefficients({-2: leading, -1: residue}, var)
