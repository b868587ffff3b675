"""Dense immutable matrices with exact field arithmetic.

Entries may be any exact field element supporting ``+ - * /`` and a zero
test via ``bool`` (Fraction, RatFunc).  Ring-valued entries (LaurentPoly)
work for the arithmetic operations but not for elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple


from ..errors import NotInvertible


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = tuple(tuple(r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            self.ncols = len(rows[0])
            if any(len(r) != self.ncols for r in rows):
                raise ValueError("ragged matrix")
        else:
            self.ncols = ncols or 0

    # construction
    @classmethod
    def q(cls, rows) -> "Matrix":
        """Matrix of Fractions from ints, Fractions or 'p/q' strings."""
        return cls([[Fraction(x) for x in r] for r in rows])

    @classmethod
    def zeros(cls, m: int, n: int, zero=Fraction(0)) -> "Matrix":
        return cls([[zero] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, entries, zero=Fraction(0)) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls([[] for _ in range(nrows or 0)], ncols=0) if nrows else cls([], 0)
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))], ncols=len(cols))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(" + repr([[str(x) for x in r] for r in self.rows]) + ")"

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows], ncols=self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)], ncols=self.nrows) if self.rows else Matrix([], 0)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.map(lambda x: x * other)

    def __rmul__(self, c):
        return self.map(lambda x: c * x)

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        t = a * b
                        acc = t if acc is None else acc + t
                row.append(acc if acc is not None else _zero_like(r, c))
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def apply(self, v: Sequence) -> tuple:
        return tuple(self.matmul(Matrix.from_columns([v])).col(0))

    def __pow__(self, k: int):
        if self.nrows != self.ncols:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = identity_like(self)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix([list(a) + list(b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix(list(self.rows) + list(other.rows), ncols=self.ncols)

    def submatrix(self, rows, cols) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    # elimination (field entries)
    def rref(self):
        """Return (R, pivots) with R in reduced row echelon form."""
        m = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for c in range(self.ncols):
            piv = next((i for i in range(pr, self.nrows) if m[i][c]), None)
            if piv is None:
                continue
            m[pr], m[piv] = m[piv], m[pr]
            inv = 1 / m[pr][c]
            m[pr] = [x * inv for x in m[pr]]
            for i in range(self.nrows):
                if i != pr and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
            pivots.append(c)
            pr += 1
            if pr == self.nrows:
                break
        return Matrix(m, ncols=self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[tuple]:
        """Basis of {x : self x = 0} as a list of column tuples."""
        R, pivots = self.rref()
        zero, one = _zero_one(self)
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for i, p in enumerate(pivots):
                v[p] = -R.rows[i][f]
            basis.append(tuple(v))
        return basis

    def column_space(self) -> List[tuple]:
        _, pivots = self.rref()
        return [self.col(j) for j in pivots]

    def det(self):
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        zero, one = _zero_one(self)
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = one
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise NotInvertible("non-square matrix")
        n = self.nrows
        R, pivots = self.hstack(identity_like(self)).rref()
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise NotInvertible("singular matrix")
        return R.submatrix(range(n), range(n, 2 * n))

    def solve(self, B: "Matrix") -> Optional["Matrix"]:
        """One solution X of self X = B, or None if inconsistent."""
        n = self.ncols
        R, pivots = self.hstack(B).rref()
        if any(p >= n for p in pivots):
            return None
        zero, _ = _zero_one(self)
        X = [[zero] * B.ncols for _ in range(n)]
        for i, p in enumerate(pivots):
            X[p] = list(R.rows[i][n:])
        return Matrix(X, ncols=B.ncols)

    def charpoly(self):
        """Characteristic polynomial det(xI - A) as a Poly (Fraction entries only)."""
        from .poly import Poly
        n = self.nrows
        # Faddeev-LeVerrier
        coeffs = [Fraction(1)]
        Mk = Matrix.zeros(n, n)
        I = Matrix.identity(n)
        c = Fraction(1)
        for k in range(1, n + 1):
            Mk = self @ Mk + I.scale(c)
            c = -(self @ Mk).trace() / k
            coeffs.append(c)
        return Poly(reversed(coeffs))

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        return cls.q(data)


def _zero_one(M: Matrix):
    for r in M.rows:
        for x in r:
            z = x - x
            try:
                return z, z + 1
            except TypeError:
                pass
    return Fraction(0), Fraction(1)


def _zero_like(r, c):
    x = r[0] if r else (c[0] if c else Fraction(0))
    return x - x


def identity_like(M: Matrix) -> Matrix:
    zero, one = _zero_one(M)
    return Matrix.identity(M.nrows, one=one, zero=zero)


def span_basis(vectors: Sequence[Sequence], dim: int) -> Matrix:
    """Matrix whose columns are a basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return Matrix([[] for _ in range(dim)], ncols=0)
    return Matrix.from_columns(Matrix.from_columns(vectors).column_space() or [], nrows=dim) \
        if Matrix.from_columns(vectors).rank() else Matrix([[] for _ in range(dim)], ncols=0)


def subspace_dim(vectors: Sequence[Sequence], dim: int) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    return Matrix.from_columns(vectors).rank()


def intersect_subspaces(A: Matrix, B: Matrix) -> Matrix:
    """Basis (columns) of colspan(A) ∩ colspan(B)."""
    n = A.nrows
    if A.ncols == 0 or B.ncols == 0:
        return Matrix([[] for _ in range(n)], ncols=0)
    K = A.hstack(-B).nullspace()
    vecs = [A.apply(k[: A.ncols]) for k in K]
    return span_basis(vecs, n)


def contains_subspace(big: Matrix, small: Matrix) -> bool:
    if small.ncols == 0:
        return True
    if big.ncols == 0:
        return small.rank() == 0
    return big.hstack(small).rank() == big.rank()
