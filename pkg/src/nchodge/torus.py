"""Laurent potentials on algebraic tori: Newton polytopes, Kouchnirenko numbers,
truncated twisted de Rham cohomology and one-variable Brieskorn connections."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .connections import MeroConnection1
from .errors import DegenerateFaces, NCHodgeError, NotConvenient, WindowTooSmall
from .exact.laurent import LaurentPoly
from .exact.matrix import Matrix
from .exact.parse import parse_laurent, parse_tree, variables_of
from .exact.poly import Poly, RatFunc, squarefree
from .exact.sparse import Echelon

DEFAULT_MAX_WINDOW = 8


def torus_vars(n: int) -> Tuple[str, ...]:
    return ("z",) if n == 1 else tuple(f"z{i}" for i in range(1, n + 1))


def givental_potential(n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("n must be at least 1")
    vars = torus_vars(n)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = 1
        terms[tuple(e)] = Fraction(1)
    terms[(-1,) * n] = Fraction(1)
    return LaurentPoly(vars, terms)


def parse_potential(text: str) -> LaurentPoly:
    names = sorted(variables_of(parse_tree(text)))
    if not names:
        raise NCHodgeError("potential has no variables")
    if names == ["z"]:
        vars = ("z",)
    else:
        idx = []
        for s in names:
            if not (s.startswith("z") and s[1:].isdigit()):
                raise NCHodgeError(f"torus variables are z or z1..zn, got {s!r}")
            idx.append(int(s[1:]))
        vars = torus_vars(max(idx)) if max(idx) > 1 else ("z1",)
    return parse_laurent(text, vars)


def potential_to_json(w: LaurentPoly):
    return {"n": w.nvars, "terms": [{"exp": list(e), "coef": str(a)} for e, a in sorted(w.terms.items())]}


def potential_from_json(data) -> LaurentPoly:
    n = int(data["n"])
    return LaurentPoly(torus_vars(n), {tuple(int(x) for x in t["exp"]): Fraction(str(t["coef"]))
                                       for t in data["terms"]})


def transform_exponents(w: LaurentPoly, M: Sequence[Sequence[int]]) -> LaurentPoly:
    """Monomial change of variables: exponent a -> M a."""
    n = w.nvars
    out = {}
    for e, a in w.terms.items():
        out[tuple(sum(M[i][j] * e[j] for j in range(n)) for i in range(n))] = a
    return LaurentPoly(w.vars, out)


# Newton polytope

@dataclass(frozen=True)
class NewtonPolytope:
    vertices: Tuple[Tuple[int, ...], ...]
    volume: int  # n! times the Euclidean volume
    facets: Tuple[Tuple[Tuple[int, ...], ...], ...] = field(default=())  # simplices of a facet triangulation
    contains_origin_inside: bool = False


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    return int(Matrix.q([list(r) for r in rows]).det()) if rows else 1


def _facet_normal(pts: Sequence[Sequence[int]]) -> List[int]:
    """Integer normal of the hyperplane through n affinely independent points."""
    n = len(pts[0])
    diffs = [[p[i] - pts[0][i] for i in range(n)] for p in pts[1:]]
    normal = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in diffs]
        normal.append((-1) ** i * _int_det(minor))
    return normal


def newton_polytope(w: LaurentPoly) -> NewtonPolytope:
    pts = sorted(set(e for e, a in w.terms.items() if a))
    n = w.nvars
    if n == 1:
        lo, hi = pts[0][0], pts[-1][0]
        verts = ((lo,), (hi,)) if lo != hi else ((lo,),)
        return NewtonPolytope(verts, hi - lo, (((lo,),), ((hi,),)), lo < 0 < hi)
    from scipy.spatial import ConvexHull, QhullError
    try:
        hull = ConvexHull(pts)
    except (QhullError, ValueError):
        return NewtonPolytope(tuple(pts), 0, (), False)
    verts = tuple(pts[i] for i in sorted(hull.vertices))
    centroid = [Fraction(sum(v[i] for v in verts), len(verts)) for i in range(n)]
    facets = []
    inside = True
    for simplex in hull.simplices:
        fpts = [pts[i] for i in simplex]
        normal = _facet_normal(fpts)
        if not any(normal):
            continue
        side = sum(normal[i] * (centroid[i] - fpts[0][i]) for i in range(n))
        if side > 0:
            normal = [-x for x in normal]
        at_origin = sum(normal[i] * (0 - fpts[0][i]) for i in range(n))
        if at_origin >= 0:
            inside = False
        facets.append(tuple(fpts))
    vol = 0
    if inside:
        for f in facets:
            vol += abs(_int_det(f))
    else:
        # cone from a vertex instead of the origin
        apex = verts[0]
        for f in facets:
            if apex in f:
                continue
            vol += abs(_int_det([[p[i] - apex[i] for i in range(n)] for p in f]))
    return NewtonPolytope(verts, vol, tuple(facets), inside)


def _edge_polynomial(w: LaurentPoly, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = len(a)
    d = [b[i] - a[i] for i in range(n)]
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    step = [x // g for x in d]
    return Poly([w.terms.get(tuple(a[i] + k * step[i] for i in range(n)), 0) for k in range(g + 1)])


def check_nondegenerate(w: LaurentPoly, poly: Optional[NewtonPolytope] = None) -> None:
    """Face-by-face check for n <= 2: every edge polynomial must be squarefree."""
    n = w.nvars
    if n == 1:
        return
    if n > 2:
        raise DegenerateFaces("nondegeneracy is only checked for n <= 2; assert it explicitly")
    poly = poly or newton_polytope(w)
    for f in poly.facets:
        p = _edge_polynomial(w, f[0], f[1])
        if p.degree > 1 and not squarefree(p):
            raise DegenerateFaces(f"edge {f[0]}--{f[1]} has a repeated root: {p.to_str('t')}")


def kouchnirenko_number(w: LaurentPoly, assert_nondegenerate: bool = False) -> int:
    poly = newton_polytope(w)
    if not poly.contains_origin_inside:
        raise NotConvenient("the Newton polytope does not contain 0 in its interior")
    if not assert_nondegenerate:
        check_nondegenerate(w, poly)
    return poly.volume


# twisted de Rham complex on Laurent forms

@dataclass(frozen=True)
class KoszulTruncation:
    window: int  # half-width of the exponent box
    dims: Tuple[int, ...]
    stabilized: bool
    history: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_json(self):
        return {"window": self.window, "dims": list(self.dims), "stabilized": self.stabilized,
                "history": [{"window": k, "dims": list(d)} for k, d in self.history]}


def _box(n: int, k: int):
    return product(range(-k, k + 1), repeat=n)


def twisted_differential(w: LaurentPoly, c1, c2, m: Tuple[int, ...], I: Tuple[int, ...]) -> Dict:
    """(c1 d + c2 dw^) applied to z^m dz_I/z_I, as a sparse vector keyed by (m, J)."""
    n = w.nvars
    out: Dict = {}
    for j in range(n):
        if j in I:
            continue
        J = tuple(sorted(I + (j,)))
        sign = -1 if sum(1 for i in I if i < j) % 2 else 1
        if c1 and m[j]:
            key = (m, J)
            out[key] = out.get(key, 0) + sign * c1 * m[j]
        if c2:
            for a, ca in w.terms.items():
                if a[j]:
                    mm = tuple(x + y for x, y in zip(m, a))
                    key = (mm, J)
                    out[key] = out.get(key, 0) + sign * c2 * ca * a[j]
    return {k: v for k, v in out.items() if v}


def _support_radius(w: LaurentPoly) -> int:
    return max(max(abs(x) for x in e) for e in w.terms) if w.terms else 0


def koszul_dims_at(w: LaurentPoly, c1, c2, k: int) -> Tuple[int, ...]:
    """Cohomology dimensions of the window-k truncation.

    H^a is approximated by cycles supported in the box of half-width k modulo
    boundaries of forms from a slightly larger box that land in the same box.
    """
    n = w.nvars
    c1, c2 = Fraction(c1), Fraction(c2)
    k2 = k + _support_radius(w)
    box = list(_box(n, k))
    big = list(_box(n, k2))
    inside = lambda m: all(-k <= x <= k for x in m)
    dims = []
    for a in range(n + 1):
        forms = [(m, I) for I in combinations(range(n), a) for m in box]
        e = Echelon()
        for m, I in forms:
            e.add(twisted_differential(w, c1, c2, m, I))
        cycles = len(forms) - e.rank
        if a == 0:
            dims.append(cycles)
            continue
        full, outside = Echelon(), Echelon()
        for I in combinations(range(n), a - 1):
            for m in big:
                v = twisted_differential(w, c1, c2, m, I)
                full.add(v)
                outside.add({key: x for key, x in v.items() if not inside(key[0])})
        dims.append(cycles - (full.rank - outside.rank))
    return tuple(dims)


def default_max_window() -> int:
    try:
        return int(os.environ.get("NCHODGE_WINDOW", DEFAULT_MAX_WINDOW))
    except ValueError:
        return DEFAULT_MAX_WINDOW


def twisted_derham_dims(w: LaurentPoly, c1, c2, max_window: Optional[int] = None,
                        start: int = 1) -> KoszulTruncation:
    """Grow the window until two consecutive enlargements leave every dimension unchanged."""
    if w.nvars > 3:
        raise NCHodgeError("twisted de Rham truncation is limited to n <= 3")
    max_window = max_window or default_max_window()
    hist = []
    for k in range(start, max_window + 1):
        hist.append((k, koszul_dims_at(w, c1, c2, k)))
        if len(hist) >= 3 and hist[-1][1] == hist[-2][1] == hist[-3][1]:
            k0, dims = hist[-3]
            return KoszulTruncation(k0, dims, True, tuple(hist))
    raise WindowTooSmall(f"no stabilization up to window {max_window}: {hist}")


# one-variable Brieskorn lattice

def brieskorn_window(w: LaurentPoly) -> Tuple[int, int]:
    exps = [e[0] for e in w.terms]
    a, b = -min(exps), max(exps)
    return 1 - a, b


def brieskorn_reduce(w: LaurentPoly, form: Dict[int, Poly]) -> Dict[int, Poly]:
    """Reduce sum_m p_m(u) z^m dz/z into the window basis modulo (u d - dw^).

    Relation for each k: sum_j j c_j z^(k+j) = u k z^k.  Exponents above the
    window are lowered with the top term, those below raised with the bottom
    term; neither step leaves the opposite side of the window.
    """
    lo, hi = brieskorn_window(w)
    a, b = 1 - lo, hi
    coeffs = {e[0]: c for e, c in w.terms.items()}
    cur = {m: p for m, p in form.items() if p}
    uvar = Poly([0, 1])
    guard = 0
    while True:
        out = [m for m in cur if m > hi or m < lo]
        if not out:
            return cur
        guard += 1
        if guard > 100000:
            raise NCHodgeError("Brieskorn reduction did not terminate")
        top = max(out)
        m = top if top > hi else min(out)
        p = cur.pop(m)
        if m > hi:
            k, lead = m - b, b
        else:
            k, lead = m + a, -a
        scale = Fraction(1) / (lead * coeffs[lead])
        # z^m = scale * (u k z^k - sum_{j != lead} j c_j z^(k+j))
        adds = {k: uvar * (k * scale)}
        for j, cj in coeffs.items():
            if j != lead and j:
                adds[k + j] = adds.get(k + j, Poly()) + Poly([-j * cj * scale])
        for mm, q in adds.items():
            s = cur.get(mm, Poly()) + p * q
            if s:
                cur[mm] = s
            else:
                cur.pop(mm, None)


def brieskorn_connection_1d(w: LaurentPoly) -> MeroConnection1:
    """Connection matrix of d/du + u^-2 (w .) + u^-1 G on the window basis z^m dz/z, G = -1/2."""
    if w.nvars != 1:
        raise NCHodgeError("Brieskorn connection is implemented for one variable")
    r = kouchnirenko_number(w)
    lo, hi = brieskorn_window(w)
    basis = list(range(lo, hi + 1))
    assert len(basis) == r
    u2 = Poly([0, 0, 1])
    cols = []
    for m in basis:
        prod = {m + e[0]: Poly([c]) for e, c in w.terms.items()}
        red = brieskorn_reduce(w, prod)
        col = []
        for m2 in basis:
            entry = RatFunc(red.get(m2, Poly()), u2)
            if m2 == m:
                entry = entry + RatFunc(Poly([Fraction(-1, 2)]), Poly([0, 1]))
            col.append(entry)
        cols.append(col)
    return MeroConnection1(Matrix.from_columns(cols), "u")


def brieskorn_basis(w: LaurentPoly) -> List[int]:
    lo, hi = brieskorn_window(w)
    return list(range(lo, hi + 1))
