"""Compactified one-variable Landau-Ginzburg models f: P^1 -> P^1.

Line bundles on P^1 are written as phi * h with phi a fixed rational
function absorbing every divisor point other than 0 and infinity, and h a
Laurent polynomial in z.  In these coordinates a bundle is just the pair
(lo, hi): sections over {z != inf} are the h with exponents >= lo, sections
over {z != 0} those with exponents <= hi; the degree is hi - lo.

The complexes are two-term, E0 -> E1, and the differential sends z^k to
z^k * (c1 (k M1 + M0) + c2 K) for Laurent polynomials M1, M0, K.
Cohomology is computed from the Cech double complex on the two charts,
truncated to exponents in [-N, N], with N grown until the answer is stable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CritMeetsHorizontal, NCHodgeError, NotTame, WindowTooSmall
from .exact.laurent import LaurentPoly
from .exact.parse import parse_rational_function
from .exact.poly import Poly, RatFunc, squarefree
from .exact.sparse import Echelon
from .weights import HodgeTable

Z = ("z",)
INF = "inf"
DEFAULT_MAX_WINDOW = 40


def _lp(coeffs: Dict[int, Fraction]) -> LaurentPoly:
    return LaurentPoly(Z, {(k,): Fraction(a) for k, a in coeffs.items() if a})


def _poly_to_lp(p: Poly, shift: int = 0) -> LaurentPoly:
    return _lp({k + shift: a for k, a in enumerate(p.c)})


@dataclass(frozen=True)
class P1LineBundle:
    lo: int
    hi: int

    @property
    def degree(self) -> int:
        return self.hi - self.lo

    def twist(self, at_zero: int = 0, at_inf: int = 0) -> "P1LineBundle":
        """Tensor with O(at_zero [0] + at_inf [inf])."""
        return P1LineBundle(self.lo - at_zero, self.hi + at_inf)


@dataclass(frozen=True)
class P1SheafComplex:
    E0: P1LineBundle
    E1: P1LineBundle
    M1: LaurentPoly  # c1 part, coefficient of k
    M0: LaurentPoly  # c1 part, constant
    K: LaurentPoly   # c2 part
    label: str = ""

    def multiplier(self, k: int, c1, c2) -> LaurentPoly:
        return (self.M1 * k + self.M0) * c1 + self.K * c2

    def maps_charts_to_charts(self) -> bool:
        """The differential sends chart sections to chart sections.

        Checked on the monomials near the chart boundaries, where a failure
        would first appear; away from them the exponent shifts only help.
        """
        R = max([abs(e[0]) for p in (self.M1, self.M0, self.K) for e in p.terms] + [0]) + 2
        for c1, c2 in ((1, 0), (0, 1)):
            for k in range(self.E0.lo, self.E0.lo + R):
                m = self.multiplier(k, c1, c2)
                if m and k + m.min_exp() < self.E1.lo:
                    return False
            for k in range(self.E0.hi - R, self.E0.hi + 1):
                m = self.multiplier(k, c1, c2)
                if m and k + m.max_exp() > self.E1.hi:
                    return False
        return True

    def to_json(self):
        return {"label": self.label,
                "terms": [{"lo": self.E0.lo, "hi": self.E0.hi, "degree": self.E0.degree},
                          {"lo": self.E1.lo, "hi": self.E1.hi, "degree": self.E1.degree}],
                "M1": self.M1.to_str(), "M0": self.M0.to_str(), "K": self.K.to_str()}


Point = Union[Fraction, str]


@dataclass(frozen=True)
class P1Model:
    f: RatFunc
    horizontal: Tuple[Point, ...] = ()
    text: str = ""

    @classmethod
    def parse(cls, text: str, horizontal: Sequence = ()) -> "P1Model":
        f = parse_rational_function(text, "z")
        hs = tuple(INF if str(h).lower() in ("inf", "oo", "infinity") else Fraction(str(h)) for h in horizontal)
        return cls(f, hs, text)

    @property
    def num(self) -> Poly:
        return self.f.num

    @property
    def den(self) -> Poly:
        return self.f.den

    def pole_at_infinity(self) -> int:
        return max(0, self.num.degree - self.den.degree)

    def pole_at_zero(self) -> bool:
        return self.den.coeff(0) == 0

    def den_star(self) -> Poly:
        """Monic denominator with the factor z removed (finite nonzero poles)."""
        d = self.den
        while d.coeff(0) == 0 and d.degree > 0:
            d = Poly(d.c[1:])
        return d.monic()

    def hor_star(self) -> Poly:
        p = Poly([1])
        for h in self.horizontal:
            if h != INF and h != 0:
                p = p * Poly([-h, 1])
        return p

    def vertical_count(self) -> int:
        return self.den.degree + self.pole_at_infinity()

    def in_D(self, point) -> bool:
        if point == 0:
            return self.pole_at_zero() or any(h == 0 for h in self.horizontal)
        return self.pole_at_infinity() > 0 or INF in self.horizontal

    def boundary_count(self) -> int:
        return self.vertical_count() + len(self.horizontal)

    def derivative_numerator(self) -> Poly:
        """num' den - num den'; f' = this / den^2."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def critical_points_in_Y(self) -> int:
        """Critical points of f away from the boundary, with multiplicity (finite part plus infinity)."""
        p = self.derivative_numerator()
        count = p.degree
        # at infinity: f(1/s) regular there when inf is not a pole
        if self.pole_at_infinity() == 0 and INF not in self.horizontal:
            count += _crit_order_at_infinity(self.f)
        for h in self.horizontal:
            if h != INF:
                while p(h) == 0 and p.degree >= 0 and p:
                    p = p // Poly([-h, 1])
                    count -= 1
        return count

    def check(self) -> None:
        if self.num.degree < 0 or (self.num.degree <= 0 and self.den.degree == 0):
            raise NotTame("f is constant")
        if self.pole_at_infinity() > 1:
            raise NotTame("pole of order > 1 at infinity")
        if self.den.degree > 0 and not squarefree(self.den):
            raise NotTame("f has a multiple finite pole")
        for h in self.horizontal:
            if h == INF:
                if self.pole_at_infinity():
                    raise CritMeetsHorizontal("infinity is a pole of f, not a horizontal point")
                if _crit_order_at_infinity(self.f) > 0:
                    raise CritMeetsHorizontal("f is critical at infinity")
            else:
                if self.den(h) == 0:
                    raise CritMeetsHorizontal(f"{h} is a pole of f, not a horizontal point")
                if self.derivative_numerator()(h) == 0:
                    raise CritMeetsHorizontal(f"f is critical at the horizontal point {h}")
        if len(set(self.horizontal)) != len(self.horizontal):
            raise NCHodgeError("repeated horizontal point")

    def to_json(self):
        return {"f": self.text or self.f.to_str("z"), "horizontal": [str(h) for h in self.horizontal]}


def _crit_order_at_infinity(f: RatFunc) -> int:
    """Order of vanishing of d/ds f(1/s) at s = 0 (f regular at infinity)."""
    s_inv = RatFunc(Poly([1]), Poly([0, 1]))
    g = f.compose(s_inv)
    dg = g.derivative()
    if not dg:
        return 10 ** 6
    k = 0
    num = dg.num
    while num.coeff(0) == 0:
        num = Poly(num.c[1:])
        k += 1
    return k


def _z_times_fprime_scaled(m: P1Model) -> LaurentPoly:
    """den_*^2 * z f' as a Laurent polynomial."""
    shift = 1 - (2 if m.pole_at_zero() else 0)
    return _poly_to_lp(m.derivative_numerator(), shift)


def build_adapted_complex(m: P1Model) -> P1SheafComplex:
    """[O(-V) -> O(K + D)] with differential c1 d + c2 df^."""
    m.check()
    ds, hs = m.den_star(), m.hor_star()
    inf_v = 1 if m.pole_at_infinity() else 0
    E0 = P1LineBundle(1 if m.pole_at_zero() else 0, -inf_v - ds.degree)
    E1 = P1LineBundle(1 - int(m.in_D(0)), int(m.in_D(INF)) - 1 + ds.degree + hs.degree)
    B = _poly_to_lp(ds * hs)
    phi0 = _poly_to_lp(ds)
    zphi0 = _poly_to_lp(ds.derivative(), 1)
    K = _poly_to_lp(hs) * _z_times_fprime_scaled(m)
    return P1SheafComplex(E0, E1, B * phi0, B * zphi0, K, "adapted forms")


def build_polyvector_complex(m: P1Model) -> P1SheafComplex:
    """[G0 -> G1]: the adapted form complex twisted by (K + D)^-1, differential df^ only."""
    cx = build_adapted_complex(m)
    t = -(m.boundary_count() - 2)
    zero = LaurentPoly.zero(Z)
    return P1SheafComplex(cx.E0.twist(at_inf=t), cx.E1.twist(at_inf=t), zero, zero, cx.K, "adapted polyvectors")


def build_tangent_complex(m: P1Model) -> P1SheafComplex:
    """[g0 -> g1] = [T(-log D) -> f^* T(-log inf)], differential xi -> df(xi)."""
    m.check()
    ds, hs = m.den_star(), m.hor_star()
    zero = LaurentPoly.zero(Z)
    T = P1LineBundle(-int(not m.in_D(0)), int(not m.in_D(INF)) - (ds * hs).degree)
    FT = P1LineBundle(-int(m.pole_at_zero()), int(m.pole_at_infinity() > 0) + ds.degree)
    K = _poly_to_lp(hs) * _z_times_fprime_scaled(m)
    return P1SheafComplex(T, FT, zero, zero, K, "log tangent complex")


# Cech hypercohomology

def _radius(cx: P1SheafComplex) -> int:
    r = 0
    for p in (cx.M1, cx.M0, cx.K):
        if p:
            r = max(r, abs(p.min_exp()), abs(p.max_exp()))
    return r


def _apply(cx: P1SheafComplex, k: int, c1, c2, tag) -> Dict:
    mult = cx.multiplier(k, c1, c2)
    return {(tag, k + e[0]): a for e, a in mult.terms.items()}


def _cech_vectors(cx: P1SheafComplex, c1, c2, N: int, degree: int):
    """Images of the basis of total degree ``degree`` under the total differential, basis window [-N, N]."""
    E0, E1 = cx.E0, cx.E1
    out = []
    if degree == 0:
        for k in range(E0.lo, N + 1):  # chart {z != inf}
            v = {("01", k): Fraction(-1)}
            v.update(_apply(cx, k, c1, c2, "1,0"))
            out.append(v)
        for k in range(-N, E0.hi + 1):  # chart {z != 0}
            v = {("01", k): Fraction(1)}
            v.update(_apply(cx, k, c1, c2, "1,inf"))
            out.append(v)
    elif degree == 1:
        for k in range(-N, N + 1):
            out.append(_apply(cx, k, c1, c2, "12"))
        for k in range(E1.lo, N + 1):
            out.append({("12", k): Fraction(1)})
        for k in range(-N, E1.hi + 1):
            out.append({("12", k): Fraction(-1)})
    else:
        out = [{} for _ in range(-N, N + 1)]
    return [{key: a for key, a in v.items() if a} for v in out]


def _key_inside(key, cx: P1SheafComplex, N: int) -> bool:
    tag, k = key
    if not -N <= k <= N:
        return False
    if tag == "1,0":
        return k >= cx.E1.lo
    if tag == "1,inf":
        return k <= cx.E1.hi
    return True


def _dims_at(cx: P1SheafComplex, c1, c2, N: int) -> Tuple[int, int, int]:
    c1, c2 = Fraction(c1), Fraction(c2)
    N2 = N + _radius(cx) + 1
    dims = []
    for a in range(3):
        vecs = _cech_vectors(cx, c1, c2, N, a)
        e = Echelon(order=_order)
        for v in vecs:
            e.add(v)
        cycles = len(vecs) - e.rank
        if a == 0:
            dims.append(cycles)
            continue
        full, outside = Echelon(order=_order), Echelon(order=_order)
        for v in _cech_vectors(cx, c1, c2, N2, a - 1):
            full.add(v)
            outside.add({key: x for key, x in v.items() if not _key_inside(key, cx, N)})
        dims.append(cycles - (full.rank - outside.rank))
    return tuple(dims)


def _order(key):
    return key


def default_max_window() -> int:
    try:
        return int(os.environ.get("NCHODGE_WINDOW", DEFAULT_MAX_WINDOW))
    except ValueError:
        return DEFAULT_MAX_WINDOW


@dataclass(frozen=True)
class CechResult:
    dims: Tuple[int, ...]
    stabilized: bool
    window: int
    history: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()


def hypercohomology_dims(cx: P1SheafComplex, c1, c2, window: Optional[int] = None) -> CechResult:
    max_window = window or default_max_window()
    start = max(abs(cx.E0.lo), abs(cx.E0.hi), abs(cx.E1.lo), abs(cx.E1.hi)) + _radius(cx) + 1
    hist = []
    for N in range(start, max(max_window, start + 2) + 1):
        hist.append((N, _dims_at(cx, c1, c2, N)))
        if len(hist) >= 3 and hist[-1][1] == hist[-2][1] == hist[-3][1]:
            return CechResult(hist[-3][1], True, hist[-3][0], tuple(hist))
    raise WindowTooSmall(f"no stabilization up to window {max_window}: {hist}")


def euler_characteristic(cx: P1SheafComplex) -> int:
    """chi(E0) - chi(E1) from degrees alone (chi(O(d)) = d + 1)."""
    return (cx.E0.degree + 1) - (cx.E1.degree + 1)


def line_bundle_cohomology(L: P1LineBundle) -> Tuple[int, int]:
    """(h^0, h^1) from the Cech complex L(U0) + L(Uinf) -> L(U01), (a, b) -> b - a."""
    N = max(abs(L.lo), abs(L.hi)) + 2
    ech = Echelon()
    vecs = [{k: Fraction(-1)} for k in range(L.lo, N + 1)] + [{k: Fraction(1)} for k in range(-N, L.hi + 1)]
    for v in vecs:
        ech.add(v)
    return len(vecs) - ech.rank, (2 * N + 1) - ech.rank


@dataclass(frozen=True)
class ScanResult:
    grid: Tuple[Tuple[Fraction, Fraction], ...]
    dims: Tuple[Tuple[int, ...], ...]
    constant: bool
    euler_ok: bool

    def to_json(self, f_text: str = ""):
        return {"f": f_text, "grid": [[str(a), str(b)] for a, b in self.grid],
                "dims": [list(d) for d in self.dims], "constant": self.constant,
                "euler_consistent": self.euler_ok}


def default_grid() -> List[Tuple[Fraction, Fraction]]:
    vals = [-2, -1, 0, 1, 2]
    return [(Fraction(a), Fraction(b)) for a, b in product(vals, vals)]


def parse_grid(text: str) -> List[Tuple[Fraction, Fraction]]:
    """'a..bxc..d' (integer ranges) or 'c1,c2;c1,c2;...'."""
    text = text.strip()
    if "x" in text and ".." in text:
        left, right = text.split("x")
        r1 = [int(s) for s in left.split("..")]
        r2 = [int(s) for s in right.split("..")]
        return [(Fraction(a), Fraction(b)) for a in range(r1[0], r1[1] + 1) for b in range(r2[0], r2[1] + 1)]
    out = []
    for part in text.split(";"):
        a, b = part.split(",")
        out.append((Fraction(a.strip()), Fraction(b.strip())))
    return out


def degeneration_scan(m: P1Model, grid=None, window: Optional[int] = None) -> ScanResult:
    cx = build_adapted_complex(m)
    grid = list(grid) if grid is not None else default_grid()
    chi = euler_characteristic(cx)
    dims = []
    euler_ok = True
    for c1, c2 in grid:
        d = hypercohomology_dims(cx, c1, c2, window).dims
        dims.append(d)
        if sum((-1) ** a * x for a, x in enumerate(d)) != chi:
            euler_ok = False
    constant = all(d == dims[0] for d in dims)
    return ScanResult(tuple(grid), tuple(dims), constant, euler_ok)


def hodge_f_numbers(m: P1Model, window: Optional[int] = None) -> HodgeTable:
    """f^{p,q} = h^p(Omega^q(log D, f)) with Omega^0 = E0, Omega^1 = E1."""
    cx = build_adapted_complex(m)
    t = HodgeTable()
    for q, L in enumerate((cx.E0, cx.E1)):
        h0, h1 = line_bundle_cohomology(L)
        t.add(0, q, h0)
        t.add(1, q, h1)
    return t


def qis_check(m: P1Model, window: Optional[int] = None) -> bool:
    G = build_polyvector_complex(m)
    g = build_tangent_complex(m)
    return hypercohomology_dims(G, 0, 1, window).dims == hypercohomology_dims(g, 0, 1, window).dims


CATALOG = {
    "z+1/z": P1Model.parse("z + 1/z"),
    "cubic": P1Model.parse("(z^3 - 3*z)/(z^2 - 1)"),
    "inverse": P1Model.parse("1/z"),
}
