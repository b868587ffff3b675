import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from nchodge.errors import NCHodgeError
from nchodge.exact.birkhoff import (birkhoff_factorize, exponents_by_sections, laurent_inverse, laurent_matrix,
                                    is_copolynomial_matrix, is_polynomial_matrix, laurent_eye)
from nchodge.exact.laurent import LaurentPoly
from nchodge.exact.matrix import Matrix
from nchodge.exact.parse import parse_laurent, parse_rational_function
from nchodge.exact.poly import Poly, RatFunc, poly_gcd
from nchodge.exact.sparse import Echelon, sparse_rank

from conftest import small_q

Z = sp.Symbol("z")
polys = st.lists(small_q, max_size=5).map(Poly)


def to_sympy(p: Poly):
    return sp.Poly(list(reversed([sp.Rational(c.numerator, c.denominator) for c in p.c])) or [0], Z)


def same(p: Poly, q) -> bool:
    return to_sympy(p).as_expr().expand() == sp.expand(q)


@given(polys, polys)
def test_poly_ring_matches_sympy(a, b):
    A, B = to_sympy(a).as_expr(), to_sympy(b).as_expr()
    assert same(a + b, A + B)
    assert same(a * b, A * B)
    assert same(a - b, A - B)


@given(polys, polys)
def test_poly_divmod_and_gcd(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
    g = poly_gcd(a, b)
    sg = sp.gcd(to_sympy(a), to_sympy(b))
    assert g.degree == sg.degree()


@given(polys, polys.filter(lambda p: not p.is_zero()), polys, polys.filter(lambda p: not p.is_zero()))
def test_ratfunc_field_ops(a, b, c, d):
    x, y = RatFunc(a, b), RatFunc(c, d)
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x * y) / y == x


def test_ratfunc_normal_form():
    r = RatFunc(Poly([0, 2]), Poly([0, 4]))
    assert r == RatFunc(Poly([Fraction(1, 2)]))
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly([1]), Poly())


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), small_q, max_size=4),
       st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), small_q, max_size=4))
def test_laurent_product_matches_sympy(ta, tb):
    x, y = sp.symbols("x y")
    vars = ("x", "y")
    a, b = LaurentPoly(vars, ta), LaurentPoly(vars, tb)

    def s(p):
        return sum(sp.Rational(c.numerator, c.denominator) * x ** e[0] * y ** e[1] for e, c in p.terms.items())
    assert sp.expand(s(a * b) - s(a) * s(b)) == 0
    assert sp.expand(s(a.diff("x")) - sp.diff(s(a), x)) == 0


@given(st.integers(1, 4), st.integers(0, 10**6).map(random.Random))
def test_matrix_det_inverse_against_sympy(n, r):
    M = Matrix([[Fraction(r.randint(-4, 4), r.randint(1, 3)) for _ in range(n)] for _ in range(n)])
    S = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in M.rows])
    d = M.det()
    assert sp.Rational(d.numerator, d.denominator) == S.det()
    assert M.rank() == S.rank()
    if d:
        assert M @ M.inverse() == Matrix.identity(n)


@given(st.integers(0, 10**6).map(random.Random))
def test_sparse_rank_agrees_with_dense(r):
    rows = [[r.choice([0, 0, 1, -1, 2]) for _ in range(6)] for _ in range(5)]
    sparse = [{j: a for j, a in enumerate(row) if a} for row in rows]
    assert sparse_rank(sparse) == Matrix.q(rows).rank()
    e = Echelon()
    for v in sparse:
        e.add(v)
    for v in sparse:
        assert not e.reduce(v)


@pytest.mark.parametrize("text", ["(z^3 - 3*z)/(z^2 - 1)", "z + 1/z", "2*z^-2 - 3/4", "((z+1)^2)/(z+1)"])
def test_parser_matches_sympy(text):
    r = parse_rational_function(text, "z")
    expr = sp.sympify(text.replace("^", "**"))
    num, den = sp.fraction(sp.cancel(expr))
    assert sp.cancel(to_sympy(r.num).as_expr() / to_sympy(r.den).as_expr() - num / den) == 0


@pytest.mark.parametrize("text", ["z +", "(z", "z^^2", "1/0", "z $ 1"])
def test_parser_rejects_garbage(text):
    with pytest.raises((NCHodgeError, ZeroDivisionError)):
        parse_rational_function(text, "z")


def test_parse_laurent_multivariate():
    p = parse_laurent("z1 + z2 + 1/(z1*z2)", ("z1", "z2"))
    assert p.terms == {(1, 0): 1, (0, 1): 1, (-1, -1): 1}


def _random_loop(r, rng):
    """Random element of the loop group: products of elementary and monomial-diagonal factors."""
    G = laurent_eye(r)
    for _ in range(2 * r + 1):
        i, j = rng.sample(range(r), 2)
        E = [[LaurentPoly(("u",), {(0,): int(a == b)}) for b in range(r)] for a in range(r)]
        E[i][j] = LaurentPoly(("u",), {(rng.randint(-2, 2),): rng.choice([1, -1, 2])})
        G = G @ Matrix(E)
        D = Matrix.diag([LaurentPoly(("u",), {(rng.randint(-1, 1),): 1}) for _ in range(r)],
                        zero=LaurentPoly.zero(("u",)))
        G = G @ D
    return G


@pytest.mark.parametrize("seed", range(12))
def test_birkhoff_factorization_against_section_oracle(seed):
    rng = random.Random(seed)
    r = 2 + seed % 2
    G = _random_loop(r, rng)
    b = birkhoff_factorize(G)
    assert b.product() == G
    assert is_copolynomial_matrix(b.gminus) and is_polynomial_matrix(b.gplus)
    assert b.degrees == exponents_by_sections(G)
    assert laurent_inverse(G) @ G == laurent_eye(r)


def test_birkhoff_known_example():
    u = ("u",)
    G = laurent_matrix([[parse_laurent(x, u) for x in row] for row in [["u", "1"], ["0", "1/u"]]])
    assert birkhoff_factorize(G).degrees == exponents_by_sections(G) == (0, 0)
    G = laurent_matrix([[parse_laurent(x, u) for x in row] for row in [["u^2", "0"], ["0", "u^-1"]]])
    assert birkhoff_factorize(G).degrees == (2, -1)
