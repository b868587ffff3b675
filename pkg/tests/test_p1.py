from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from nchodge.errors import CritMeetsHorizontal, NotTame
from nchodge.p1 import (CATALOG, P1LineBundle, P1Model, build_adapted_complex, build_polyvector_complex,
                        build_tangent_complex, degeneration_scan, default_grid, euler_characteristic,
                        hodge_f_numbers, hypercohomology_dims, line_bundle_cohomology, parse_grid, qis_check)

Z, S = sp.symbols("z s")

MODELS = {"z + 1/z": (0, 2, 0), "(z^3 - 3*z)/(z^2 - 1)": (0, 4, 0), "1/z": (0, 0, 0)}


def sympy_critical_count(text: str, horizontal=()) -> int:
    """Critical points of f on P^1 minus poles and horizontal points, with multiplicity."""
    f = sp.cancel(sp.sympify(text.replace("^", "**"), locals={"z": Z}))
    num = sp.numer(sp.together(sp.diff(f, Z)))
    count = 0
    for root, mult in sp.roots(sp.Poly(num, Z)).items():
        if root not in [sp.Rational(h) for h in horizontal if h != "inf"]:
            count += mult
    num_deg, den_deg = sp.degree(sp.numer(f), Z), sp.degree(sp.denom(f), Z)
    if num_deg <= den_deg and "inf" not in horizontal:
        g = sp.diff(f.subs(Z, 1 / S), S)
        g = sp.cancel(g)
        count += sp.Poly(sp.numer(g), S).monoms()[-1][0] - sp.Poly(sp.denom(g), S).monoms()[-1][0]
    return count


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_line_bundle_cohomology_matches_formula(lo, hi):
    L = P1LineBundle(lo, hi)
    d = L.degree
    assert line_bundle_cohomology(L) == (max(0, d + 1), max(0, -d - 1))


@pytest.mark.parametrize("text", ["z + 1/z", "(z^3 - 3*z)/(z^2 - 1)", "1/z", "z^2/(z-1)", "1/(z^2 - 4)"])
def test_critical_points_against_sympy(text):
    assert P1Model.parse(text).critical_points_in_Y() == sympy_critical_count(text)


def test_critical_points_with_horizontal_point():
    m = P1Model.parse("1/(z^2 - 4)", ["inf"])
    with pytest.raises(CritMeetsHorizontal):
        m.check()
    m = P1Model.parse("z + 1/z", ["2"])
    m.check()
    assert m.critical_points_in_Y() == sympy_critical_count("z + 1/z", ["2"])


@pytest.mark.parametrize("text", ["z^2", "1/z^2", "3"])
def test_untame_functions_rejected(text):
    with pytest.raises(NotTame):
        P1Model.parse(text).check()


@pytest.mark.parametrize("text", list(MODELS))
def test_adapted_complex_maps_charts(text):
    assert build_adapted_complex(P1Model.parse(text)).maps_charts_to_charts()


@pytest.mark.parametrize("text,dims", list(MODELS.items()))
def test_degeneration_scan_constant(text, dims):
    res = degeneration_scan(P1Model.parse(text), default_grid())
    assert res.constant and res.euler_ok
    assert all(tuple(d) == dims for d in res.dims)


@pytest.mark.parametrize("text,dims", list(MODELS.items()))
def test_euler_characteristic_from_line_bundles(text, dims):
    cx = build_adapted_complex(P1Model.parse(text))
    assert euler_characteristic(cx) == dims[0] - dims[1] + dims[2]


def test_h1_counts_critical_points():
    for text in MODELS:
        m = P1Model.parse(text)
        assert hypercohomology_dims(build_adapted_complex(m), 1, 1).dims[1] == m.critical_points_in_Y()


def test_f_numbers():
    t = hodge_f_numbers(P1Model.parse("z + 1/z"))
    assert dict(t) == {(Fraction(1), Fraction(0)): 1, (Fraction(0), Fraction(1)): 1}
    t = hodge_f_numbers(P1Model.parse("(z^3 - 3*z)/(z^2 - 1)"))
    assert dict(t) == {(Fraction(1), Fraction(0)): 2, (Fraction(0), Fraction(1)): 2}


@pytest.mark.parametrize("text", list(MODELS))
def test_deformation_complexes_agree(text):
    m = P1Model.parse(text)
    assert qis_check(m)
    G, g = build_polyvector_complex(m), build_tangent_complex(m)
    for c in [(0, 1), (1, 1)]:
        assert hypercohomology_dims(G, *c).dims == hypercohomology_dims(g, *c).dims


def test_parse_grid_forms():
    assert len(parse_grid("-1..1x0..2")) == 9
    assert parse_grid("1,0;0,1") == [(1, 0), (0, 1)]
    assert len(default_grid()) == 25


def test_catalog_names():
    assert set(CATALOG) == {"z+1/z", "cubic", "inverse"}
