import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nchodge.connections import amodel_at_q1, constant_gauge_equivalent, pole_data
from nchodge.errors import DegenerateFaces, NotConvenient, WindowTooSmall
from nchodge.torus import (brieskorn_connection_1d, check_nondegenerate, givental_potential, kouchnirenko_number,
                           newton_polytope, parse_potential, potential_from_json, potential_to_json,
                           transform_exponents, twisted_derham_dims)
from nchodge.verify import random_unimodular

from oracles import jacobian_ring_dim


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kouchnirenko_matches_jacobian_ring(n):
    w = givental_potential(n)
    assert kouchnirenko_number(w, assert_nondegenerate=n > 2) == n + 1 == jacobian_ring_dim(w)


@pytest.mark.parametrize("text,k", [("z1 + z2 + 1/z1 + 1/z2", 4), ("z1 + z2 + 1/(z1*z2) + z1*z2", None),
                                    ("z + 2/z + z^2", 3)])
def test_other_potentials_against_oracle(text, k):
    w = parse_potential(text)
    mu = kouchnirenko_number(w)
    if k is not None:
        assert mu == k
    assert mu == jacobian_ring_dim(w)


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_kouchnirenko_unimodular_invariance(seed, n):
    w = givental_potential(n)
    M = random_unimodular(n, random.Random(seed))
    assert kouchnirenko_number(transform_exponents(w, M), assert_nondegenerate=n > 2) == n + 1


def test_newton_polytope_of_givental_plane():
    P = newton_polytope(givental_potential(2))
    assert sorted(P.vertices) == [(-1, -1), (0, 1), (1, 0)]
    assert P.volume == 3  # normalized: n! times the Euclidean area
    assert P.contains_origin_inside


def test_not_convenient_rejected():
    with pytest.raises(NotConvenient):
        kouchnirenko_number(parse_potential("z1 + z2 + z1*z2"))


def test_degenerate_edge_detected():
    # the edge from (2, 0) to (0, 2) carries (z1 + z2)^2, which is not squarefree
    w = parse_potential("z1^2 + 2*z1*z2 + z2^2 + 1/(z1*z2)")
    with pytest.raises(DegenerateFaces):
        check_nondegenerate(w)
    with pytest.raises(DegenerateFaces):
        kouchnirenko_number(w)
    check_nondegenerate(givental_potential(2))


def test_high_dimension_needs_assertion():
    with pytest.raises(DegenerateFaces):
        kouchnirenko_number(givental_potential(3))


def test_potential_json_round_trip():
    w = givental_potential(3)
    assert potential_from_json(potential_to_json(w)) == w


@pytest.mark.parametrize("c", [(1, 0), (0, 1), (1, 1), (2, -1)])
def test_twisted_derham_one_variable(c):
    res = twisted_derham_dims(parse_potential("z + 1/z"), Fraction(c[0]), Fraction(c[1]))
    assert res.stabilized
    expected = {(0, 1): [0, 2], (1, 0): [1, 1], (1, 1): [0, 2], (2, -1): [0, 2]}[c]
    assert list(res.dims) == expected


def test_twisted_derham_plane_untwisted_jump():
    w = givental_potential(2)
    assert list(twisted_derham_dims(w, 1, 0).dims) == [1, 2, 1]
    assert list(twisted_derham_dims(w, 0, 1).dims) == [0, 0, 3]


def test_window_too_small_is_reported():
    with pytest.raises(WindowTooSmall):
        twisted_derham_dims(givental_potential(2), Fraction(1), Fraction(1), max_window=1)


def test_brieskorn_p1_matches_dubrovin_after_sign_flip():
    w = parse_potential("z + 1/z")
    c = brieskorn_connection_1d(w)
    assert pole_data(c, 0).order == 2
    assert pole_data(c, "inf").order == 1
    flipped = brieskorn_connection_1d(parse_potential("-z - 1/z"))
    assert constant_gauge_equivalent(flipped, amodel_at_q1(1)) is not None
