import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nchodge.errors import NilpotencyBoundViolated, NotNilpotent
from nchodge.exact.jordan import jordan_block, nilpotency_index
from nchodge.exact.matrix import Matrix
from nchodge.weights import (GradedSpaceWithN, HodgeTable, brute_force_filtrations, check_defining_properties,
                             fano_hodge_from_hh, lg_hodge_numbers, mirror_match_check, single_block_space,
                             weight_filtration, weight_filtration_formula)

from conftest import random_nilpotent


@given(st.integers(1, 6), st.integers(0, 10**6).map(random.Random), st.integers(0, 2))
def test_weight_filtration_properties(dim, r, extra):
    N = random_nilpotent(r, dim)
    m = nilpotency_index(N) - 1 + extra
    wf = weight_filtration(N, m)
    assert check_defining_properties(wf, N)
    assert wf.same_chain(weight_filtration_formula(N, m))
    g = wf.gr_dims()
    assert all(g.get(m + k, 0) == g.get(m - k, 0) for k in range(m + 2))
    assert sum(g.values()) == dim


@given(st.integers(1, 5), st.integers(0, 10**6).map(random.Random))
def test_brute_force_solution_is_unique_and_equal(dim, r):
    N = random_nilpotent(r, dim)
    m = nilpotency_index(N) - 1
    sols = brute_force_filtrations(N, m)
    assert len(sols) == 1
    assert sols[0].same_chain(weight_filtration(N, m))


def test_single_block_weights():
    wf = weight_filtration(jordan_block(3), 2)
    assert wf.gr_dims() == {0: 1, 2: 1, 4: 1}
    assert wf.dims(range(-1, 5)) == [0, 1, 1, 2, 2, 3]


def test_zero_operator_is_pure():
    wf = weight_filtration(Matrix.zeros(3, 3), 1)
    assert wf.gr_dims() == {1: 3}


def test_rejects_bad_inputs():
    with pytest.raises(NotNilpotent):
        weight_filtration(Matrix.q([[1, 0], [0, 0]]), 1)
    with pytest.raises(NilpotencyBoundViolated):
        weight_filtration(jordan_block(3), 1)
    with pytest.raises(NilpotencyBoundViolated):
        weight_filtration(jordan_block(1), -1)


def test_hodge_table_json_round_trip():
    t = lg_hodge_numbers(single_block_space(2, 3), "doubled")
    assert HodgeTable.from_json(t.to_json()) == t


def test_graded_space_json_round_trip_and_validation():
    H = GradedSpaceWithN({0: jordan_block(2), 1: Matrix.zeros(1, 1)})
    assert GradedSpaceWithN.from_json(H.to_json()) == H
    with pytest.raises(ValueError):
        GradedSpaceWithN.from_json({"degrees": [{"a": 0, "dim": 3, "N": [[0, 1], [0, 0]]}]})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_doubled_lg_table_of_single_block(n):
    t = lg_hodge_numbers(single_block_space(n, n + 1), "doubled")
    assert dict(t) == {(Fraction(p), Fraction(n - p)): 1 for p in range(n + 1)}


def test_mismatch_reports_differences():
    lg = lg_hodge_numbers(single_block_space(1, 2), "doubled")
    fano = fano_hodge_from_hh(single_block_space(0, 3), 2)
    assert mirror_match_check(lg, fano, 2)
