import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nchodge.connections import MeroConnection1, amodel_at_q1, gauge_transform, pole_data
from nchodge.errors import NotQuasiUnipotent
from nchodge.exact.jordan import jordan_nilpotent, rational_spectrum
from nchodge.exact.matrix import Matrix
from nchodge.normal import (canonical_psi, deligne_splitting_type, is_special, monodromy_log_nilpotent,
                            normalize_at_infinity, poincare_dulac, skewed_extension, u_matrix)
from nchodge.verify import random_invertible


def test_p1_normal_form_at_infinity():
    ext = normalize_at_infinity(amodel_at_q1(1))
    assert ext.residue == Matrix.q([[Fraction(-1, 2), 2], [0, Fraction(-1, 2)]])
    assert ext.nilpotent == Matrix.q([[0, 2], [0, 0]])
    assert deligne_splitting_type(amodel_at_q1(1)) == (1, 0)


@pytest.mark.parametrize("A,deg", [([["1/u"]], (-1,)), ([["-1/u"]], (1,)), ([["0"]], (0,))])
def test_rank_one_log_connections(A, deg):
    assert deligne_splitting_type(MeroConnection1.from_strings(A)) == deg


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_space_is_special(n):
    c = amodel_at_q1(n)
    sk = skewed_extension(c)
    assert sk.special and is_special(c)
    assert sk.degrees == (0,) * (n + 1)
    sizes, _ = jordan_nilpotent(monodromy_log_nilpotent(c))
    assert sizes == [n + 1]


def test_not_special_example():
    c = MeroConnection1.from_strings([["0", "0"], ["0", "2/u"]])
    sk = skewed_extension(c)
    assert not sk.special
    assert sorted(sk.degrees) == [-2, 0]


def test_non_integer_shift_is_rejected():
    c = MeroConnection1.from_strings([["1/(3*u)"]])
    with pytest.raises(NotQuasiUnipotent):
        skewed_extension(c)


def test_spectrum_mod_integers_for_diagonal_grading():
    c = MeroConnection1.from_strings([["-1/(2*u)", "0"], ["0", "1/(2*u)"]])
    ext = normalize_at_infinity(c)
    assert ext.nilpotent.is_zero()
    spec = rational_spectrum(ext.residue)
    assert all(-1 < lam <= 0 and (lam + Fraction(1, 2)).denominator == 1 for lam in spec)


@pytest.mark.parametrize("window", ["(-1,0]", "[0,1)"])
def test_normalized_gauge_gives_log_pole_in_window(window):
    c = amodel_at_q1(2)
    ext = normalize_at_infinity(c, window)
    d = gauge_transform(c, u_matrix(ext.gauge).map(lambda x: x.to_ratfunc()))
    assert pole_data(d, "inf").order <= 1
    lo = -1 if window == "(-1,0]" else 0
    for lam in rational_spectrum(ext.residue):
        assert (lo < lam <= lo + 1) if window == "(-1,0]" else (lo <= lam < lo + 1)


@given(st.integers(0, 10**6))
def test_splitting_invariant_under_constant_gauge(seed):
    c = amodel_at_q1(1)
    K = random_invertible(2, random.Random(seed))
    d = gauge_transform(c, K)
    assert deligne_splitting_type(d) == deligne_splitting_type(c)
    assert skewed_extension(d).degrees == skewed_extension(c).degrees


def test_canonical_psi_p1():
    assert canonical_psi(amodel_at_q1(1), [1, 0]) == (1, 0)


def test_poincare_dulac_removes_higher_terms():
    from nchodge.normal import apply_gauge, coefficient, lconst, theta_form_at_infinity, theta_matrix
    ext = normalize_at_infinity(amodel_at_q1(1))
    D = apply_gauge(theta_form_at_infinity(amodel_at_q1(1)), ext.gauge)
    P = poincare_dulac(D, 3)
    defect = D @ P + theta_matrix(P) - P @ lconst(coefficient(D, 0))
    for k in range(0, 4):
        assert coefficient(defect, k).is_zero()
