"""Invariant suites behind ``--verify``: each returns an ordered dict name -> bool."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict

from .connections import (MeroConnection1, TwoParamConnection, check_flatness, dubrovin_pn, gauge_transform,
                          pn_quantum_data, pole_data, restrict_to_line)
from .errors import NCHodgeError
from .exact.jordan import rational_spectrum
from .exact.matrix import Matrix
from .normal import is_special, normalize_at_infinity, u_matrix
from .p1 import (P1Model, build_adapted_complex, degeneration_scan, euler_characteristic, hodge_f_numbers,
                 hypercohomology_dims)
from .rees import extend_over_blowup, rees_bundle, two_param_constant_gauge
from .torus import kouchnirenko_number, transform_exponents, twisted_derham_dims
from .weights import check_defining_properties, weight_filtration, weight_filtration_formula


def _rng(seed=0):
    return random.Random(seed)


def random_unimodular(n: int, rng) -> list:
    """Product of elementary integer matrices (determinant +-1)."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = rng.choice([-2, -1, 1, 2])
        M = [[M[r][s] + (c * M[j][s] if r == i else 0) for s in range(n)] for r in range(n)]
    if rng.random() < 0.5:
        M[0] = [-x for x in M[0]]
    return M


def random_invertible(r: int, rng) -> Matrix:
    while True:
        K = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(r)])
        if K.det():
            return K


def verify_weight_filtration(N: Matrix, m: int) -> Dict[str, bool]:
    wf = weight_filtration(N, m)
    out = {"defining_properties": check_defining_properties(wf, N),
           "formula_route_agrees": wf.same_chain(weight_filtration_formula(N, m))}
    dims = wf.gr_dims()
    out["graded_dims_symmetric"] = all(dims.get(m + k, 0) == dims.get(m - k, 0) for k in range(0, 2 * m + 2))
    out["scaling_invariant"] = all(weight_filtration(N.scale(Fraction(c)), m).same_chain(wf) for c in (2, -3))
    return out


def verify_connection(c: MeroConnection1) -> Dict[str, bool]:
    out = {}
    ext = normalize_at_infinity(c)
    normalized = gauge_transform(c, u_matrix(ext.gauge).map(lambda x: x.to_ratfunc()))
    pd = pole_data(normalized, "inf")
    out["normalized_pole_at_infinity_is_logarithmic"] = pd is None or pd.order <= 1
    out["residue_window"] = all(-1 < lam <= 0 for lam in rational_spectrum(ext.residue))
    try:
        sp = is_special(c)
        K = random_invertible(c.rank, _rng(1))
        out["special_invariant_under_constant_gauge"] = is_special(gauge_transform(c, K)) == sp
    except NCHodgeError:
        pass
    return out


def verify_dubrovin(n: int, slopes=(1, -2, Fraction(1, 3))) -> Dict[str, bool]:
    c = dubrovin_pn(n)
    _, Gr = pn_quantum_data(n)
    out = {"flat": check_flatness(c)}
    target = MeroConnection1(Gr.map(_gr_over_q), "q")
    out["restriction_to_lines"] = all(restrict_to_line(c, v) == target for v in slopes)
    res = pole_data(restrict_to_line(c, slopes[0]), 0).residue
    out["residue_eigenvalues"] = sorted(rational_spectrum(res)) == [Fraction(2 * k - n, 2) for k in range(n + 1)]
    return out


def _gr_over_q(a):
    from .exact.poly import Poly, RatFunc
    return RatFunc(Poly([a]), Poly([0, 1]))


def verify_rees(c: MeroConnection1, target: TwoParamConnection = None) -> Dict[str, bool]:
    from .connections import slice_at
    rb = rees_bundle(c)
    out = {"rees_flat": rb.connection.checked_flat,
           "restriction_to_q1_is_input": slice_at(rb.in_input_frame(), "q", 1) == c}
    rep = extend_over_blowup(rb)
    out["verdict_matches_degrees"] = rep.extendable == all(d == 0 for d in rep.exceptional_degrees)
    if rep.extendable:
        out["output_flat"] = check_flatness(rep.connection)
        if target is not None:
            out["equals_target_up_to_constant_gauge"] = two_param_constant_gauge(rep.connection, target) is not None
    K = random_invertible(c.rank, _rng(2))
    rep2 = extend_over_blowup(rees_bundle(gauge_transform(c, K)))
    out["verdict_invariant_under_constant_gauge"] = rep2.extendable == rep.extendable
    return out


def verify_torus(w, c_points=((1, 1), (2, -1)), derham=True) -> Dict[str, bool]:
    n = w.nvars
    k = kouchnirenko_number(w, assert_nondegenerate=n > 2)
    rng = _rng(3)
    out = {"kouchnirenko_unimodular_invariant": all(
        kouchnirenko_number(transform_exponents(w, random_unimodular(n, rng)), assert_nondegenerate=True) == k
        for _ in range(3))}
    if derham and n <= 2:
        out["derham_total_equals_kouchnirenko"] = all(twisted_derham_dims(w, a, b).total == k for a, b in c_points)
    return out


def verify_p1(m: P1Model, grid=((0, 1), (1, 0), (1, 1), (0, 0), (2, -1))) -> Dict[str, bool]:
    cx = build_adapted_complex(m)
    scan = degeneration_scan(m, grid)
    out = {"charts_to_charts": cx.maps_charts_to_charts(),
           "constant_over_grid": scan.constant,
           "euler_characteristic": scan.euler_ok}
    f = hodge_f_numbers(m)
    at10 = hypercohomology_dims(cx, 1, 0).dims
    sums = f.row_sums()
    out["fpq_sums_match_degree_dims"] = all(sums.get(a, 0) == at10[a] for a in range(3))
    out["h1_counts_critical_points"] = hypercohomology_dims(cx, 1, 1).dims[1] == m.critical_points_in_Y()
    out["euler_from_degrees"] = sum((-1) ** a * d for a, d in enumerate(at10)) == euler_characteristic(cx)
    return out
