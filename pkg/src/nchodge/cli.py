"""Command-line front end: ``nchodge <group> <action> [options]``.

Exit codes: 0 success, 1 the computed mathematical verdict is false
(not special, not extendable, mismatch, non-constant scan, failed verify),
2 bad input or a computation that could not be carried out.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import verify as V
from .connections import (MeroConnection1, TwoParamConnection, amodel_at_q1, build_dubrovin, check_flatness,
                          constant_gauge_equivalent, dubrovin_pn, pn_quantum_data, pole_data, restrict_to_line)
from .errors import VERDICT_ERRORS, NCHodgeError
from .exact.matrix import Matrix
from .normal import canonical_psi, deligne_splitting_type, normalize_at_infinity, skewed_extension
from .p1 import (P1Model, build_adapted_complex, build_polyvector_complex, build_tangent_complex,
                 degeneration_scan, default_grid, hodge_f_numbers, hypercohomology_dims, parse_grid, qis_check)
from .rees import extend_over_blowup, rees_bundle, verify_amodel_reconstruction
from .torus import (brieskorn_basis, brieskorn_connection_1d, givental_potential, kouchnirenko_number,
                    newton_polytope, parse_potential, potential_to_json, twisted_derham_dims)
from .weights import (GradedSpaceWithN, fano_hodge_from_hh, lg_hodge_numbers, mirror_match_check,
                      single_block_space, weight_filtration, weight_filtration_any_center)


class Verdict(Exception):
    """Computed result whose verdict is false; carries the report to print."""

    def __init__(self, report):
        self.report = report


# JSON helpers

def jsonable(x: Any):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def canonical_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


_FRAC = re.compile(r"(?<![\w.])(-?\d+)/(\d+)(?![\w.])")


def _floatify(text: str) -> str:
    return _FRAC.sub(lambda m: repr(int(m.group(1)) / int(m.group(2))), text)


def emit(report: Dict, args) -> None:
    if args.json:
        text = canonical_json(report)
    else:
        lines = []
        for k, v in report.items():
            lines.append(f"{k}: {json.dumps(jsonable(v), sort_keys=True, ensure_ascii=False)}")
        text = "\n".join(lines)
    if getattr(args, "float", False):
        text = _floatify(text)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(canonical_json(report) + "\n")
    print(text)


# input helpers

def _matrix_arg(text: str) -> Matrix:
    if text.endswith(".json") or text == "-":
        data = _read_json(text)
        return Matrix.q(data["N"] if isinstance(data, dict) else data)
    return Matrix.q(json.loads(text))


def _connection_arg(args) -> MeroConnection1:
    if getattr(args, "pn", None) is not None:
        return amodel_at_q1(args.pn)
    if getattr(args, "conn", None):
        return MeroConnection1.from_json(_read_json(args.conn))
    if getattr(args, "A", None):
        return MeroConnection1.from_strings(json.loads(args.A))
    raise NCHodgeError("give --conn FILE, --A '[[...]]' or --pn N")


def _two_param_arg(args) -> TwoParamConnection:
    if getattr(args, "two", None):
        return TwoParamConnection.from_json(_read_json(args.two))
    if getattr(args, "pn", None) is not None:
        if getattr(args, "undressed", False):
            M1, Gr = pn_quantum_data(args.pn)
            return build_dubrovin(M1, Gr, dress=False)
        return dubrovin_pn(args.pn)
    raise NCHodgeError("give --two FILE or --pn N")


def _space_arg(path: str) -> GradedSpaceWithN:
    return GradedSpaceWithN.from_json(_read_json(path))


def _verify_block(report: Dict, results: Dict[str, bool]) -> None:
    report["verify"] = {k: ("pass" if v else "fail") for k, v in results.items()}
    if not all(results.values()):
        raise Verdict(report)


# weight filtrations and Hodge numbers

def cmd_wf(args) -> Dict:
    N = _matrix_arg(args.N)
    wf = weight_filtration(N, args.m) if not args.any_center else weight_filtration_any_center(N, args.m)
    ks = range(wf.lo, wf.hi + 1)
    report = {"center": args.m, "dims": dict(zip(ks, wf.dims(ks))), "gr_dims": wf.gr_dims(),
              "subspaces": {k: [list(v) for v in wf.W(k)] for k in ks}}
    if args.verify:
        _verify_block(report, V.verify_weight_filtration(N, args.m))
    return report


def cmd_hodge(args) -> Dict:
    if args.action == "lg":
        t = lg_hodge_numbers(_space_arg(args.space), args.indexing)
        return {"table": t}
    if args.action == "fano":
        return {"table": fano_hodge_from_hh(_space_arg(args.space), args.n)}
    lg_space = _space_arg(args.lg) if args.lg else single_block_space(args.n, args.n + 1)
    fano_space = _space_arg(args.fano) if args.fano else single_block_space(0, args.n + 1)
    lg = lg_hodge_numbers(lg_space, args.indexing)
    fano = fano_hodge_from_hh(fano_space, args.n)
    mism = mirror_match_check(lg, fano, args.n)
    report = {"match": not mism, "mismatches": mism, "lg": lg, "fano": fano, "indexing": args.indexing}
    if mism:
        raise Verdict(report)
    return report


# connections

def cmd_conn(args) -> Dict:
    a = args.action
    if a == "dubrovin":
        if args.M1:
            c = build_dubrovin(_matrix_arg(args.M1), _matrix_arg(args.Gr), dress=not args.undressed)
        else:
            c = _two_param_arg(args)
        report = {"connection": c, "flat": check_flatness(c)}
        if args.verify and args.pn is not None:
            _verify_block(report, V.verify_dubrovin(args.pn))
        return report
    if a == "flat":
        c = _two_param_arg(args)
        report = {"flat": check_flatness(c), "curvature": [[e.to_str() for e in r] for r in c.curvature().rows]}
        if not report["flat"]:
            raise Verdict(report)
        return report
    if a == "restrict":
        c = _two_param_arg(args)
        r = restrict_to_line(c, Fraction(args.v))
        pd = pole_data(r, 0)
        return {"connection": r, "residue": pd.residue if pd else None}
    c = _connection_arg(args)
    if a == "analyze":
        ext = normalize_at_infinity(c, args.window)
        report = {"rank": c.rank, "finite_pole_divisor": c.finite_poles().to_str(c.var),
                  "pole_at_0": pole_data(c, 0), "pole_at_infinity": pole_data(c, "inf"),
                  "normal_form": ext, "deligne_splitting": deligne_splitting_type(c, args.window)}
        try:
            sk = skewed_extension(c, args.window)
            report["skewed_splitting"] = sk.degrees
            report["special"] = sk.special
        except NCHodgeError as e:
            report["skewed_splitting"] = f"unavailable: {e}"
        if args.verify:
            _verify_block(report, V.verify_connection(c))
        return report
    if a == "special":
        sk = skewed_extension(c, args.window)
        report = {"special": sk.special, "splitting_degrees": sk.degrees, "shifts": sk.shifts,
                  "weights": sk.weights}
        if not sk.special:
            raise Verdict(report)
        return report
    if a == "psi":
        unit = [Fraction(x) for x in json.loads(args.unit)] if args.unit else [1] + [0] * (c.rank - 1)
        return {"psi": list(canonical_psi(c, unit, args.window)), "unit": unit}
    raise NCHodgeError(f"unknown conn action {a}")


# Rees bundle and blow-up

def cmd_rees(args) -> Dict:
    if args.action == "verify-pn":
        ok = verify_amodel_reconstruction(args.n)
        report = {"n": args.n, "reconstructs_dubrovin": ok}
        if not ok:
            raise Verdict(report)
        return report
    c = _connection_arg(args)
    degrees = json.loads(args.degrees) if args.degrees else None
    rb = rees_bundle(c, args.window, degrees)
    rep = extend_over_blowup(rb)
    report = {"rees": rb, "extension": rep}
    if args.verify:
        target = dubrovin_pn(args.pn) if args.pn is not None else None
        _verify_block(report, V.verify_rees(c, target))
    if not rep.extendable:
        raise Verdict(report)
    return report


# torus models

def _potential_arg(args):
    if args.givental:
        return givental_potential(args.givental)
    if args.w:
        return parse_potential(args.w)
    raise NCHodgeError("give --w 'potential' or --givental N")


def _gauge_to_dubrovin(w):
    """Constant gauge from the Brieskorn connection of -w to the P^(k-1) A-model at q = 1."""
    k = int(kouchnirenko_number(w))
    if k < 2:
        return None
    flipped = brieskorn_connection_1d(w.__class__(w.vars, {e: -a for e, a in w.terms.items()}))
    return constant_gauge_equivalent(flipped, amodel_at_q1(k - 1))


def cmd_torus(args) -> Dict:
    w = _potential_arg(args)
    if args.action == "kouchnirenko":
        poly = newton_polytope(w)
        report = {"potential": potential_to_json(w), "vertices": poly.vertices,
                  "kouchnirenko": kouchnirenko_number(w, args.assert_nondegenerate)}
        if args.verify:
            _verify_block(report, V.verify_torus(w))
        return report
    if args.action == "derham":
        res = twisted_derham_dims(w, Fraction(args.c1), Fraction(args.c2), args.window)
        return {"potential": potential_to_json(w), "c1": Fraction(args.c1), "c2": Fraction(args.c2),
                "truncation": res}
    if args.action == "brieskorn":
        c = brieskorn_connection_1d(w)
        report = {"basis_exponents": brieskorn_basis(w), "connection": c,
                  "pole_at_0": pole_data(c, 0), "pole_at_infinity": pole_data(c, "inf")}
        if args.compare_dubrovin:
            report["gauge_to_dubrovin_after_sign_flip"] = _gauge_to_dubrovin(w)
        return report
    raise NCHodgeError(f"unknown torus action {args.action}")


# P^1 models

def _model_arg(args) -> P1Model:
    hs = [h for h in (args.horizontal or "").split(",") if h.strip()]
    return P1Model.parse(args.f, hs)


def cmd_p1(args) -> Dict:
    m = _model_arg(args)
    if args.action == "adapted":
        cx = build_adapted_complex(m)
        report = {"model": m, "complex": cx, "charts_to_charts": cx.maps_charts_to_charts()}
    elif args.action == "scan":
        grid = default_grid() if args.grid in (None, "default") else parse_grid(args.grid)
        scan = degeneration_scan(m, grid, args.window)
        report = scan.to_json(args.f)
        report["fpq"] = hodge_f_numbers(m)
        if not scan.constant:
            raise Verdict(report)
    elif args.action == "fpq":
        report = {"model": m, "fpq": hodge_f_numbers(m)}
    elif args.action == "qis":
        G, g = build_polyvector_complex(m), build_tangent_complex(m)
        dG = hypercohomology_dims(G, 0, 1, args.window).dims
        dg = hypercohomology_dims(g, 0, 1, args.window).dims
        report = {"model": m, "G": G, "g": g, "dims_G": dG, "dims_g": dg, "qis": dG == dg}
        if dG != dg:
            raise Verdict(report)
    else:
        raise NCHodgeError(f"unknown p1 action {args.action}")
    if args.verify:
        _verify_block(report, V.verify_p1(m))
    return report


# example catalog

@dataclass(frozen=True)
class ExampleCatalogEntry:
    name: str
    kind: str  # pn-mirror | dim1-model | laurent-potential | raw-connection
    params: Dict[str, Any]
    expected: Dict[str, Any] = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "kind": self.kind, "params": self.params, "expected": self.expected}

    @classmethod
    def from_json(cls, data) -> "ExampleCatalogEntry":
        if data["kind"] not in KINDS:
            raise ValueError(f"unknown example kind {data['kind']!r}")
        return cls(data["name"], data["kind"], dict(data.get("params", {})), dict(data.get("expected", {})))


KINDS = ("pn-mirror", "dim1-model", "laurent-potential", "raw-connection")

CATALOG: List[ExampleCatalogEntry] = [ExampleCatalogEntry.from_json(d) for d in [
    {"name": "pn-mirror", "kind": "pn-mirror", "params": {"n": 2},
     "expected": {"match": True, "special": True, "reconstructs_dubrovin": True}},
    {"name": "dim1-z+1/z", "kind": "dim1-model", "params": {"f": "z + 1/z"},
     "expected": {"dims": [0, 2, 0], "constant": True, "qis": True}},
    {"name": "dim1-cubic", "kind": "dim1-model", "params": {"f": "(z^3 - 3*z)/(z^2 - 1)"},
     "expected": {"dims": [0, 4, 0], "constant": True, "qis": True}},
    {"name": "dim1-inverse", "kind": "dim1-model", "params": {"f": "1/z"},
     "expected": {"dims": [0, 0, 0], "constant": True, "qis": True}},
    {"name": "givental", "kind": "laurent-potential", "params": {"n": 2},
     "expected": {"kouchnirenko": 3}},
    {"name": "brieskorn-p1", "kind": "laurent-potential", "params": {"w": "z + 1/z"},
     "expected": {"kouchnirenko": 2, "gauge_to_dubrovin": True}},
    {"name": "log-rank1", "kind": "raw-connection", "params": {"A": [["1/u"]]},
     "expected": {"deligne_splitting": [-1]}},
    {"name": "not-special", "kind": "raw-connection", "params": {"A": [["0", "0"], ["0", "2/u"]]},
     "expected": {"special": False, "splitting_degrees": [0, -2]}},
]]


def catalog_entry(name: str) -> ExampleCatalogEntry:
    for e in CATALOG:
        if e.name == name:
            return e
    raise NCHodgeError(f"unknown example {name!r}; try `example list`")


def run_example(entry: ExampleCatalogEntry, params: Dict, run: str, verify: bool) -> Dict:
    kind = entry.kind
    p = dict(entry.params)
    p.update({k: v for k, v in params.items() if v is not None})
    report: Dict[str, Any] = {"example": entry.name, "params": p}
    checks: Dict[str, bool] = {}
    if kind == "pn-mirror":
        n = int(p["n"])
        if run in ("all", "mirror-match"):
            lg = lg_hodge_numbers(single_block_space(n, n + 1), "doubled")
            fano = fano_hodge_from_hh(single_block_space(0, n + 1), n)
            mism = mirror_match_check(lg, fano, n)
            report.update({"match": not mism, "lg": lg, "fano": fano, "mismatches": mism})
        if run in ("all", "special"):
            c = amodel_at_q1(n)
            sk = skewed_extension(c)
            report.update({"special": sk.special, "skewed_splitting": sk.degrees,
                           "deligne_splitting": deligne_splitting_type(c)})
        if run in ("all", "reconstruct") and n <= 3:
            report["reconstructs_dubrovin"] = verify_amodel_reconstruction(n)
        if verify:
            checks.update(V.verify_dubrovin(n))
            checks.update(V.verify_connection(amodel_at_q1(n)))
            if n <= 3:
                checks.update(V.verify_rees(amodel_at_q1(n), dubrovin_pn(n)))
            checks.update(V.verify_weight_filtration(single_block_space(n, n + 1).degrees[n], n))
    elif kind == "dim1-model":
        m = P1Model.parse(p["f"])
        scan = degeneration_scan(m, default_grid())
        report.update({"dims": list(scan.dims[0]), "constant": scan.constant, "fpq": hodge_f_numbers(m),
                       "qis": qis_check(m)})
        if verify:
            checks.update(V.verify_p1(m))
    elif kind == "laurent-potential":
        w = givental_potential(int(p["n"])) if "n" in p and "w" not in p else parse_potential(p["w"])
        k = kouchnirenko_number(w, assert_nondegenerate=w.nvars > 2)
        report["kouchnirenko"] = k
        if w.nvars == 1:
            report.update({"brieskorn": brieskorn_connection_1d(w),
                           "gauge_to_dubrovin": _gauge_to_dubrovin(w) is not None})
        if verify:
            checks.update(V.verify_torus(w, derham=w.nvars <= 2))
    elif kind == "raw-connection":
        c = MeroConnection1.from_strings(p["A"])
        sk = skewed_extension(c)
        report.update({"deligne_splitting": deligne_splitting_type(c), "special": sk.special,
                       "splitting_degrees": sk.degrees})
        if verify:
            checks.update(V.verify_connection(c))
    else:
        raise NCHodgeError(f"unknown example kind {kind}")
    expected = entry.expected
    if not params or all(v is None for v in params.values()):
        agree = {k: jsonable(report[k]) == jsonable(v) for k, v in expected.items() if k in report}
        checks.update({f"expected_{k}": ok for k, ok in agree.items()})
    if verify or checks:
        report["verify"] = {k: ("pass" if v else "fail") for k, v in checks.items()}
    verdict_false = (report.get("match") is False or report.get("constant") is False
                     or report.get("qis") is False or report.get("reconstructs_dubrovin") is False)
    if not all(checks.values()):
        verdict_false = True
    if verdict_false:
        raise Verdict(report)
    return report


def cmd_example(args) -> Dict:
    target = args.target
    if target == "list":
        return {"examples": [e.to_json() for e in CATALOG]}
    name = target
    if target == "run":
        if not args.name:
            raise NCHodgeError("example run needs a name")
        name = args.name
    entry = catalog_entry(name)
    return run_example(entry, {"n": args.n}, args.run, args.verify)


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--verify", action="store_true", help="run the invariant suite for this result")
    common.add_argument("--float", action="store_true", help="render fractions as decimals")
    common.add_argument("--out", help="also write the JSON report to this file")

    p = argparse.ArgumentParser(prog="nchodge", description="Hodge-theoretic invariants of Landau-Ginzburg models")
    sub = p.add_subparsers(dest="group", required=True)

    wf = sub.add_parser("wf", parents=[common], help="monodromy weight filtration")
    wf.add_argument("action", choices=["compute"])
    wf.add_argument("--N", required=True, help="nilpotent matrix as JSON rows or a .json file")
    wf.add_argument("--m", type=int, required=True, help="center")
    wf.add_argument("--any-center", action="store_true", help="allow any integer center")
    wf.set_defaults(func=cmd_wf)

    h = sub.add_parser("hodge", parents=[common], help="LG and Fano Hodge numbers")
    h.add_argument("action", choices=["lg", "fano", "match"])
    h.add_argument("--space", help="GradedSpaceWithN JSON file")
    h.add_argument("--lg", help="GradedSpaceWithN JSON for the LG side (match)")
    h.add_argument("--fano", help="GradedSpaceWithN JSON for the Fano side (match)")
    h.add_argument("--n", type=int, default=1)
    h.add_argument("--indexing", choices=["doubled", "literal"], default="doubled")
    h.set_defaults(func=cmd_hodge)

    c = sub.add_parser("conn", parents=[common], help="meromorphic connections")
    c.add_argument("action", choices=["analyze", "dubrovin", "restrict", "special", "psi", "flat"])
    c.add_argument("--conn", help="MeroConnection1 JSON file ('-' for stdin)")
    c.add_argument("--A", help="connection matrix as JSON rows of strings in u")
    c.add_argument("--two", help="TwoParamConnection JSON file")
    c.add_argument("--pn", type=int, help="projective-space Dubrovin data of this dimension")
    c.add_argument("--M1", help="quantum multiplication matrix at q = 1")
    c.add_argument("--Gr", help="grading matrix")
    c.add_argument("--undressed", action="store_true", help="keep M constant in q")
    c.add_argument("--v", default="1", help="slope for restrict")
    c.add_argument("--unit", help="vector at u = 0 for psi, JSON list")
    c.add_argument("--window", choices=["(-1,0]", "[0,1)"], default="(-1,0]")
    c.set_defaults(func=cmd_conn)

    r = sub.add_parser("rees", parents=[common], help="Rees bundle and blow-up extension")
    r.add_argument("action", choices=["extend", "verify-pn"])
    r.add_argument("--conn")
    r.add_argument("--A")
    r.add_argument("--pn", type=int)
    r.add_argument("--n", type=int, default=1)
    r.add_argument("--degrees", help="override the dressing degrees, JSON list")
    r.add_argument("--window", choices=["(-1,0]", "[0,1)"], default="(-1,0]")
    r.set_defaults(func=cmd_rees)

    t = sub.add_parser("torus", parents=[common], help="Laurent potentials on tori")
    t.add_argument("action", choices=["kouchnirenko", "derham", "brieskorn"])
    t.add_argument("--w", help="potential in z or z1..zn")
    t.add_argument("--givental", type=int, help="use the Givental potential of this dimension")
    t.add_argument("--c1", default="1")
    t.add_argument("--c2", default="1")
    t.add_argument("--window", type=int, help="largest exponent box half-width")
    t.add_argument("--assert-nondegenerate", action="store_true")
    t.add_argument("--compare-dubrovin", action="store_true")
    t.set_defaults(func=cmd_torus)

    q = sub.add_parser("p1", parents=[common], help="compactified models on P^1")
    q.add_argument("action", choices=["adapted", "scan", "fpq", "qis"])
    q.add_argument("--f", required=True, help="rational function in z")
    q.add_argument("--horizontal", help="comma-separated horizontal points (rationals or inf)")
    q.add_argument("--grid", help="'default', 'a..bxc..d' or 'c1,c2;c1,c2'")
    q.add_argument("--window", type=int, help="largest Cech window")
    q.set_defaults(func=cmd_p1)

    e = sub.add_parser("example", parents=[common], help="built-in example catalog")
    e.add_argument("target", help="'list', 'run', or an example name")
    e.add_argument("name", nargs="?")
    e.add_argument("--n", type=int)
    e.add_argument("--run", default="all")
    e.set_defaults(func=cmd_example)
    return p


def run_cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 2
    try:
        report = args.func(args)
    except Verdict as v:
        emit(v.report, args)
        return 1
    except VERDICT_ERRORS as err:
        emit({"verdict": False, "error": type(err).__name__, "degrees": list(err.degrees),
              "message": str(err)}, args)
        return 1
    except (NCHodgeError, ValueError, KeyError, OSError, json.JSONDecodeError, ZeroDivisionError) as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2
    emit(report, args)
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
