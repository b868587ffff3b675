import json
import subprocess
import sys

import pytest

from nchodge.cli import CATALOG, ExampleCatalogEntry, canonical_json, run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    return code, capsys.readouterr()


def test_example_pn_mirror_match(capsys):
    code, out = run(capsys, "example", "pn-mirror", "--n", "2", "--run", "mirror-match")
    assert code == 0
    assert "match: true" in out.out


def test_json_output_is_canonical(capsys):
    code, out = run(capsys, "hodge", "match", "--n", "2", "--json")
    assert code == 0
    data = json.loads(out.out)
    assert data["match"] is True
    assert out.out.strip() == canonical_json(data)


def test_wf_compute_with_verify(capsys):
    code, out = run(capsys, "wf", "compute", "--N", "[[0,1,0],[0,0,1],[0,0,0]]", "--m", "2", "--verify", "--json")
    data = json.loads(out.out)
    assert code == 0
    assert data["gr_dims"] == {"0": 1, "2": 1, "4": 1}
    assert set(data["verify"].values()) == {"pass"}


def test_not_special_exits_one(capsys):
    code, out = run(capsys, "conn", "special", "--A", '[["0","0"],["0","2/u"]]', "--json")
    assert code == 1
    assert json.loads(out.out)["special"] is False


def test_not_special_from_json_file(tmp_path, capsys):
    path = tmp_path / "not-special.json"
    path.write_text(json.dumps({"rank": 2, "A": [["0", "0"], ["0", "2/u"]]}))
    code, out = run(capsys, "conn", "special", "--conn", str(path))
    assert code == 1
    assert "splitting_degrees: [0, -2]" in out.out


def test_special_projective_plane(capsys):
    code, out = run(capsys, "conn", "special", "--pn", "2")
    assert code == 0


def test_undressed_curvature_exits_one(capsys):
    code, _ = run(capsys, "conn", "flat", "--pn", "1", "--undressed")
    assert code == 1


def test_bad_input_exits_two(capsys):
    code, out = run(capsys, "wf", "compute", "--N", "not json", "--m", "1")
    assert code == 2
    assert "error" in out.err
    code, _ = run(capsys, "p1", "scan", "--f", "z^2")
    assert code == 2
    code, _ = run(capsys, "example", "no-such-example")
    assert code == 2


def test_p1_scan_constant(capsys):
    code, out = run(capsys, "p1", "scan", "--f", "(z^2+1)/z", "--grid", "default", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["constant"] is True
    assert all(d == [0, 2, 0] for d in data["dims"])


def test_rees_extend_with_verify(capsys):
    code, out = run(capsys, "rees", "extend", "--pn", "1", "--verify", "--json")
    data = json.loads(out.out)
    assert code == 0
    assert data["extension"]["extendable"] is True
    assert set(data["verify"].values()) == {"pass"}


def test_rees_not_extendable_exits_one(capsys):
    code, _ = run(capsys, "rees", "extend", "--A", '[["0"]]', "--degrees", "[1]")
    assert code == 1


def test_torus_commands(capsys):
    code, out = run(capsys, "torus", "kouchnirenko", "--givental", "3", "--assert-nondegenerate", "--json")
    assert code == 0 and json.loads(out.out)["kouchnirenko"] == 4
    code, out = run(capsys, "torus", "brieskorn", "--w", "z + 1/z", "--compare-dubrovin", "--json")
    assert code == 0 and json.loads(out.out)["gauge_to_dubrovin_after_sign_flip"] is not None


def test_float_rendering(capsys):
    code, out = run(capsys, "conn", "analyze", "--pn", "1", "--float")
    assert code == 0
    assert "-0.5" in out.out and "-1/2" not in out.out


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _ = run(capsys, "p1", "fpq", "--f", "z + 1/z", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["fpq"]


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_catalog_entries_run_and_round_trip(entry, capsys):
    assert ExampleCatalogEntry.from_json(json.loads(json.dumps(entry.to_json()))) == entry
    code, out = run(capsys, "example", "run", entry.name, "--json")
    assert code == 0
    assert all(v == "pass" for v in json.loads(out.out).get("verify", {}).values())


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        ExampleCatalogEntry.from_json({"name": "x", "kind": "weird", "params": {}})


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nchodge", "example", "list"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "pn-mirror" in res.stdout
