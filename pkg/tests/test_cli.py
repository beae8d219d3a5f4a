import json
import os

import pytest
from click.testing import CliRunner

import higherar
from higherar.cli import main
from higherar.serialize import (algebra_from_dict, load_json, module_from_dict,
                                module_to_dict, presentation_from_dict,
                                presentation_to_dict, to_json)

DATA = os.path.join(os.path.dirname(higherar.__file__), "data")


def run(*args):
    return CliRunner().invoke(main, list(args))


def data(name):
    return os.path.join(DATA, name)


def test_check_linear_a4_exit_zero():
    res = run("check", data("linear_a4.json"), "-n", "1")
    assert res.exit_code == 0, res.output
    assert "absolutely 1-complete" in res.output


def test_check_alternating_reports_tilting():
    res = run("check", data("auslander_a3_alternating.json"), "-n", "2")
    assert res.exit_code == 0
    assert "not absolute" in res.output
    assert "tilting summand dimension vectors" in res.output


def test_check_failure_has_nonzero_exit(tmp_path):
    res = run("check", data("auslander_a3_linear.json"), "-n", "1")
    assert res.exit_code == 1
    assert "NOT 1-complete" in res.output


def test_relation_free_cycle_diagnosed(tmp_path):
    bad = tmp_path / "cycle.json"
    bad.write_text(json.dumps({
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"},
                   {"name": "b", "from": "2", "to": "1"}],
        "relations": [],
        "length_cap": 12,
    }))
    res = run("check", str(bad), "-n", "1")
    assert res.exit_code != 0
    assert "DimensionCapExceeded" in res.output


def test_parse_error_has_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    res = run("check", str(bad), "-n", "1")
    assert res.exit_code != 0
    assert "line 1" in res.output and "column" in res.output


def test_quiver_dot_deterministic():
    a = run("--format", "dot", "quiver", data("auslander_a3_linear.json"),
            "-n", "2")
    b = run("--format", "dot", "quiver", data("auslander_a3_linear.json"),
            "-n", "2")
    assert a.exit_code == 0 and a.output == b.output
    assert a.output.startswith("digraph")
    assert "style=dashed" in a.output


def test_closure_json_contains_seed():
    res = run("--format", "json", "--seed", "7", "closure",
              data("auslander_a3_linear.json"), "-n", "2")
    payload = json.loads(res.output)
    assert payload["config"]["seed"] == 7
    assert payload["layers"] == [6, 3, 1]


def test_family_counts_and_dot(tmp_path):
    out = tmp_path / "fam.dot"
    res = run("family", data("linear_a4.json"), "-n", "2", "--dot", str(out))
    assert res.exit_code == 0
    assert "20 vertices" in res.output
    assert out.read_text().startswith("digraph")


def test_family_rejects_non_dynkin(tmp_path):
    bad = tmp_path / "cycle.json"
    bad.write_text(json.dumps({
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"},
                   {"name": "b", "from": "2", "to": "1"}]}))
    res = run("family", str(bad), "-n", "1")
    assert res.exit_code != 0


def test_cone_roundtrip(tmp_path):
    out = tmp_path / "cone.json"
    res = run("cone", data("linear_a2.json"), "-n", "1", "-o", str(out))
    assert res.exit_code == 0
    d = load_json(str(out))
    alg = algebra_from_dict(d)
    assert len(alg.vertices) == 3 and alg.dimension == 5
    # export then import reproduces an equal presentation
    assert to_json(presentation_to_dict(presentation_from_dict(d))) == \
        to_json({k: v for k, v in d.items() if k != "length_cap"})


def test_module_json_roundtrip():
    alg = algebra_from_dict(load_json(data("auslander_a3_linear.json")))
    from higherar.reps import injective
    x = injective(alg, "5")
    d = module_to_dict(x)
    y = module_from_dict(alg, d)
    assert y.dims == x.dims and y.mats == x.mats


def test_derived_command():
    res = run("--window", "-1:1", "derived", data("linear_a3.json"), "-n", "1")
    assert res.exit_code == 0
    assert "pass" in res.output


def test_derived_on_auslander_a4():
    res = run("--window", "-2:2", "derived", data("auslander_a4.json"),
              "-n", "2")
    assert res.exit_code == 0
    assert "pass" in res.output


def test_tower_command():
    res = run("tower", "-m", "2", "--n-max", "2")
    assert res.exit_code == 0
    assert "vertex counts: [2, 3, 4]" in res.output


def test_tower_full_scale():
    # the level counts of the linear tower of width four through level three
    res = run("tower", "-m", "4", "--n-max", "3")
    assert res.exit_code == 0, res.output
    assert "vertex counts: [4, 10, 20, 35]" in res.output
    for line in res.output.splitlines():
        if line and line[0].isdigit():
            cells = line.split("\t")
            assert cells[3] == "yes" and cells[4] == "yes"


def test_paper_subset_and_determinism(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    res1 = run("paper", "--out-dir", str(out1), "--only", "5,9")
    assert res1.exit_code == 0, res1.output
    res2 = run("paper", "--out-dir", str(out2), "--only", "5,9")
    assert res2.exit_code == 0
    for name in ("report.tsv", "report.json", "criteria.png",
                 "golden_algebra.png", "golden_layers.png",
                 "golden_ar_quiver.dot", "a4_family_n2.dot",
                 "a4_family_n2.png"):
        b1 = (out1 / name).read_bytes()
        b2 = (out2 / name).read_bytes()
        assert b1 == b2, f"{name} differs between runs"
