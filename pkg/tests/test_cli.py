import json
from importlib.resources import files

import pytest

from rankone.cli import main

DATA = files("rankone") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_a6_passes(capsys):
    code, out, err = run(capsys, "check", "--builtin", "A6")
    assert code == 0
    r = json.loads(out)
    assert r["verdict"] == "PASS"
    assert r["alignment"]["nbar"] == {"1": 23, "C2": 7, "C3a": 11, "C4": 7}
    assert "verdict: PASS" in err


def test_a7_needs_route(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "A7")
    assert code == 1
    assert json.loads(out)["verdict"] == "FAIL"


@pytest.mark.parametrize("extra", [["--auto-typeB"], ["--character-file", str(DATA / "a7_typeB_p3.json")]])
def test_a7_with_character_route(capsys, extra):
    code, out, err = run(capsys, "check", "--builtin", "A7", *extra)
    assert code == 0
    r = json.loads(out)
    assert r["route"] == "characters"
    assert not r["closure"]["passed"]
    w = r["closure"]["failures"][0]["witnesses"]
    assert {(x["H"], x["K"], x["L"], x["join"]) for x in w} == {("C2", "C4", "C4", "Dic12")}
    assert len(w) == 1
    assert "level closure fails" in err


def test_qd3_fails(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "Qd3", "--p", "3")
    assert code == 1
    assert json.loads(out)["qd"]["3"]["involved"]


def test_group_file(capsys, tmp_path):
    p = tmp_path / "a4.txt"
    p.write_text("4\n(1 2 3)\n(1 2)(3 4)\n")
    code, out, _ = run(capsys, "check", "--group", str(p))
    assert code in (0, 1)
    assert json.loads(out)["group"]["order"] == 12


@pytest.mark.parametrize("argv, code", [
    (["check", "--builtin", "Foo"], 2),
    (["check", "--group", "/nonexistent/file.txt"], 2),
    (["check", "--builtin", "S9"], 3),
])
def test_error_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error: ")


def test_bad_json_is_parse_error(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "complex", "--complex", str(p))[0] == 2


@pytest.mark.parametrize("name, code, oriented", [
    ("reflection_circle.json", 0, False),
    ("rotation_circle.json", 0, True),
])
def test_complex_examples(capsys, name, code, oriented):
    got, out, _ = run(capsys, "complex", "--complex", str(DATA / "complexes" / name))
    assert got == code
    r = json.loads(out)
    assert r["oriented"]["passed"] is oriented
    assert r["sphere"]["passed"] and r["algrep"]["passed"] and r["tight"]


def test_corrupted_complex(capsys):
    code, _, err = run(capsys, "complex", "--complex", str(DATA / "complexes" / "corrupted_boundary.json"))
    assert code == 4 and "error:" in err


def test_nbar_override_fails_sphere(capsys, tmp_path):
    p = tmp_path / "nbar.json"
    p.write_text(json.dumps({"1": 1, "C2": 1}))
    code, out, _ = run(capsys, "complex", "--complex", str(DATA / "complexes" / "reflection_circle.json"),
                       "--nbar", str(p))
    assert code == 1
    assert json.loads(out)["nbar"]["source"] == "file"


def test_goldens_bundled(capsys):
    code, out, _ = run(capsys, "goldens")
    assert code == 0
    assert json.loads(out)["verdict"] == "PASS"


def test_goldens_tampered(capsys, tmp_path):
    table = json.loads((DATA / "goldens.json").read_text())
    table["A6"]["sylow2"] = "Q8"
    p = tmp_path / "g.json"
    p.write_text(json.dumps(table))
    code, _, err = run(capsys, "goldens", "--goldens", str(p), "--only", "A6")
    assert code == 1
    assert "sylow2: expected 'Q8', got 'D8'" in err


def test_json_out_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "check", "--builtin", "A6", "--json-out", str(a))[0] == 0
    assert run(capsys, "check", "--builtin", "A6", "--json-out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
