import io
import json
from fractions import Fraction
from importlib import resources

import pytest

from jacobi_tower.blocks import eisenstein_E4
from jacobi_tower.cli import UsageError, main, parse_word
from jacobi_tower.serialize import from_json_obj


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv("JACOBI_TOWER_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def problem(name):
    return str(resources.files("jacobi_tower") / "problems" / name)


def test_compute_phi01_d8_text():
    code, text = run("compute", "phi01-d8", "--n", "8", "--prec", "1")
    assert code == 0
    assert "8 + ζ₁ + ζ₁⁻¹ + " in text


def test_compute_omega_metadata():
    code, text = run("compute", "omega", "--n", "3", "--prec", "2", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["nvars"] == 3 and doc["meta"]["weight2"] == -6
    assert from_json_obj(doc).nvars == 3


def test_compute_half_exponents_render_as_halves():
    code, text = run("compute", "omega", "--n", "2", "--prec", "0")
    assert code == 0 and "/2" in text


def test_compute_uses_cache(isolated_cache):
    run("compute", "phim2", "--prec", "2")
    assert len(list(isolated_cache.glob("*.json"))) == 1
    code, listing = run("cache", "list")
    assert code == 0 and "phim2" in listing
    code, msg = run("cache", "clear")
    assert "removed 1" in msg


def test_compute_no_cache(isolated_cache):
    code, _ = run("compute", "E4", "--prec", "2", "--no-cache")
    assert code == 0 and not isolated_cache.exists()


def test_unknown_form_is_usage_error():
    code, _ = run("compute", "no-such-form")
    assert code == 2


def test_bad_arguments_are_usage_errors():
    assert run("compute", "phi01", "--prec", "-1")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("verify", "nonsense")[0] == 2


def test_verify_suite_exit_zero():
    code, text = run("verify", "tower", "--prec", "1")
    assert code == 0 and text.rstrip().endswith("OK")


def test_verify_json():
    code, text = run("verify", "--suite", "theta-oracle", "--prec", "1", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["ok"] and doc["suites"][0]["suite"] == "theta-oracle"


def test_verify_failure_exit_one(monkeypatch):
    from jacobi_tower import suites

    monkeypatch.setitem(suites.SUITES, "blocks", lambda prec: [suites.Check("forced", "fail")])
    code, text = run("verify", "blocks")
    assert code == 1 and "FAILED" in text


def test_solve_weight8_problem():
    code, text = run("solve", problem("weight8_d8.json"), "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["dimension"] == 5 and doc["vanishes_identically"]
    assert doc["express"]["a6"] == doc["printed"]["a6"]


def test_solve_empty_forms(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text(json.dumps({"forms": {}}))
    assert run("solve", str(p))[0] == 2


def test_solve_inconsistent_constraints(tmp_path):
    p = tmp_path / "lonely.json"
    p.write_text(json.dumps({"forms": {"a": "E4"}, "prec": 1}))
    code, text = run("solve", str(p))
    assert code == 0 and "dimension 0" in text


def test_solve_unreadable_file(tmp_path):
    assert run("solve", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("solve", str(bad))[0] == 2


def test_parse_word_grammar():
    e4 = eisenstein_E4(2)
    got = parse_word("1/2*E*(E)", lambda name: e4)
    assert got == e4 * e4 * Fraction(1, 2)
    for bad in ("E*(E", "E E", "2*3", "H(2)"):
        with pytest.raises(UsageError):
            parse_word(bad, lambda name: e4)


@pytest.mark.parametrize("name, dim", [
    ("weight2_d8.json", 1),
    ("weight8_d8.json", 5),
    ("weight6_a1.json", 2),
    ("a1_second_order.json", 1),
    ("d2_omega_square.json", 1),
])
def test_shipped_problems_solve(name, dim):
    code, text = run("solve", problem(name), "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["dimension"] == dim and doc["vanishes_identically"]
    assert "printed" in doc
