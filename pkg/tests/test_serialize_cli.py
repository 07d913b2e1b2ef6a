import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactlie import CATALOG, SchemaError, catalog
from contactlie.cli import main
from contactlie.serialize import (decode_document, decode_rational, encode, encode_document,
                                  encode_rational)

ALL_ENTRIES = sorted(CATALOG)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out or err)


# -- rationals


@given(st.fractions())
def test_rational_round_trip(x):
    s = encode_rational(x)
    assert decode_rational(s) == x
    assert "/" not in s or Fraction(s).denominator > 1


@pytest.mark.parametrize("text, value", [("3/6", Fraction(1, 2)), ("-4", Fraction(-4)), (7, Fraction(7))])
def test_parsers_accept_both_forms(text, value):
    assert decode_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, "x", None, [1], True])
def test_bad_rationals_name_their_path(bad):
    with pytest.raises(SchemaError) as info:
        decode_rational(bad, "$.metric[0][1]")
    assert info.value.path == "$.metric[0][1]"


def test_canonical_rational_strings():
    assert encode_rational(Fraction(4, 2)) == "2"
    assert encode_rational(Fraction(-3, 6)) == "-1/2"
    assert encode({"a": [Fraction(1, 3), 2, True, None]}) == {"a": ["1/3", 2, True, None]}


# -- documents


@pytest.mark.parametrize("name", ALL_ENTRIES)
def test_catalog_documents_round_trip(name):
    e = catalog(name)
    doc = encode_document(e.algebra, e.structure, e.metric)
    text = json.dumps(doc, sort_keys=True)
    L, S, g = decode_document(json.loads(text))
    assert (L, S, g.g) == (e.algebra, e.structure, e.metric.g)
    assert json.dumps(encode_document(L, S, g), sort_keys=True) == text


def test_schema_errors_locate_the_problem():
    doc = encode_document(catalog("heisenberg_real").algebra)
    doc["algebra"]["brackets"][0]["coeffs"] = ["1", "x", "0"]
    with pytest.raises(SchemaError) as info:
        decode_document(doc)
    assert info.value.path == "$.algebra.brackets[0].coeffs[1]"


# -- command line


def test_classify_dim3_example(capsys):
    code, rep = run_json(capsys, "classify", "--dim3", "--catalog", "dim3_family",
                         "--params", "a=0,b=1,alpha=1")
    assert code == 0 and rep["label"] == "so(3)"


def test_homology_example(capsys):
    code, rep = run_json(capsys, "homology", "--m", "2", "--n", "1")
    assert code == 0 and rep["invariant_factors"] == [2, 2, 2, 2, 2] and rep["b1"] == 0
    code, rep = run_json(capsys, "homology", "--group", "q8", "--n", "2")
    assert rep["invariant_factors"] == [2, 2, 2, 2]


def test_validate_reports_jacobi_violation(capsys, tmp_path):
    doc = {"algebra": {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": ["1", "0", "0"]},
                                              {"i": 2, "j": 3, "coeffs": ["0", "1", "0"]}]}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "validate", str(f))
    assert code == 1
    v = rep["violations"][0]
    assert v["identity"] == "jacobi" and v["where"] == [1, 2, 3]


def test_validate_structure_violation(capsys, tmp_path):
    e = catalog("quaternionic_heisenberg")
    doc = encode_document(e.algebra, e.structure, e.metric)
    doc["structure"]["structures"][1], doc["structure"]["structures"][2] = \
        doc["structure"]["structures"][2], doc["structure"]["structures"][1]
    f = tmp_path / "swapped.json"
    f.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "validate", str(f))
    assert code == 1 and not rep["structure"]["ok"]


@pytest.mark.parametrize("argv", [("validate", "/nonexistent/file.json"), ("homology", "--m", "2"),
                                  ("catalog", "--name", "nope"), ("classify", "--catalog", "nope"),
                                  ("frobnicate",), ("homology", "--group", "q16", "--n", "1")])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invalid_json_exits_2(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text("{")
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and json.loads(err)["error"] == "schema"


def test_inadmissible_m_is_a_math_failure(capsys):
    assert run(capsys, "homology", "--m", "5", "--n", "1")[0] == 1


def test_catalog_export_then_analyze(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--name", "so3_semidirect", "--params", "delta=2")
    assert code == 0
    f = tmp_path / "so3.json"
    f.write_text(out)
    code, rep = run_json(capsys, "canonical", str(f))
    assert code == 0 and rep["beta"] == "4" and rep["canonical"]
    code, rep = run_json(capsys, "classify", str(f))
    assert rep["label"] == "so(3)⋉ℝ⁴"
    code, rep = run_json(capsys, "torsion", "--check-parallel", str(f))
    assert code == 0 and rep["parallel_torsion"] is True
    code, rep = run_json(capsys, "invariants", str(f))
    assert code == 0


def test_parallel_flags_are_distinguished(capsys):
    _, rep = run_json(capsys, "canonical", "--catalog", "quaternionic_heisenberg")
    assert rep["parallel_canonical"] is True
    _, rep = run_json(capsys, "torsion", "--check-parallel", "--catalog", "quaternionic_heisenberg")
    assert rep["parallel_torsion"] is False


def test_catalog_list(capsys):
    _, rep = run_json(capsys, "catalog", "--list")
    assert rep["names"] == ALL_ENTRIES


@pytest.mark.parametrize("argv", [("catalog", "--name", "sasaki5_g0", "--params", "cos=3/5,sin=4/5"),
                                  ("invariants", "--catalog", "free_nilpotent_times_R"),
                                  ("homology", "--m", "6", "--n", "3")])
def test_output_is_deterministic(capsys, argv):
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_text_output_and_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CONTACTLIE_OUTPUT", "text")
    code, out, _ = run(capsys, "homology", "--m", "4", "--n", "1")
    assert code == 0 and "invariant_factors: [2, 2, 4]" in out and "b1: 0" in out
    code, out, _ = run(capsys, "homology", "--m", "4", "--n", "1", "--output", "json")
    assert json.loads(out)["b1"] == 0
    monkeypatch.setenv("CONTACTLIE_OUTPUT", "yaml")
    assert run(capsys, "catalog", "--list")[0] == 2


def test_text_output_nests_reports(capsys):
    code, out, _ = run(capsys, "--output", "text", "invariants", "--catalog", "so3_semidirect")
    assert code == 0
    assert "{" not in out and "psi" in out and "delta: 1" in out


def test_stdin_input(capsys, monkeypatch):
    e = catalog("heisenberg_real")
    doc = encode_document(e.algebra, e.structure, e.metric)
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
    code, rep = run_json(capsys, "classify", "-")
    assert code == 0 and rep["label"] == "𝔥₁^ℝ"


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "contactlie.cli", "homology", "--m", "3", "--n", "1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["invariant_factors"] == [3, 3, 3]
