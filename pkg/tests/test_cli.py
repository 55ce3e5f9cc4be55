import json

import jsonschema
import pytest

from findim.cli import EXIT_INFINITE, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_UNDETERMINED, run
from findim.report import load_schema


@pytest.fixture(scope="module")
def validator():
    return jsonschema.Draft202012Validator(load_schema())


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, validator, *argv):
    code, out, err = call(capsys, *argv, "--json")
    report = json.loads(out)
    validator.validate(report)
    return code, report


def test_analyze_two_loops(capsys, validator, data_dir):
    code, r = call_json(capsys, validator, "analyze", data_dir / "two_loops.qalg")
    assert code == EXIT_OK
    assert r["algebra"]["dimension"] == 12
    assert r["s"] == 1
    assert (r["findim_interval"]["lower"], r["findim_interval"]["upper"]) == (2, 3)
    assert r["findim_interval"]["witness"] == "Q(2; eps)"
    assert r["findim_interval"]["witness_oracle_pdim"] == {"finite": True, "value": 2}
    assert [x["pdim"] for x in r["simple_pdims"]] == [
        {"finite": False, "value": None}, {"finite": False, "value": None},
        {"finite": True, "value": 1}, {"finite": True, "value": 0}]
    assert r["rho"]["right"] == {"finite": True, "value": 3}
    mods = {m["name"]: m for m in r["modules"]}
    assert mods["W"]["pdim"] == {"finite": True, "value": 3}
    assert mods["T"]["pdim"] == {"finite": True, "value": 1}


def test_analyze_text_output(capsys, data_dir):
    code, out, _ = call(capsys, "analyze", data_dir / "two_loops.qalg")
    assert code == EXIT_OK
    assert "lie in [2, 3]" in out
    assert "module W = Q(1; alpha + beta): pdim 3" in out


def test_analyze_side_left(capsys, validator, data_dir):
    code, r = call_json(capsys, validator, "analyze", data_dir / "two_loops.qalg", "--side", "left")
    assert code == EXIT_OK
    assert "right_simple_pdims" not in r
    assert "right" not in r["rho"]


def test_analyze_tiled(capsys, validator, data_dir):
    code, r = call_json(capsys, validator, "analyze", data_dir / "tiled5.tord", "--cutoff", "8")
    assert code == EXIT_OK
    t = r["tiled"]
    assert t["findim_lambda"]["lower"] == t["findim_lambda"]["upper"] == 2
    assert t["findim_order"]["lower"] == t["findim_order"]["upper"] == 3
    assert t["gl_dim_infinite"] is True
    assert len(t["identifications"]) == 3


def test_syzygy_command(capsys, validator, data_dir):
    code, r = call_json(capsys, validator, "syzygy", data_dir / "tiled5.tord", "S(1)", "-k", "3")
    assert code == EXIT_OK
    assert [s["layers"] for s in r["steps"][1:]] == [
        [[0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]],
        [[1, 0, 1, 0, 0], [0, 1, 0, 1, 1], [1, 0, 0, 0, 0]],
        [[0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]],
    ]
    code, r = call_json(capsys, validator, "syzygy", data_dir / "two_loops.qalg", "S(1)", "-k", "1")
    assert r["method"] == "engine"
    assert [(s["module"], s["multiplicity"]) for s in r["steps"][1]["summands"]] == [("I(alpha)", 1), ("I(beta)", 1)]


def test_pdim_repindex_gldim(capsys, validator, data_dir):
    qalg = data_dir / "two_loops.qalg"
    _, r = call_json(capsys, validator, "pdim", qalg, "Q(1; alpha + beta)")
    assert (r["method"], r["pdim"]) == ("oracle", {"finite": True, "value": 3})
    _, r = call_json(capsys, validator, "pdim", qalg, "I(eps)")
    assert (r["method"], r["pdim"]) == ("engine", {"finite": True, "value": 1})
    _, r = call_json(capsys, validator, "repindex", qalg, "S(1)")
    assert r["rho_value"] == {"finite": True, "value": 2}
    _, r = call_json(capsys, validator, "gldim", data_dir / "dual_numbers.qalg")
    assert r["gl_dim"] == {"finite": False, "value": None}


def test_import_tiled(capsys, validator, data_dir):
    _, r = call_json(capsys, validator, "import-tiled", data_dir / "tiled2.tord")
    assert r["relations"] == ["b1_2*b2_1", "b2_1*b1_2"]
    _, r = call_json(capsys, validator, "import-tiled", data_dir / "tiled5.tord")
    assert r["relations"] is None
    assert len(r["identifications"]) == 3


def test_oracle_check_on_file_and_samples(capsys, validator, data_dir):
    code, r = call_json(capsys, validator, "oracle-check", data_dir / "two_loops.qalg")
    assert code == EXIT_OK and r["checked"] == 1 and r["mismatches"] == []
    code, r = call_json(capsys, validator, "oracle-check", "--samples", "5", "--seed", "3")
    assert code == EXIT_OK and r["checked"] == 5


def test_oracle_check_rejects_non_monomial(capsys, data_dir):
    code, _, err = call(capsys, "oracle-check", data_dir / "tiled5.tord")
    assert code == EXIT_INPUT
    assert "monomial" in err


def test_json_is_deterministic(capsys, data_dir):
    outs = [call(capsys, "analyze", data_dir / "tiled5.tord", "--cutoff", "8", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_seed_from_environment(capsys, validator, data_dir, monkeypatch):
    monkeypatch.setenv("FINDIM_SEED", "17")
    _, r = call_json(capsys, validator, "gldim", data_dir / "two_loops.qalg")
    assert r["seed"] == 17
    _, r = call_json(capsys, validator, "gldim", data_dir / "two_loops.qalg", "--seed", "5")
    assert r["seed"] == 5


def test_timing_flag(capsys, validator, data_dir):
    _, r = call_json(capsys, validator, "gldim", data_dir / "two_loops.qalg", "--timing")
    assert r["timing_seconds"] >= 0


@pytest.mark.parametrize("text, needle", [
    ("", "empty"),
    ("vertices 1\nfoo\n", "line 2, column 1"),
    ("vertices 1 2\narrow a 1 2\nmodule M = Q(2; a)\n", "line 3, column 17"),
])
def test_input_errors_exit_one(capsys, tmp_path, text, needle):
    f = tmp_path / "bad.qalg"
    f.write_text(text)
    code, out, err = call(capsys, "analyze", f)
    assert code == EXIT_INPUT
    assert needle in err
    assert out == ""


def test_missing_file_and_bad_module(capsys, tmp_path, data_dir):
    assert call(capsys, "analyze", tmp_path / "none.qalg")[0] == EXIT_INPUT
    assert call(capsys, "pdim", data_dir / "two_loops.qalg", "I(alpha*delta)")[0] == EXIT_INPUT
    assert call(capsys, "pdim", data_dir / "two_loops.qalg", "S(9)")[0] == EXIT_INPUT


def test_infinite_dimensional_exit_two(capsys, tmp_path):
    f = tmp_path / "free.qalg"
    f.write_text("vertices 1\narrow x 1 1\n")
    code, _, err = call(capsys, "analyze", f)
    assert code == EXIT_INFINITE
    assert "infinite dimensional" in err


def test_strict_exit_three_on_cutoff(capsys, data_dir):
    args = ("pdim", data_dir / "dual_numbers.qalg", "Q(1; a)", "--cutoff", "0")
    code, out, _ = call(capsys, *args)
    assert code == EXIT_OK
    assert "cutoff" in out
    assert call(capsys, *args, "--strict")[0] == EXIT_UNDETERMINED


def test_mismatch_exit_code_is_distinct():
    assert len({EXIT_OK, EXIT_INPUT, EXIT_INFINITE, EXIT_UNDETERMINED, EXIT_MISMATCH}) == 5
