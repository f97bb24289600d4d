import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from fuzzbl.cli import EXIT_DATA, EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_VALUATION, main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
SCHEMAS = ROOT / "docs" / "schemas"
AUDIT = str(ROOT / "demos" / "data" / "audit.csv")
BELIEFS = str(ROOT / "demos" / "data" / "beliefs.csv")

# name -> (argv, schema); stdout must match tests/golden/<name>.json byte for byte
JSON_CASES = {
    "eval_product": (["eval", "A & B", "--logic", "product", "--set", "A=0.1", "--set", "B=0.2"], "eval"),
    "eval_toy": (["eval", "(E & S & F) -> false", "--logic", "godel", "--set", "E=0.19", "--set", "S=0.05", "--set", "F=0"], "eval"),
    "bias_lukasiewicz": (["bias", "--logic", "lukasiewicz", "--s", "0.5", "--e", "0.8"], "bias"),
    "gen_space_lukasiewicz": (["gen-space", "--logic", "lukasiewicz", "--s", "0.3"], "gen-space"),
    "audit_cv": (["audit", "--logic", "lukasiewicz", "--data", AUDIT, "--protected", "b", "--measure", "cv"], "audit"),
    "audit_eo_godel": (["audit", "--logic", "godel", "--data", AUDIT, "--protected", "a", "--compare", "c", "--measure", "eo"], "audit"),
    "aggregate_biases": (["aggregate", "--logic", "product", "--biases", "[0.1, 0.3, 0.05]"], "aggregate"),
    "aggregate_data": (["aggregate", "--logic", "lukasiewicz", "--data", AUDIT, "--group-column", "group", "--group-column", "sex"], "aggregate"),
    "hw_two": (["hw", "--utilities", "0.3,0.6", "--delta", "0.2"], "hw"),
    "hw_fair": (["hw", "--utilities", "0.8,0.8", "--delta", "0.2", "--fair"], "hw"),
    "belief_fair": (["belief", "fair", "--logic", "godel", "--s", "0.05", "--e", "0.19", "--b", "0.1"], "belief-fair"),
}

# name -> argv with an --out placeholder; file must match tests/golden/<name>.csv
CSV_CASES = {
    "roc_sim_small": ["roc-sim", "--c-min", "1", "--c-max", "8", "--steps", "4", "--n", "3000", "--seed", "1"],
    "hw_contour_5": ["hw", "--delta", "0.2", "--contour", "5"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


@pytest.mark.parametrize("name", sorted(JSON_CASES))
def test_json_golden(name, capsys):
    argv, schema_name = JSON_CASES[name]
    code, out, _ = run(argv, capsys)
    assert code == EXIT_OK
    jsonschema.validate(json.loads(out), schema(schema_name))
    assert out == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CSV_CASES))
def test_csv_golden_and_determinism(name, tmp_path, capsys):
    first, second = tmp_path / "1.csv", tmp_path / "2.csv"
    assert run(CSV_CASES[name] + ["--out", str(first)], capsys)[0] == EXIT_OK
    assert run(CSV_CASES[name] + ["--out", str(second)], capsys)[0] == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes() == (GOLDEN / f"{name}.csv").read_bytes()


def test_exact_product_output(capsys):
    _, out, _ = run(JSON_CASES["eval_product"][0], capsys)
    assert out == '{"truth": 0.02}\n'


def test_belief_train_predict(tmp_path, capsys):
    model = tmp_path / "m.json"
    argv = ["belief", "train", "--in", BELIEFS, "--out", str(model), "--learning-rate", "1", "--max-epochs", "3000", "--seed", "3"]
    code, out, _ = run(argv, capsys)
    assert code == EXIT_OK
    jsonschema.validate(json.loads(out), schema("belief-train"))
    jsonschema.validate(json.loads(model.read_text()), schema("model"))
    first = model.read_bytes()
    assert run(argv, capsys)[1] == out
    assert model.read_bytes() == first
    code, out, _ = run(["belief", "predict", "--model", str(model), "--prule", "0.77", "--cv", "0.1"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, schema("belief-predict"))
    assert 0.0 <= payload["discrimination"] <= 1.0


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"logic": "lukasiewicz", "bias": {"s": 0.5, "e": 0.8}}))
    code, out, _ = run(["--config", str(cfg), "bias"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["bias"] == pytest.approx(0.3)
    # flags win over the config
    code, out, _ = run(["--config", str(cfg), "bias", "--logic", "godel"], capsys)
    assert json.loads(out)["bias"] == 0.5


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], EXIT_USAGE),
        (["frobnicate"], EXIT_USAGE),
        (["bias", "--s", "0.5", "--e", "0.2"], EXIT_USAGE),
        (["bias", "--logic", "zadeh", "--s", "0.5", "--e", "0.2"], EXIT_USAGE),
        (["eval", "A", "--logic", "godel", "--set", "oops"], EXIT_USAGE),
        (["hw", "--delta", "0.2", "--contour", "4"], EXIT_USAGE),
        (["eval", "A &", "--logic", "godel"], EXIT_PARSE),
        (["eval", "Bias[i]", "--logic", "godel"], EXIT_PARSE),
        (["eval", "A & B", "--logic", "godel", "--set", "A=0.5"], EXIT_VALUATION),
        (["eval", "A", "--logic", "godel", "--set", "A=1.5"], EXIT_VALUATION),
        (["bias", "--logic", "godel", "--s", "2", "--e", "0.1"], EXIT_VALUATION),
        (["audit", "--logic", "godel", "--data", "/nonexistent.csv", "--protected", "a"], EXIT_DATA),
        (["audit", "--logic", "godel", "--data", AUDIT, "--protected", "zzz"], EXIT_DATA),
        (["hw", "--utilities", "3,3", "--delta", "0.5"], EXIT_DATA),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_exit_codes_from_files(tmp_path, capsys):
    bad_val = tmp_path / "v.json"
    bad_val.write_text("{not json")
    assert run(["eval", "A", "--logic", "godel", "--valuation", str(bad_val)], capsys)[0] == EXIT_VALUATION
    unlabeled = tmp_path / "u.csv"
    unlabeled.write_text("prediction,label,group\n1,,a\n0,,b\n")
    argv = ["audit", "--logic", "godel", "--data", str(unlabeled), "--protected", "a", "--measure", "fpr"]
    assert run(argv, capsys)[0] == EXIT_DATA
    formula = tmp_path / "f.txt"
    formula.write_text("forall i in G: ~Bias[i]\n")
    good_val = tmp_path / "g.json"
    good_val.write_text(json.dumps({"families": {"Bias": [0.2, 0.5]}, "domains": {"G": 2}}))
    code, out, _ = run(["eval", "--file", str(formula), "--valuation", str(good_val), "--logic", "godel"], capsys)
    assert (code, out) == (EXIT_OK, '{"truth": 0.5}\n')


def test_console_entry_point():
    env = dict(os.environ, PYTHONPATH=str(ROOT / "src"))
    proc = subprocess.run(
        [sys.executable, "-m", "fuzzbl", "eval", "A -> A", "--logic", "product", "--set", "A=0.3"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"truth": 1}\n'
    proc = subprocess.run([sys.executable, "-m", "fuzzbl", "eval", "(", "--logic", "godel"], capture_output=True, env=env)
    assert proc.returncode == EXIT_PARSE
