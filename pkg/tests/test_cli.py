import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from mehlerlab.cli import OUTPUT_ENV, main
from mehlerlab.config import PRESETS, preset


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUTPUT_ENV, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def value_of(line):
    return line.split("  err=")[0]


def test_eval_cf_stationary(capsys):
    code, out, _ = run(capsys, "eval", "cf", "--preset", "gaussian-scalar", "--s=-inf", "--t=0", "--a=e1")
    assert code == 0
    text = value_of(out.strip())
    assert text.endswith(" + 0i")
    assert abs(float(text.split(" ")[0]) - math.exp(-0.25)) <= 1e-9
    assert text == "7.788007830714049e-1 + 0i"


def test_eval_cf_at_equal_times(capsys):
    code, out, _ = run(capsys, "eval", "cf", "--s=0", "--t=0", "--a=e1")
    assert code == 0 and value_of(out.strip()) == "1"


def test_eval_kappa(capsys):
    code, out, _ = run(capsys, "eval", "kappa", "--t=1", "--x=e1")
    coords = value_of(out.strip()).split(", ")
    assert code == 0 and coords[1:] == ["0", "0"]
    assert abs(float(coords[0]) - math.exp(-1)) <= 1e-15


def test_eval_kappa_from_config_law(capsys):
    code, out, _ = run(capsys, "eval", "kappa", "--t=0")
    assert code == 0
    np.testing.assert_allclose([float(c) for c in value_of(out.strip()).split(", ")], [0.5, -0.3, 0.2])


def test_eval_exponent_covariance_and_entrance(capsys):
    _, out, _ = run(capsys, "eval", "exponent", "--s=-inf", "--t=0.4", "--a=0,2,0")
    assert float(value_of(out)) == pytest.approx(1.0, rel=1e-9)
    _, out, _ = run(capsys, "eval", "covariance", "--s=-inf", "--t=0")
    assert [float(v) for v in value_of(out).split(", ")] == pytest.approx([0.5] * 3, rel=1e-9)
    _, out, _ = run(capsys, "eval", "entrance-cf", "--t=0", "--a=e1", "--law", "zero")
    assert float(value_of(out).split(" ")[0]) == pytest.approx(math.exp(-0.25), rel=1e-9)


def test_eval_csv_appends(capsys, tmp_path):
    for t in ("0", "1"):
        run(capsys, "eval", "cf", "--s=-inf", f"--t={t}", "--a=e1", "--csv", "rows.csv")
    rows = list(csv.reader(open(tmp_path / "rows.csv")))
    assert rows[0] == ["quantity", "s", "t", "a", "x", "index", "re", "im", "err"]
    assert len(rows) == 3 and rows[1][0] == "cf" and rows[1][1] == "-inf"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["eval", "cf", "--s=1", "--t=0", "--a=e1"], 3),
        (["eval", "covariance", "--preset", "stable-scalar", "--s=-inf", "--t=0"], 2),
        (["eval", "cf", "--s=0", "--t=1", "--a=e9"], 2),
        (["eval", "cf", "--s=0", "--t=1"], 2),
        (["eval", "cf", "--preset", "nope", "--s=0", "--t=1", "--a=e1"], 2),
        (["eval", "kappa", "--t=1", "--preset", "periodic-stable"], 2),
    ],
)
def test_eval_error_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and err.startswith("mehlerlab:")


def test_verify_passing_preset(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--preset", "gaussian-scalar", "--out", "res")
    assert code == 0 and out.strip().splitlines()[-1].startswith("PASS")
    assert {p.name for p in (tmp_path / "res").iterdir()} == {"report.csv", "report.json", "cf.csv"}
    doc = json.loads((tmp_path / "res" / "report.json").read_text())
    assert doc["passed"] and doc["environment"]["config_hash"] == preset("gaussian-scalar").digest()


def test_verify_negative_control_exits_1(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--preset", "corrupted-kappa", "--checks", "flow,ck")
    assert code == 1
    rows = list(csv.DictReader(open(tmp_path / "out" / "report.csv")))
    assert {r["verdict"] for r in rows if r["check"] == "flow"} >= {"FAIL"}
    assert {r["verdict"] for r in rows if r["check"] == "ck"} == {"PASS"}


def test_verify_malformed_config_writes_nothing(capsys, tmp_path):
    (tmp_path / "bad.yaml").write_text("space: {dim: 3}\nevolution: {kind: scalar_contraction, omega: -1}\nsymbol: {kind: gaussian}\n")
    before = set(tmp_path.iterdir())
    code, out, err = run(capsys, "verify", "--config", "bad.yaml", "--out", "res")
    assert code == 2 and "line 2, evolution.omega" in err
    assert set(tmp_path.iterdir()) == before


def test_verify_unknown_check_is_config_error(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--checks", "ck,bogus", "--out", "res")
    assert code == 2 and not (tmp_path / "res").exists()


def test_config_and_preset_together(capsys, tmp_path):
    (tmp_path / "m.yaml").write_text(preset("cp-scalar").to_yaml())
    assert run(capsys, "verify", "--config", "m.yaml", "--preset", "cp-scalar")[0] == 2


def test_output_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env-dir"))
    assert run(capsys, "verify", "--checks", "ck")[0] == 0
    assert (tmp_path / "env-dir" / "report.csv").exists() and not (tmp_path / "out").exists()
    # an explicit --out still wins
    run(capsys, "verify", "--checks", "ck", "--out", "flag-dir")
    assert (tmp_path / "flag-dir" / "report.csv").exists()


def test_verify_from_config_file_json_only(capsys, tmp_path):
    doc = preset("cp-scalar").to_dict()
    doc["output"]["formats"] = ["json"]
    doc["experiment"]["checks"] = ["ck", "symmetry"]
    import yaml

    (tmp_path / "m.yaml").write_text(yaml.safe_dump(doc))
    assert run(capsys, "verify", "--config", "m.yaml")[0] == 0
    assert [p.name for p in (tmp_path / "out").iterdir()] == ["report.json"]


def test_verify_report_is_bit_stable(capsys, tmp_path):
    run(capsys, "verify", "--preset", "stable-scalar", "--out", "a")
    run(capsys, "verify", "--preset", "stable-scalar", "--out", "b")
    for name in ("report.csv", "cf.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


# sample -------------------------------------------------------------------------------------


def read_samples(path):
    rows = list(csv.reader(open(path)))
    return rows[0], np.array([[float(v) for v in r[1:]] for r in rows[1:]])


def test_sample_csv_schema(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--preset", "cp-scalar", "--t=0", "--n", "50", "--output", "s.csv")
    header, x = read_samples(tmp_path / "s.csv")
    assert code == 0 and header == ["draw_id", "x_1", "x_2", "x_3"] and x.shape == (50, 3)


def test_sample_is_deterministic_and_seeded(capsys, tmp_path):
    for name, seed in (("a.csv", 7), ("b.csv", 7), ("c.csv", 8)):
        run(capsys, "sample", "--preset", "stable-scalar", "--t=0", "--n", "200", "--seed", str(seed), "--output", name)
    a, b, c = ((tmp_path / n).read_bytes() for n in ("a.csv", "b.csv", "c.csv"))
    assert a == b and a != c


def test_sample_mean_matches_kappa(capsys, tmp_path):
    run(capsys, "sample", "--t=0", "--n", "20000", "--output", "s.csv")
    _, x = read_samples(tmp_path / "s.csv")
    # gaussian-scalar at t=0: kappa_0 = x0, stationary covariance I/2
    assert np.all(np.abs(x.mean(0) - [0.5, -0.3, 0.2]) <= 4 * math.sqrt(0.5 / 20000))


def test_sample_base_law_at_equal_times_is_zero(capsys, tmp_path):
    run(capsys, "sample", "--law", "base", "--s=1", "--t=1", "--n", "5", "--output", "s.csv")
    _, x = read_samples(tmp_path / "s.csv")
    assert np.all(x == 0)


def test_sample_bad_n(capsys):
    assert run(capsys, "sample", "--t=0", "--n", "0")[0] == 2


# presets --------------------------------------------------------------------------------------


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0 and len(out.strip().splitlines()) == len(PRESETS)
    for name in PRESETS:
        assert name in out


def test_presets_show_is_a_loadable_config(capsys, tmp_path):
    _, out, _ = run(capsys, "presets", "--show", "periodic-stable")
    (tmp_path / "p.yaml").write_text(out)
    assert run(capsys, "verify", "--config", "p.yaml", "--checks", "periodic")[0] == 0


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "mehlerlab.cli", "eval", "cf", "--s=-inf", "--t=0", "--a=e1"],
        capture_output=True, text=True, cwd=tmp_path, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("7.788007830714049e-1 + 0i")
