import csv
import json
from pathlib import Path

import numpy as np
import pytest

from bregfw.cli import CSV_HEADER, main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run_config(name, out_dir, extra=()):
    return main(["run", str(CONFIGS / name), "--out", str(out_dir), *extra])


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_run_quadratic_roundtrip(tmp_path):
    out = tmp_path / "quad"
    assert run_config("quadratic_small.json", out, ("--strict",)) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert len(manifest["methods"]) == 3
    for entry in manifest["methods"]:
        assert (out / entry["csv"]).is_file()
        assert entry["violations"] == [] or entry["method"] == "classic_fw"
    assert main(["verify", str(out)]) == 0


def test_run_poisson_small_roundtrip(tmp_path):
    out = tmp_path / "poi"
    assert run_config("poisson_small.json", out, ("--strict",)) == 0
    assert main(["verify", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    # best_found: the minimum f over every method's full trajectory
    assert manifest["f_star_used"] <= min(e["f_final"] for e in manifest["methods"])


def test_csv_schema_and_roundtrip_floats(tmp_path):
    out = tmp_path / "quad"
    assert run_config("quadratic_small.json", out) == 0
    with open(out / "fw-adaptive.csv", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        assert header == CSV_HEADER
        for row in reader:
            for cell in row[1:5]:
                assert repr(float(cell)) == cell  # shortest round-trip form


def test_run_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_config("poisson_small.json", a) == 0
    assert run_config("poisson_small.json", b) == 0
    for name in ("fw-1.5.csv", "fw-2.0.csv", "fw-classic.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_threads_match_serial(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_config("svm_toy.json", a) == 0
    assert run_config("svm_toy.json", b, ("--threads", "4")) == 0
    for name in ("fw-1.5.csv", "fw-2.0.csv", "fw-sqL2.csv", "fw-classic.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_malformed_json_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", str(bad)]) == 1
    assert "bad.json:1" in capsys.readouterr().err


def test_missing_method_list_exits_1(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"problem": {"kind": "quadratic"}, "set": {"kind": "l2_ball", "radius": 1.0}, "divergence": {"kind": "squared_euclidean"}}))
    assert main(["run", str(cfg)]) == 1


def test_gen_noiseless_consistency(tmp_path):
    out = tmp_path / "gen"
    assert main(["gen", "poisson", "--n", "5", "--m", "8", "--noise", "0", "--seed", "1", "--out", str(out)]) == 0
    A = np.loadtxt(out / "A.csv", delimiter=",")
    b = np.loadtxt(out / "b.csv", delimiter=",")
    x = np.loadtxt(out / "x_true.csv", delimiter=",")
    np.testing.assert_allclose(A @ x, b, rtol=1e-15, atol=1e-15)
    meta = json.loads((out / "meta.json").read_text())
    assert meta["seed"] == 1


def test_gen_deterministic(tmp_path):
    o1, o2 = tmp_path / "g1", tmp_path / "g2"
    args = ["gen", "poisson", "--n", "4", "--m", "6", "--noise", "0.01", "--seed", "9"]
    assert main(args + ["--out", str(o1)]) == 0
    assert main(args + ["--out", str(o2)]) == 0
    for name in ("A.csv", "b.csv", "x_true.csv", "meta.json"):
        assert (o1 / name).read_bytes() == (o2 / name).read_bytes()


def test_gen_invalid_params(tmp_path):
    assert main(["gen", "poisson", "--n", "0", "--m", "5", "--out", str(tmp_path / "x")]) == 1


def test_verify_empty_dir_exits_1(tmp_path):
    assert main(["verify", str(tmp_path)]) == 1


def test_verify_flags_forged_log(tmp_path):
    out = tmp_path / "quad"
    assert run_config("quadratic_small.json", out) == 0
    csv_path = out / "fw-adaptive.csv"
    rows = read_rows(csv_path)
    # forge an increase in f on the successor of an interior step
    idx = next(i for i, r in enumerate(rows[:-1]) if 0.0 < float(r["alpha"]) < 1.0)
    rows[idx + 1]["f"] = repr(float(rows[idx]["f"]) + 5.0)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    assert main(["verify", str(out)]) == 2
