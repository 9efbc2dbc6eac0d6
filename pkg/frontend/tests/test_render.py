import hashlib
import json
from pathlib import Path

import pytest

from fwplots import PlotError, PlotSpec, load_run_dir, render
from fwplots.cli import main

HEADER = "k,f,fw_gap,alpha,L_k,checks\n"


def make_run_dir(tmp_path, with_f_star=True, methods=("fw-a", "fw-b")):
    run = tmp_path / "run"
    run.mkdir()
    entries = []
    for i, name in enumerate(methods):
        rows = [HEADER]
        f = 1.0 + i
        for k in range(20):
            f *= 0.8
            rows.append(f"{k},{f!r},{f * 2!r},0.5,1.0,1\n")
        (run / f"{name}.csv").write_text("".join(rows))
        entries.append({"name": name, "method": "adaptive_bregman_fw", "csv": f"{name}.csv"})
    manifest = {"methods": entries}
    if with_f_star:
        manifest["f_star_used"] = 0.0
    (run / "manifest.json").write_text(json.dumps(manifest))
    return run


def dir_digest(path: Path):
    return {
        p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(path.iterdir())
    }


def test_render_gap_figure(tmp_path):
    run = make_run_dir(tmp_path)
    out = tmp_path / "fig.png"
    result = render(PlotSpec(run_dir=run, out_path=out))
    assert result == out
    assert out.stat().st_size > 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_series_count_matches_manifest(tmp_path):
    run = make_run_dir(tmp_path, methods=("a", "b", "c"))
    manifest, series = load_run_dir(run)
    assert len(series) == len(manifest["methods"]) == 3


def test_input_dir_untouched(tmp_path):
    run = make_run_dir(tmp_path)
    before = dir_digest(run)
    render(PlotSpec(run_dir=run, out_path=tmp_path / "fig.png"))
    assert dir_digest(run) == before


def test_fw_gap_axis_needs_no_f_star(tmp_path):
    run = make_run_dir(tmp_path, with_f_star=False)
    out = render(PlotSpec(run_dir=run, y_axis="fw_gap", out_path=tmp_path / "g.png"))
    assert out.stat().st_size > 0


def test_gap_axis_without_f_star_fails(tmp_path):
    run = make_run_dir(tmp_path, with_f_star=False)
    with pytest.raises(PlotError):
        render(PlotSpec(run_dir=run, out_path=tmp_path / "g.png"))


def test_missing_manifest_fails(tmp_path):
    with pytest.raises(PlotError):
        load_run_dir(tmp_path)


def test_empty_csv_fails(tmp_path):
    run = make_run_dir(tmp_path, methods=("a",))
    (run / "a.csv").write_text(HEADER)
    with pytest.raises(PlotError):
        load_run_dir(run)


def test_cli_roundtrip(tmp_path, capsys):
    run = make_run_dir(tmp_path)
    out = tmp_path / "cli.png"
    assert main([str(run), "--y", "fwgap", "--out", str(out)]) == 0
    assert out.is_file()
    assert main([str(tmp_path / "nope"), "--out", str(out)]) == 1
