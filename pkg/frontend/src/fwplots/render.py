"""Read a run directory (per-method CSV logs + manifest.json) and draw
one convergence figure: either f - f* or the FW gap against the iteration
counter, log-scale y by default, one labeled line per method."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


class PlotError(Exception):
    """Run directory unusable for the requested figure."""


@dataclass(frozen=True)
class PlotSpec:
    run_dir: Path
    y_axis: str = "gap_to_fstar"  # or "fw_gap"
    log_y: bool = True
    out_path: Path = Path("convergence.png")

    def __post_init__(self):
        if self.y_axis not in ("gap_to_fstar", "fw_gap"):
            raise PlotError(f"unknown y axis {self.y_axis!r}")


def load_run_dir(run_dir: Path):
    """Parse manifest.json and every method CSV it references."""
    run_dir = Path(run_dir)
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.is_file():
        raise PlotError(f"no manifest.json in {run_dir}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise PlotError(f"{manifest_path}: {exc}") from None
    series = []
    for entry in manifest.get("methods", []):
        csv_path = run_dir / entry["csv"]
        if not csv_path.is_file():
            raise PlotError(f"missing log {csv_path}")
        ks, fs, gaps = [], [], []
        with open(csv_path, newline="") as fh:
            for row in csv.DictReader(fh):
                ks.append(int(row["k"]))
                fs.append(float(row["f"]))
                gaps.append(float(row["fw_gap"]))
        if not ks:
            raise PlotError(f"{csv_path}: empty log")
        series.append({"name": entry["name"], "k": ks, "f": fs, "fw_gap": gaps})
    if not series:
        raise PlotError(f"{run_dir}: manifest lists no methods")
    return manifest, series


def render(spec: PlotSpec) -> Path:
    """Write the figure and return its path."""
    manifest, series = load_run_dir(spec.run_dir)
    if spec.y_axis == "gap_to_fstar":
        f_star = manifest.get("f_star_used")
        if f_star is None:
            raise PlotError("manifest has no f_star_used; use the fw_gap axis")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    floor = 1e-16  # keep log axis defined when a gap touches zero
    for s in series:
        if spec.y_axis == "gap_to_fstar":
            ys = [max(f - f_star, floor) for f in s["f"]]
        else:
            ys = [max(g, floor) for g in s["fw_gap"]]
        ax.plot(s["k"], ys, label=s["name"], linewidth=1.4)
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel("iteration k")
    ax.set_ylabel("f - f*" if spec.y_axis == "gap_to_fstar" else "FW gap")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    out = Path(spec.out_path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
