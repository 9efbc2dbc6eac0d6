"""Command-line front end.

Subcommands:

* ``run <config.json>``  -- execute every method spec in the experiment
  config, write one CSV of per-iteration telemetry per method plus a
  ``manifest.json``, and verify the descent/convergence inequalities.
* ``gen poisson --n --m --noise --seed --out``  -- materialize a synthetic
  Poisson instance as CSV matrices with a JSON sidecar.
* ``verify <run-dir>``  -- re-check the recorded inequalities offline from
  the logs alone.

Exit codes: 0 success, 1 error, 2 (with ``--strict``) invariant breaches.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import bregman, lmo, problems, solver
from .errors import BregfwError, ConfigError

CSV_HEADER = ["k", "f", "fw_gap", "alpha", "L_k", "checks"]

_METHODS = {
    "adaptive_bregman_fw": solver.Method.ADAPTIVE_BREGMAN_FW,
    "classic_fw": solver.Method.CLASSIC_FW,
    "adaptive_euclidean_fw": solver.Method.ADAPTIVE_EUCLIDEAN_FW,
}

DEFAULTS = {
    "gamma": 2.0,
    "N": 100,
    "gap_tol": 0.0,
    "f_star_policy": "best_found",
    "interior_floor": 1e-6,
    "r2_samples": 20000,
}


def _fmt(v: float) -> str:
    """Shortest decimal that round-trips (repr of a Python float)."""
    return repr(float(v))


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def build_problem(cfg: dict, seed: int, base_dir: Path | None = None):
    """Resolve the problem/set/divergence section of a config.

    Returns (objective, feasible_set, divergence_by_kind resolver inputs,
    known f_star or None, auto L hint, x0).
    """
    pspec = cfg.get("problem")
    _require(isinstance(pspec, dict) and "kind" in pspec, "config needs problem.kind")
    kind = pspec["kind"]
    f_star_known = None
    l_hint = 1.0
    svm_parts = None

    if kind == "poisson":
        n, m = int(pspec.get("n", 50)), int(pspec.get("m", 100))
        noise = float(pspec.get("noise", 0.01))
        inst = problems.generate_poisson(n, m, noise, seed)
        obj = inst.objective
        l_hint = inst.smoothness
        if noise == 0.0:
            f_star_known = 0.0
    elif kind == "quadratic":
        dim = int(pspec.get("dim", 20))
        radius = float(pspec.get("radius", 1.0))
        obj, _, f_star_known = problems.make_random_quadratic(dim, seed, radius)
        l_hint = obj.euclidean_lipschitz()
    elif kind == "svm_csv":
        _require("path" in pspec, "svm_csv needs problem.path")
        lam = float(pspec.get("lambda", 100.0))
        pad = int(pspec.get("pad_dim"))
        csv_path = Path(pspec["path"])
        if base_dir is not None and not csv_path.is_absolute():
            csv_path = base_dir / csv_path
        obj, ball, div = problems.load_svm_csv(
            csv_path,
            lam,
            pad,
            has_header=bool(pspec.get("has_header", False)),
            squared_reg=bool(pspec.get("squared_reg", False)),
        )
        svm_parts = (ball, div)
        l_hint = 1.0
    else:
        raise ConfigError(f"unknown problem kind {kind!r}")

    sspec = cfg.get("set")
    if sspec is None and svm_parts is not None:
        feasible = svm_parts[0]
    else:
        _require(isinstance(sspec, dict) and "kind" in sspec, "config needs set.kind")
        feasible = lmo.make_set(
            sspec["kind"],
            obj.dim,
            center=sspec.get("center"),
            radius=sspec.get("radius"),
        )

    dspec = cfg.get("divergence")
    if dspec is None and svm_parts is not None:
        div = svm_parts[1]
    else:
        _require(isinstance(dspec, dict) and "kind" in dspec, "config needs divergence.kind")
        div = _make_divergence(dspec, svm_parts)

    if feasible.kind == "simplex":
        x0 = feasible.barycenter()
    else:
        x0 = feasible.center.copy()
        if obj.kind == "poisson":
            raise ConfigError("the Poisson objective needs the simplex feasible set")
    return obj, feasible, div, f_star_known, l_hint, x0


def _make_divergence(dspec: dict, svm_parts):
    kind = dspec["kind"]
    if kind == "svm_quartic":
        if svm_parts is not None and "lambda" not in dspec:
            return svm_parts[1]
        return bregman.SvmQuartic(
            float(dspec["lambda"]), float(dspec["s1"]), float(dspec["s2"])
        )
    if kind == "negative_entropy":
        return bregman.NegativeEntropy(float(dspec.get("domain_floor", 1e-12)))
    if kind == "squared_euclidean":
        return bregman.SquaredEuclidean()
    raise ConfigError(f"unknown divergence kind {kind!r}")


def _resolve_methods(cfg: dict, l_hint: float):
    methods = cfg.get("methods")
    _require(isinstance(methods, list) and methods, "config needs a nonempty methods list")
    resolved = []
    names = set()
    for i, m in enumerate(methods):
        _require(isinstance(m, dict) and "method" in m, f"methods[{i}] needs a method")
        _require(m["method"] in _METHODS, f"unknown method {m['method']!r}")
        name = m.get("name", m["method"])
        _require(name not in names, f"duplicate method name {name!r}")
        names.add(name)
        resolved.append(
            {
                "name": name,
                "method": m["method"],
                "gamma": float(m.get("gamma", cfg.get("gamma", DEFAULTS["gamma"]))),
                "L_init": float(m["L_init"]) if m.get("L_init") is not None else float(l_hint),
                "N": int(m.get("N", cfg.get("N", DEFAULTS["N"]))),
                "gap_tol": float(m.get("gap_tol", cfg.get("gap_tol", DEFAULTS["gap_tol"]))),
                "divergence": m.get("divergence"),
            }
        )
    return resolved


def _run_method(spec, obj, feasible, base_div, x0):
    div = base_div
    if spec["divergence"] is not None:
        div = _make_divergence(spec["divergence"], None)
    problem = problems.ProblemInstance(
        objective=obj, feasible_set=feasible, divergence=div, gamma=spec["gamma"]
    )
    cfg = solver.SolverConfig(
        method=_METHODS[spec["method"]],
        max_iters=spec["N"],
        l_init=spec["L_init"],
        gamma=spec["gamma"],
        gap_tol=spec["gap_tol"],
    )
    t0 = time.perf_counter()
    result = solver.run(problem, x0, cfg)
    wall = time.perf_counter() - t0
    return spec, problem, result, wall


def write_csv(path: Path, records):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [r.k, _fmt(r.f_x), _fmt(r.fw_gap), _fmt(r.alpha), _fmt(r.l_k), r.checks]
            )


def cmd_run(args) -> int:
    cfg_path = Path(args.config)
    try:
        cfg = json.loads(cfg_path.read_text())
    except OSError as exc:
        print(f"error: cannot read {cfg_path}: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: {cfg_path}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return 1

    try:
        seed = int(cfg.get("seed", 0))
        obj, feasible, div, f_star_known, l_hint, x0 = build_problem(
            cfg, seed, base_dir=cfg_path.parent
        )
        specs = _resolve_methods(cfg, l_hint)
        out_dir = Path(args.out or cfg.get("out_dir") or (cfg_path.stem + "_out"))
        f_star_policy = cfg.get("f_star_policy", DEFAULTS["f_star_policy"])
        _require(
            f_star_policy in ("known", "best_found"),
            "f_star_policy must be 'known' or 'best_found'",
        )
        if f_star_policy == "known":
            f_star_cfg = cfg.get("f_star", f_star_known)
            _require(f_star_cfg is not None, "f_star_policy 'known' needs a value")
    except BregfwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_dir.mkdir(parents=True, exist_ok=True)

    runs = []
    try:
        if args.threads > 1:
            with concurrent.futures.ThreadPoolExecutor(args.threads) as pool:
                futs = [
                    pool.submit(_run_method, s, obj, feasible, div, x0) for s in specs
                ]
                runs = [f.result() for f in futs]
        else:
            runs = [_run_method(s, obj, feasible, div, x0) for s in specs]
    except BregfwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if f_star_policy == "known":
        f_star = float(f_star_cfg)
    else:
        f_star = min(result.best_f() for _, _, result, _ in runs)

    interior_floor = float(cfg.get("interior_floor", DEFAULTS["interior_floor"]))
    r2_samples = int(cfg.get("r2_samples", DEFAULTS["r2_samples"]))
    strict_fail = False
    manifest_methods = []
    r2_cache = {}
    for spec, problem, result, wall in runs:
        result = result.with_f_star(f_star)
        entry = {
            "name": spec["name"],
            "method": spec["method"],
            "gamma": spec["gamma"],
            "L_init": spec["L_init"],
            "N": spec["N"],
            "gap_tol": spec["gap_tol"],
            "divergence": _div_used(result, problem).kind,
            "csv": spec["name"] + ".csv",
            "wall_time_s": wall,
            "iterations": len(result.records),
            "f_final": result.f_final,
            "euclidean_L": problem.objective.euclidean_lipschitz(),
            "violations": [],
        }
        if result.method is not solver.Method.CLASSIC_FW:
            div_used = _div_used(result, problem)
            key = div_used.kind
            if key not in r2_cache:
                try:
                    r2_cache[key] = lmo.diameter_bound(
                        feasible,
                        div_used,
                        n_samples=r2_samples,
                        seed=seed,
                        interior_floor=interior_floor,
                    )
                except lmo.Incompatible as exc:
                    r2_cache[key] = None
                    entry["r2_note"] = str(exc)
            bound = r2_cache[key]
            if bound is not None:
                entry["r2"] = bound.r2
                entry["r2_empirical"] = bound.empirical
                violations = solver.verify_run(
                    result,
                    problem,
                    bound.r2,
                    r2_empirical=bound.empirical,
                    euclidean_l=problem.objective.euclidean_lipschitz(),
                )
                entry["violations"] = [
                    {
                        "check": v.check,
                        "k": v.k,
                        "message": v.message,
                        "advisory": v.advisory,
                    }
                    for v in violations
                ]
                if any(not v.advisory for v in violations):
                    strict_fail = True
        write_csv(out_dir / entry["csv"], result.records)
        manifest_methods.append(entry)

    manifest = {
        "config_file": str(cfg_path),
        "resolved_config": {
            "problem": cfg.get("problem"),
            "set": {"kind": feasible.kind, "dim": feasible.dim},
            "divergence": div.kind,
            "seed": seed,
            "f_star_policy": f_star_policy,
            "interior_floor": interior_floor,
            "r2_samples": r2_samples,
        },
        "seed": seed,
        "f_star_used": f_star,
        "methods": manifest_methods,
    }
    # f* policy best_found: the minimum f seen across every method's iterates
    with open(out_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)

    for entry in manifest_methods:
        n_bad = sum(1 for v in entry["violations"] if not v["advisory"])
        status = "ok" if n_bad == 0 else f"{n_bad} violations"
        print(f"{entry['name']}: {entry['iterations']} iters, f_final={entry['f_final']:.6g} [{status}]")
    print(f"wrote {out_dir}/manifest.json")
    if args.strict and strict_fail:
        return 2
    return 0


def _div_used(result, problem):
    if result.method is solver.Method.ADAPTIVE_EUCLIDEAN_FW:
        return bregman.SquaredEuclidean()
    return problem.divergence


def cmd_gen(args) -> int:
    if args.kind != "poisson":
        print(f"error: unknown generator kind {args.kind!r}", file=sys.stderr)
        return 1
    try:
        inst = problems.generate_poisson(args.n, args.m, args.noise, args.seed)
    except (ValueError, BregfwError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    np.savetxt(out / "A.csv", inst.objective.A, delimiter=",", fmt="%.17g")
    np.savetxt(out / "b.csv", inst.objective.b, delimiter=",", fmt="%.17g")
    np.savetxt(out / "x_true.csv", inst.x_true, delimiter=",", fmt="%.17g")
    meta = {
        "kind": "poisson",
        "n": args.n,
        "m": args.m,
        "noise": args.noise,
        "seed": args.seed,
        "smoothness_l1_b": inst.smoothness,
    }
    with open(out / "meta.json", "w") as fh:
        json.dump(meta, fh, indent=2)
    print(f"wrote {out}/A.csv, b.csv, x_true.csv, meta.json")
    return 0


def _read_run_dir(run_dir: Path):
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.is_file():
        raise BregfwError(f"no manifest.json in {run_dir}")
    manifest = json.loads(manifest_path.read_text())
    tables = {}
    for entry in manifest["methods"]:
        csv_path = run_dir / entry["csv"]
        if not csv_path.is_file():
            raise BregfwError(f"missing log {csv_path}")
        rows = []
        with open(csv_path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != CSV_HEADER:
                raise BregfwError(f"{csv_path}: unexpected header {reader.fieldnames}")
            for rec in reader:
                rows.append(
                    {
                        "k": int(rec["k"]),
                        "f": float(rec["f"]),
                        "fw_gap": float(rec["fw_gap"]),
                        "alpha": float(rec["alpha"]),
                        "L_k": float(rec["L_k"]),
                        "checks": int(rec["checks"]),
                    }
                )
        if not rows:
            raise BregfwError(f"{csv_path}: empty log")
        tables[entry["name"]] = rows
    return manifest, tables


def verify_logs(manifest: dict, tables: dict):
    """Offline re-check of the interior-decrease, residual-bound and
    backtracking-budget inequalities from logged quantities alone.

    For an interior step alpha < 1 chosen by the adaptive rule,
    2 L D = gap / alpha^(gamma-1), so the guaranteed decrease reduces to
    f_{k+1} - f_k <= -alpha * gap / 2.
    """
    failures = []
    f_star = manifest.get("f_star_used")
    for entry in manifest["methods"]:
        if entry["method"] == "classic_fw":
            continue
        rows = tables[entry["name"]]
        gamma = entry["gamma"]
        name = entry["name"]
        for i, row in enumerate(rows[:-1]):
            f_next = rows[i + 1]["f"]
            tol = 1e-9 * (1.0 + abs(row["f"]))
            if row["checks"] > 0 and row["alpha"] < 1.0 and row["fw_gap"] > 1e-15:
                if f_next - row["f"] > -0.5 * row["alpha"] * row["fw_gap"] + tol:
                    failures.append((name, "interior_decrease", row["k"]))
        r2 = entry.get("r2")
        if r2 is not None and f_star is not None:
            l_running = -math.inf
            for row in rows:
                tol = 1e-9 * (1.0 + abs(row["f"]))
                if row["k"] >= 1 and math.isfinite(l_running):
                    bound = (2.0 / (row["k"] + 2.0)) ** (gamma - 1.0) * l_running * r2
                    if row["f"] - f_star > bound + tol and not entry.get("r2_empirical"):
                        failures.append((name, "residual_bound", row["k"]))
                if row["checks"] > 0 and math.isfinite(row["L_k"]):
                    l_running = max(l_running, row["L_k"])
        euclidean_l = entry.get("euclidean_L")
        if euclidean_l is not None:
            stepped = [r for r in rows if r["checks"] > 0]
            total = sum(r["checks"] for r in stepped)
            budget = 2 * len(stepped) + math.log2(2.0 * euclidean_l / entry["L_init"])
            if total > budget:
                failures.append((name, "backtrack_budget", -1))
    return failures


def cmd_verify(args) -> int:
    run_dir = Path(args.run_dir)
    try:
        manifest, tables = _read_run_dir(run_dir)
    except (BregfwError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    failures = verify_logs(manifest, tables)
    checked = [e["name"] for e in manifest["methods"] if e["method"] != "classic_fw"]
    for name in checked:
        bad = [f for f in failures if f[0] == name]
        if bad:
            for _, check, k in bad:
                print(f"{name}: FAIL {check} at k={k}")
        else:
            print(f"{name}: PASS")
    return 2 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="exit 2 on invariant breaches")
    common.add_argument("--threads", type=int, default=1, help="parallel method runs")
    parser = argparse.ArgumentParser(prog="bregfw", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config", parents=[common])
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (overrides config)")
    p_run.set_defaults(func=cmd_run)

    p_gen = sub.add_parser("gen", help="generate a dataset", parents=[common])
    p_gen.add_argument("kind")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--noise", type=float, default=0.01)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify", help="re-check a finished run directory", parents=[common])
    p_verify.add_argument("run_dir")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
