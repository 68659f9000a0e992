"""Command-line driver: ``vfcm cluster``, ``vfcm segment`` and ``vfcm init``.

Every run writes plain csv/json/pgm artifacts plus a ``manifest.json``
echoing the arguments, the effective configuration, the SHA-256 of the
input file and the files written. Nothing in the pipeline is random, so
identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import DataMatrix, load_csv, normalize
from .fcm import FitConfig, fcm_fit, fcm_objective
from .imaging import read_pgm, segment_binary, write_pgm
from .metrics import evaluate, normalize_trace
from .seeding import init_centers_scatter
from .vfc import crisp_assign, vfc_fit, vfc_objective


class StageError(Exception):
    def __init__(self, stage, exc):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage


def fmt(x) -> str:
    """Round-trip-exact text form of a float."""
    return format(float(x), ".17g")


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def _write_csv(path: Path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_json(path: Path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _feature_names(data: DataMatrix):
    if data.feature_names is not None:
        return list(data.feature_names)
    return [f"x{k}" for k in range(data.dims)]


def _centers_rows(centers):
    return ([fmt(v) for v in row] for row in centers)


def _stage(stage, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (OSError, ValueError) as exc:
        raise StageError(stage, exc) from exc


def cmd_cluster(args) -> dict:
    data = _stage("load", load_csv, args.dataset, has_header=args.header, label_column=args.label_column)
    data = _stage("normalize", normalize, data, args.normalize)
    config = _stage(
        "config",
        FitConfig,
        n_clusters=args.clusters,
        m=args.m,
        max_iters=args.max_iters,
        epsilon=args.epsilon,
    )
    fit = fcm_fit if args.algorithm == "fcm" else vfc_fit
    result = _stage("fit", fit, data, config)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    x = data.values
    n, c, d = data.rows, config.n_clusters, data.dims

    _write_csv(out / "centers.csv", _feature_names(data), _centers_rows(result.centers))
    written.append("centers.csv")

    u = result.memberships
    if u.ndim == 2:
        _write_csv(
            out / "memberships.csv",
            [f"c{j}" for j in range(c)],
            ([fmt(v) for v in row] for row in u),
        )
    else:
        _write_csv(
            out / "memberships.csv",
            ["i", "j", "k", "value"],
            ([str(i), str(j), str(k), fmt(u[i, j, k])] for i in range(n) for j in range(c) for k in range(d)),
        )
    written.append("memberships.csv")

    assign = crisp_assign(u)
    if data.labels is not None:
        _write_csv(
            out / "assignments.csv",
            ["i", "cluster", "label"],
            ([str(i), str(a), lab] for i, (a, lab) in enumerate(zip(assign, data.labels))),
        )
    else:
        _write_csv(out / "assignments.csv", ["i", "cluster"], ([str(i), str(a)] for i, a in enumerate(assign)))
    written.append("assignments.csv")

    expo = result.objective_trace
    literal = result.literal_trace
    norm = normalize_trace(expo)
    _write_csv(
        out / "trace.csv",
        ["iteration", "J_literal", "J_exponentiated", "J_normalized"],
        (
            [str(g), fmt(literal[g]) if literal is not None else "", fmt(expo[g]), fmt(norm[g])]
            for g in range(len(expo))
        ),
    )
    written.append("trace.csv")

    if data.labels is not None:
        ev = evaluate(assign, data.labels, expo)
        _write_json(out / "evaluation.json", ev.to_dict())
        written.append("evaluation.json")

    if result.algorithm == "vfc":
        final = {
            "exponentiated": vfc_objective(x, result.centers, u, config.m, "exponentiated"),
            "literal": vfc_objective(x, result.centers, u, config.m, "literal"),
        }
    else:
        final = {"exponentiated": fcm_objective(x, result.centers, u, config.m)}

    manifest = {
        "command": "cluster",
        "config": {**config.to_dict(), "algorithm": args.algorithm, "normalization": args.normalize},
        "input": {"path": str(args.dataset), "sha256": _sha256(args.dataset), "rows": n, "dims": d},
        "iterations_run": result.iterations_run,
        "converged_by": result.converged_by,
        "final_objective": final,
    }
    return _finish(args, out / "manifest.json", manifest, [str(out / f) for f in written])


def cmd_segment(args) -> dict:
    raw = _stage("load", Path(args.image).read_bytes)
    image = _stage("load", read_pgm, raw)
    config = _stage("config", FitConfig, n_clusters=2, m=args.m, max_iters=args.max_iters, epsilon=args.epsilon)
    seg, result = _stage(
        "fit", segment_binary, image, config, algorithm=args.algorithm, raw01=args.raw01, return_fit=True
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(write_pgm(seg))
    manifest_path = Path(args.manifest) if args.manifest else out.parent / "manifest.json"
    manifest = {
        "command": "segment",
        "config": {**config.to_dict(), "algorithm": args.algorithm, "raw01": args.raw01},
        "input": {
            "path": str(args.image),
            "sha256": _sha256(args.image),
            "width": image.width,
            "height": image.height,
        },
        "iterations_run": result.iterations_run,
        "converged_by": result.converged_by,
        "centers": [float(v) for v in result.centers[:, 0]],
        "foreground_fraction": float(np.mean(seg.pixels != 0)),
    }
    return _finish(args, manifest_path, manifest, [str(out)])


def cmd_init(args) -> dict:
    data = _stage("load", load_csv, args.dataset, has_header=args.header, label_column=args.label_column)
    data = _stage("normalize", normalize, data, args.normalize)
    centers, plan = _stage("init", init_centers_scatter, data, args.clusters)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    _write_csv(out / "centers.csv", _feature_names(data), _centers_rows(centers))
    rank = np.empty(data.rows, dtype=int)
    rank[plan.sorted_order] = np.arange(data.rows)
    chunk_of = np.empty(data.rows, dtype=int)
    for j, (a, b) in enumerate(plan.chunk_bounds):
        chunk_of[plan.sorted_order[a:b]] = j
    _write_csv(
        out / "weighted_distances.csv",
        ["i", "weighted_distance", "rank", "chunk"],
        ([str(i), fmt(plan.weighted_distances[i]), str(rank[i]), str(chunk_of[i])] for i in range(data.rows)),
    )
    _write_json(
        out / "init_plan.json",
        {
            "scatter": [float(s) for s in plan.scatter],
            "centroid": [float(v) for v in plan.centroid],
            "sorted_order": [int(i) for i in plan.sorted_order],
            "chunk_bounds": [list(b) for b in plan.chunk_bounds],
            "centers": centers.tolist(),
        },
    )
    written = ["centers.csv", "weighted_distances.csv", "init_plan.json"]
    manifest = {
        "command": "init",
        "config": {"n_clusters": args.clusters, "normalization": args.normalize},
        "input": {"path": str(args.dataset), "sha256": _sha256(args.dataset), "rows": data.rows, "dims": data.dims},
    }
    return _finish(args, out / "manifest.json", manifest, [str(out / f) for f in written])


def _finish(args, manifest_path, manifest, outputs):
    manifest["argv"] = list(args.argv)
    manifest["outputs"] = outputs + [str(manifest_path)]
    manifest["version"] = __version__
    _write_json(manifest_path, manifest)
    return manifest


def _add_data_options(p):
    p.add_argument("dataset", help="numeric CSV file")
    p.add_argument("--header", action="store_true", help="first row holds column names")
    p.add_argument("--label-column", type=int, default=None, help="index of the class-label column")
    p.add_argument("--normalize", choices=["none", "min-max", "z-score"], default="none")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfcm", description="Scalar and vector fuzzy c-means clustering.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a CSV dataset")
    _add_data_options(p)
    p.add_argument("--algorithm", choices=["fcm", "vfc"], default="vfc")
    p.add_argument("-c", "--clusters", type=int, required=True)
    p.add_argument("-m", type=float, default=2.0, help="fuzziness index (> 1)")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.0, help="membership-change stop threshold; 0 disables")
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("segment", help="two-cluster segmentation of a PGM image")
    p.add_argument("image", help="P5 or P2 PGM file")
    p.add_argument("--algorithm", choices=["fcm", "vfc"], default="vfc")
    p.add_argument("-m", type=float, default=2.0)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--raw01", action="store_true", help="write 0/1 pixels with maxval 1")
    p.add_argument("-o", "--out", required=True, help="output PGM path")
    p.add_argument("--manifest", default=None, help="manifest path (default: manifest.json next to the output)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("init", help="show the scatter-based center initialization")
    _add_data_options(p)
    p.add_argument("-c", "--clusters", type=int, required=True)
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.set_defaults(func=cmd_init)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        args.func(args)
    except StageError as exc:
        print(f"vfcm {args.command}: error in stage {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
