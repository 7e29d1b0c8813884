"""Command-line front end.

Subcommands: sample, classify, estimate, volumes, bound, check. Every
command with a fixed seed is reproducible byte-for-byte across runs and
worker counts. Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .action_angle import build_hexagon, is_interior
from .invariants import (
    KNOT_CLASS_FROM_LABEL,
    KNOT_CLASS_LABELS,
    KnotClass,
    classify_batch,
)
from .measure import (
    REGIONS,
    analytic_volumes,
    compare_bound,
    estimate_knotting_probability,
    mc_region_volume,
    repeat_estimates,
    sample_coordinate_stream,
)
from .trefoil_predicates import TARGET_PAIRS, window_filters

ACTION_HEADER = "d1,d2,d3,theta1,theta2,theta3"
VERTEX_HEADER = ",".join(f"v{i}{c}" for i in range(1, 7) for c in "xyz")


class CliError(RuntimeError):
    """Runtime failure reported on stderr with exit code 1."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _positive_int(text):
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return value


def _default_seed():
    return int(os.environ.get("HEXKNOT_SEED", "0"))


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def cmd_sample(args):
    out, close = _open_out(args.output)
    try:
        if args.format == "csv":
            out.write((VERTEX_HEADER if args.vertices else ACTION_HEADER) + "\n")
            for d, th in sample_coordinate_stream(args.seed, args.n):
                rows = (build_hexagon(d, th).reshape(-1, 18)
                        if args.vertices else np.concatenate([d, th], axis=1))
                for row in rows:
                    out.write(",".join(_fmt(x) for x in row) + "\n")
        else:
            records = []
            for d, th in sample_coordinate_stream(args.seed, args.n):
                if args.vertices:
                    for row in build_hexagon(d, th).reshape(-1, 18):
                        records.append(dict(zip(VERTEX_HEADER.split(","), row)))
                else:
                    for row in np.concatenate([d, th], axis=1):
                        records.append(dict(zip(ACTION_HEADER.split(","), row)))
            json.dump(records, out, indent=2)
            out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def _read_rows(path):
    if path is None or path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}") from exc
    rows = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        fields = text.split(",")
        try:
            values = [float(f) for f in fields]
        except ValueError:
            if lineno == 1:
                continue  # header
            raise CliError(f"line {lineno}: cannot parse {line!r}")
        if len(values) not in (6, 18):
            raise CliError(
                f"line {lineno}: expected 6 or 18 columns, got {len(values)}")
        rows.append((lineno, text, values))
    if not rows:
        raise CliError("no data rows in input")
    widths = {len(v) for _, _, v in rows}
    if len(widths) != 1:
        raise CliError("mixed 6- and 18-column rows in input")
    return rows, widths.pop()


def cmd_classify(args):
    rows, width = _read_rows(args.input)
    data = np.array([v for _, _, v in rows])
    if width == 6:
        d, th = data[:, :3], data[:, 3:]
        interior = is_interior(d)
        codes = np.full(len(rows), int(KnotClass.DEGENERATE), dtype=np.int8)
        if interior.any():
            verts = build_hexagon(d[interior], th[interior])
            codes[interior] = classify_batch(verts)
    else:
        codes = classify_batch(data.reshape(-1, 6, 3))

    header = ACTION_HEADER if width == 6 else VERTEX_HEADER
    out, close = _open_out(args.output)
    try:
        out.write(header + ",class\n")
        for (lineno, text, _), code in zip(rows, codes):
            out.write(f"{text},{KNOT_CLASS_LABELS[KnotClass(int(code))]}\n")
    finally:
        if close:
            out.close()
    counts = {KNOT_CLASS_LABELS[KnotClass(i)]: int((codes == i).sum())
              for i in range(6) if (codes == i).any()}
    print(f"classified {len(rows)} rows: {counts}", file=sys.stderr)
    return 0


def cmd_estimate(args):
    if args.repeats > 1:
        reports, summary = repeat_estimates(
            args.samples, args.seed, mode=args.mode,
            workers=args.workers, repeats=args.repeats)
        payload = {"runs": [r.to_dict() for r in reports],
                   "across_runs": summary}
    else:
        report = estimate_knotting_probability(
            args.samples, args.seed, mode=args.mode, workers=args.workers)
        payload = report.to_dict()
    out, close = _open_out(args.output)
    try:
        json.dump(payload, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_volumes(args):
    table = analytic_volumes()
    print(f"closed forms: vol_P6={table.vol_P6:.12g} "
          f"vol_third={table.vol_third:.12g} vol_obtuse={table.vol_obtuse:.12g} "
          f"ratio_obtuse={table.ratio_obtuse:.12g}")
    print(f"torus window fractions: obtuse={table.torus_frac_obtuse:.12g} "
          f"acute={table.torus_frac_acute:.12g}")
    print(f"{'region':22s} {'analytic':>14s} {'estimate':>14s} "
          f"{'std_error':>12s} {'z':>7s}")
    worst = 0.0
    for name in REGIONS:
        est = mc_region_volume(name, args.samples, args.seed,
                               workers=args.workers)
        z = est.z_score()
        worst = max(worst, abs(z))
        print(f"{name:22s} {est.analytic:14.8f} {est.value:14.8f} "
              f"{est.value_std_error:12.3e} {z:7.2f}")
    print(f"largest |z| = {worst:.2f}")
    return 0


def cmd_bound(args):
    table = analytic_volumes()
    ub = table.upper_bound
    print(f"upper bound (14 - 3*pi)/192 = {ub:.12f}")
    print(f"1/42                        = {1.0 / 42.0:.12f}")
    relation = "<" if ub < 1.0 / 42.0 else ">"
    print(f"ordering: (14 - 3*pi)/192 {relation} 1/42"
          f"  (note: the bound is not below 1/42)")
    print(f"expected positive-curl trefoil fraction bound: "
          f"{table.expected_positive_curl_bound():.12f} = 7/192 - pi/128")
    if args.with_estimate:
        try:
            with open(args.with_estimate, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read estimate report: {exc}") from exc
        if "across_runs" in payload:
            payload = payload["runs"][0]
        report = _report_from_dict(payload)
        bound = compare_bound(report)
        print(f"estimate fraction_total = {bound.estimate:.6e}, "
              f"ci95 = [{bound.ci95[0]:.6e}, {bound.ci95[1]:.6e}]")
        print(f"estimate < upper bound: {bound.orderings['estimate_lt_upper_bound']}")
        print(json.dumps(bound.to_dict(), indent=2))
    return 0


def _report_from_dict(payload):
    from .measure import EstimationReport

    try:
        return EstimationReport(
            samples=payload["samples"], seed=payload["seed"],
            mode=payload["mode"], hits=payload["hits"],
            degenerate_count=payload["degenerate_count"],
            fraction_R_plus=payload["fraction_R_plus"],
            fraction_total=payload["fraction_total"],
            std_error=payload["std_error"], ci95=tuple(payload["ci95"]),
            wall_time_seconds=payload.get("wall_time_seconds", 0.0),
            workers=payload.get("workers", 1),
            agreement=payload.get("agreement"),
        )
    except KeyError as exc:
        raise CliError(f"estimate report is missing field {exc}") from exc


def cmd_check(args):
    d = np.array(args.coords[:3])
    th = np.array(args.coords[3:])
    payload = {"coords": {"d": list(d), "theta": list(th)}}
    if not bool(is_interior(d)):
        payload["class"] = KNOT_CLASS_LABELS[KnotClass.DEGENERATE]
        payload["note"] = "diagonals outside the open moment polytope"
    else:
        code = classify_batch(build_hexagon(d, th))
        payload["class"] = KNOT_CLASS_LABELS[KnotClass(int(code))]
        target = KNOT_CLASS_FROM_LABEL[args.target]
        report = window_filters(d, th, TARGET_PAIRS[target])
        payload["filters"] = report.to_dict()
        payload["filters"]["passes_all"] = report.passes()
    print(json.dumps(payload, indent=2))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hexknot",
        description="Sample, classify and count knotted equilateral hexagons.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="write uniformly sampled coordinates")
    p.add_argument("--n", type=_positive_int, required=True,
                   help="number of samples")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--vertices", action="store_true",
                   help="emit 18-column vertex rows instead of coordinates")
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("classify", help="append a knot class column to a CSV")
    p.add_argument("--input", default=None,
                   help="6- or 18-column CSV (default stdin)")
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("estimate", help="Monte Carlo knotting probability")
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--mode", choices=("predicate", "oracle"), default="predicate")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--repeats", type=_positive_int, default=1)
    p.add_argument("--output", default=None, help="JSON output path (default stdout)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("volumes", help="MC verification of the volume constants")
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_volumes)

    p = sub.add_parser("bound", help="closed-form bound and orderings")
    p.add_argument("--with-estimate", default=None,
                   help="JSON report from `estimate` to compare")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("check", help="filters and class for one coordinate tuple")
    p.add_argument("coords", type=float, nargs=6, metavar="X",
                   help="d1 d2 d3 theta1 theta2 theta3")
    p.add_argument("--target",
                   choices=("trefoil_R+", "trefoil_R-", "trefoil_L+", "trefoil_L-"),
                   default="trefoil_R+",
                   help="trefoil class for the filter report")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"hexknot: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"hexknot: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
