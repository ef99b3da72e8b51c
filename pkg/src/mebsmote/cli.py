"""Command-line interface.

Subcommands: ``resample`` (balance a CSV dataset), ``evaluate`` (compare
oversampling methods under cross-validation), ``meb`` (minimum enclosing
ball of a raw point file), ``stats`` (class counts and imbalance ratio) and
``demo-noise`` (the dense-noise geometry comparison).  Every command is
deterministic given its flags; rerunning produces byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from .data import (
    Dataset,
    DatasetFormatError,
    SingleClassError,
    load_csv,
    minmax_normalize,
    stats,
    write_csv,
)
from .evaluation import evaluate, noise_scenario
from .geometry import euclidean_distance, welzl_meb
from .neighbors import InsufficientNeighborsError
from .sampling import Method, oversample, plan, write_audit_csv

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_NEIGHBORS = 5
EXIT_SINGLE_CLASS = 6

_EPILOG = """\
exit codes:
  0  success
  1  other error
  2  bad command line
  3  file I/O error
  4  malformed dataset (CSV parse or label problems)
  5  too few minority samples for the requested neighbor count
  6  dataset has a single class
"""

_METHOD_NAMES = [m.value for m in Method]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mebsmote",
        description="Rebalance binary-class tabular data by synthesizing "
        "minority samples, and evaluate the oversampling methods.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    resample = sub.add_parser(
        "resample",
        help="balance a dataset by synthesizing minority samples",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_dataset_args(resample)
    resample.add_argument("--out", required=True, help="output CSV path")
    resample.add_argument(
        "--method",
        default=Method.MEB_SMOTE.value,
        choices=_METHOD_NAMES,
        help="oversampling method (default: %(default)s)",
    )
    _add_sampling_args(resample)
    resample.add_argument("--audit", help="also write the synthesis audit trail to this CSV")
    resample.add_argument(
        "--mark-synthetic",
        action="store_true",
        help="append a 0/1 column marking synthetic rows",
    )
    resample.set_defaults(func=cmd_resample)

    evaluate_p = sub.add_parser(
        "evaluate",
        help="cross-validated comparison of oversampling methods",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_dataset_args(evaluate_p)
    evaluate_p.add_argument(
        "--methods",
        default="none," + ",".join(_METHOD_NAMES),
        help="comma-separated method list (default: %(default)s)",
    )
    _add_sampling_args(evaluate_p)
    evaluate_p.add_argument(
        "--folds", type=int, default=5, help="cross-validation folds (default: %(default)s)"
    )
    evaluate_p.add_argument(
        "--classifier-k",
        type=int,
        default=5,
        help="neighbor count of the k-NN scorer (default: %(default)s)",
    )
    evaluate_p.add_argument(
        "--full",
        action="store_true",
        help="also print the per-fold report for each method",
    )
    evaluate_p.set_defaults(func=cmd_evaluate)

    meb = sub.add_parser(
        "meb",
        help="minimum enclosing ball of a raw point file (CSV rows of coordinates, no header)",
    )
    meb.add_argument("points", help="CSV file with one point per row")
    meb.set_defaults(func=cmd_meb)

    stats_p = sub.add_parser("stats", help="class counts and imbalance ratio of a dataset")
    _add_dataset_args(stats_p)
    stats_p.set_defaults(func=cmd_stats)

    demo = sub.add_parser(
        "demo-noise",
        help="compare the MEB center with the centroid on the dense-noise scenario",
    )
    demo.set_defaults(func=cmd_demo_noise)

    return parser


def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", required=True, help="input CSV (header row required)")
    p.add_argument("--label-column", help="label column name (default: last column)")
    p.add_argument(
        "--positive-label",
        help="label value of the positive/minority class (default: the rarer value)",
    )


def _add_sampling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=5, help="neighbor count (default: %(default)s)")
    p.add_argument("--seed", type=int, default=42, help="random seed (default: %(default)s)")
    p.add_argument(
        "--normalize",
        action="store_true",
        help="min-max scale features before distance computations",
    )
    p.add_argument(
        "--mirror",
        action="store_true",
        help="interpolate away from the partner point instead of toward it",
    )


def cmd_resample(args) -> int:
    dataset = load_csv(args.input, args.label_column, args.positive_label)
    before = stats(dataset)
    print(f"before: {before.table_row()}")
    working = dataset
    table = None
    if args.normalize:
        working, table = minmax_normalize(dataset)
    sampling_plan = plan(working, args.method, args.k, args.seed)
    if sampling_plan.n_new == 0:
        print("warning: classes are already balanced; nothing to synthesize", file=sys.stderr)
    grown, records = oversample(working, sampling_plan, mirror=args.mirror)
    if table is not None and sampling_plan.n_new > 0:
        synthetic = table.invert(grown.features[dataset.n :])
        grown = Dataset(
            np.vstack([dataset.features, synthetic]),
            grown.labels,
            list(dataset.feature_names),
            dataset.label_name,
            dataset.positive_label,
            dataset.negative_label,
        )
    after = stats(grown)
    print(f"after:  {after.table_row()}")
    flags = None
    if args.mark_synthetic:
        flags = np.concatenate(
            [np.zeros(dataset.n, bool), np.ones(sampling_plan.n_new, bool)]
        )
    write_csv(grown, args.out, flags)
    print(f"wrote {args.out} ({grown.n} rows)")
    if args.audit:
        write_audit_csv(records, args.audit)
        print(f"wrote {args.audit} ({len(records)} audit records)")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    valid = {"none", *_METHOD_NAMES}
    unknown = [m for m in methods if m not in valid]
    if unknown:
        raise ValueError(
            f"unknown method(s) {unknown}; valid: none, {', '.join(_METHOD_NAMES)}"
        )
    dataset = load_csv(args.input, args.label_column, args.positive_label)
    width = max(len("method"), *(len(m) for m in methods))
    print(f"{'method':<{width}}  {'ACC':>15}  {'F1':>15}  {'AUC':>15}")
    reports = []
    for name in methods:
        report = evaluate(
            dataset,
            None if name == "none" else name,
            k_neighbors=args.k,
            folds=args.folds,
            seed=args.seed,
            classifier_k=args.classifier_k,
            mirror=args.mirror,
            normalize=args.normalize,
        )
        reports.append(report)
        cells = [
            f"{report.mean(metric):.4f}±{report.std(metric):.4f}"
            for metric in ("acc", "f1", "auc")
        ]
        print(f"{name:<{width}}  {cells[0]:>15}  {cells[1]:>15}  {cells[2]:>15}")
    if args.full:
        for report in reports:
            print()
            print(report.to_text())
    return EXIT_OK


def cmd_meb(args) -> int:
    points = _load_points(args.points)
    ball = welzl_meb(points, rng=0)
    coords = " ".join(f"{c:.12g}" for c in ball.center)
    print(f"center {coords}, radius {ball.radius:.12g}")
    return EXIT_OK


def cmd_stats(args) -> int:
    dataset = load_csv(args.input, args.label_column, args.positive_label)
    print(stats(dataset).table_row())
    return EXIT_OK


def cmd_demo_noise(args) -> int:
    sc = noise_scenario()
    print(f"base sample:       {_fmt_point(sc.base)}")
    print(f"noise cluster:     {', '.join(_fmt_point(p) for p in sc.noise_cluster)}")
    print(f"normal neighbor:   {_fmt_point(sc.normal_neighbor)}")
    print(f"meb center:        {_fmt_point(sc.meb_center)}  (radius {sc.meb_radius:.6g})")
    print(f"neighbor centroid: {_fmt_point(sc.neighbor_centroid)}")
    d_meb = sc.meb_center_to_base
    d_cen = sc.centroid_to_base
    print(f"distance to base:  meb center {d_meb:.6g}, centroid {d_cen:.6g}")
    print(
        "verdict: the MEB center is nearer the normal region than the "
        f"centroid ({d_meb:.6g} < {d_cen:.6g})"
    )
    return EXIT_OK


def _load_points(path) -> np.ndarray:
    rows: list[list[float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected numeric coordinates, got {row!r}"
                ) from None
    if not rows:
        raise DatasetFormatError(f"{path}: no points")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DatasetFormatError(f"{path}: rows have differing coordinate counts {sorted(widths)}")
    return np.asarray(rows)


def _fmt_point(p) -> str:
    return "(" + ", ".join(f"{c:.6g}" for c in np.asarray(p)) + ")"


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InsufficientNeighborsError as exc:
        return _fail(exc, EXIT_NEIGHBORS)
    except SingleClassError as exc:
        return _fail(exc, EXIT_SINGLE_CLASS)
    except DatasetFormatError as exc:
        return _fail(exc, EXIT_FORMAT)
    except OSError as exc:
        return _fail(exc, EXIT_IO)
    except ValueError as exc:
        return _fail(exc, EXIT_ERROR)


def _fail(exc: BaseException, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
