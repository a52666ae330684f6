"""Command-line front end: ingest or generate data, run DSI, emit reports.

Exit codes: 0 success, 1 ingestion error, 2 validation error,
3 numeric error. Reports are JSON with a schema_version; sweep output is
a long-format CSV (param, metric, divergence, dsi).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from .core import DIVERGENCES, DsiConfig, dsi_estimate, dsi_multiclass
from .dataset import SubsampleConfig, load_cifar10_binary, load_csv, write_csv
from .errors import IngestionError, NumericError, ValidationError
from .metrics import METRIC_KINDS, MetricSpec
from .synth import FAMILIES, GeneratorSpec, generate, sweep

SCHEMA_VERSION = 1

_EXIT_CODES = {
    IngestionError: 1,
    ValidationError: 2,
    NumericError: 3,
}


def _load_input(args) -> "LabeledDataset":
    if args.csv is not None:
        label = args.label_col
        if label.lstrip("-").isdigit():
            label = int(label)
        return load_csv(
            args.csv, label, has_header=not args.no_header, delimiter=args.delimiter
        )
    return load_cifar10_binary(args.cifar10)


def _build_config(args) -> DsiConfig:
    sub = None
    if args.count is not None or args.fraction is not None:
        sub = SubsampleConfig(
            fraction=args.fraction, count=args.count, trials=args.trials, seed=args.seed
        )
    return DsiConfig(metric=MetricSpec(args.metric), divergence=args.divergence, subsample=sub)


def _write_report(path: str | None, doc: dict) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _cmd_dsi(args) -> int:
    t0 = time.perf_counter()
    data = _load_input(args)
    t_load = time.perf_counter() - t0
    cfg = _build_config(args)
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "command": "dsi",
        "metric": args.metric,
        "divergence": args.divergence,
        "seed": args.seed,
    }
    if cfg.subsample is not None:
        mean, sd, reports = dsi_estimate(data, cfg)
        doc["subsample"] = {
            "fraction": args.fraction,
            "count": args.count,
            "trials": args.trials,
        }
        doc["mean"] = mean
        doc["sd"] = sd
        doc["per_trial"] = [r.to_dict() for r in reports]
        doc["timings"] = {"load_s": t_load, "total_s": time.perf_counter() - t0}
        _write_report(args.output, doc)
        print(f"DSI mean = {mean:.4f} sd = {sd:.4f}")
    else:
        report = dsi_multiclass(data, cfg)
        doc["report"] = report.to_dict()
        doc["timings"] = {"load_s": t_load, "total_s": time.perf_counter() - t0}
        _write_report(args.output, doc)
        print(f"DSI = {report.dsi:.4f}")
    return 0


def _cmd_synth(args) -> int:
    spec = GeneratorSpec(
        family=args.family,
        points_per_class=args.points_per_class,
        noise_or_sd=args.noise,
        seed=args.seed,
    )
    write_csv(generate(spec), args.output)
    print(f"wrote {2 * args.points_per_class} rows to {args.output}")
    return 0


def _cmd_sweep(args) -> int:
    if not args.params:
        raise ValidationError("empty parameter list")
    rows: list[tuple[float, str, str, float]] = []
    for metric in args.metrics:
        for divergence in args.divergences:
            cfg = DsiConfig(metric=MetricSpec(metric), divergence=divergence)
            base = GeneratorSpec(
                family=args.family, points_per_class=args.points_per_class, seed=args.seed
            )
            for param, report in sweep(base, args.params, cfg):
                rows.append((param, metric, divergence, report.dsi))
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["param", "metric", "divergence", "dsi"])
        for param, metric, divergence, value in rows:
            writer.writerow([param, metric, divergence, f"{value:.6f}"])
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsi", description="Distance-based separability index tools"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dsi = sub.add_parser("dsi", help="compute the DSI of a dataset")
    src = p_dsi.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="CSV input file")
    src.add_argument("--cifar10", nargs="+", help="CIFAR-10 binary batch files")
    p_dsi.add_argument("--label-col", default="label", help="label column name or index")
    p_dsi.add_argument("--delimiter", default=",")
    p_dsi.add_argument("--no-header", action="store_true")
    p_dsi.add_argument("--metric", choices=METRIC_KINDS, default="euclidean")
    p_dsi.add_argument("--divergence", choices=DIVERGENCES, default="ks")
    p_dsi.add_argument("--fraction", type=float, help="subsample fraction in (0,1]")
    p_dsi.add_argument("--count", type=int, help="subsample row count")
    p_dsi.add_argument("--trials", type=int, default=1)
    p_dsi.add_argument("--seed", type=int, default=0)
    p_dsi.add_argument("-o", "--output", help="JSON report path")
    p_dsi.set_defaults(func=_cmd_dsi)

    p_synth = sub.add_parser("synth", help="generate a synthetic two-class dataset")
    p_synth.add_argument("--family", required=True)
    p_synth.add_argument("-n", "--points-per-class", type=int, default=1000)
    p_synth.add_argument("--noise", "--sd", type=float, dest="noise")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("-o", "--output", required=True, help="CSV output path")
    p_synth.set_defaults(func=_cmd_synth)

    p_sweep = sub.add_parser("sweep", help="DSI over a generator parameter sweep")
    p_sweep.add_argument("--family", required=True)
    p_sweep.add_argument("--params", nargs="*", type=float, default=[])
    p_sweep.add_argument("--metrics", nargs="+", choices=METRIC_KINDS, default=["euclidean"])
    p_sweep.add_argument("--divergences", nargs="+", choices=DIVERGENCES, default=["ks"])
    p_sweep.add_argument("-n", "--points-per-class", type=int, default=1000)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("-o", "--output", required=True, help="CSV output path")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IngestionError, ValidationError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for klass, code in _EXIT_CODES.items():
            if isinstance(exc, klass):
                return code
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
