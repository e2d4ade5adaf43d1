"""Command line interface.

Subcommands: ``eval`` scores clusterings against a gold standard, ``compare``
reports the unanimous-improvement breakdown of two systems, ``rank`` renders
the annotated F ranking, ``alpha-sweep`` and ``threshold-sweep`` trace the
sensitivity curves, ``predict`` runs the cross-collection protocol.  Outputs
are deterministic: the same inputs yield byte-identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from unanimity.data import (
    ParseError,
    ScoreTable,
    ValidationError,
    parse_clustering,
    parse_score_table,
    validate_pair,
)
from unanimity.metrics import MetricPair, score_pair
from unanimity.experiments import alpha_sweep, predictor_curves, threshold_sweep
from unanimity.report import render_ranking_report
from unanimity.stats import categorize_improvement, parametric_uir
from unanimity.uir import unanimous_improvement_ratio


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_table(path: str, percent: bool) -> ScoreTable:
    return parse_score_table(_read(path), percent=percent, collection_id=Path(path).stem)


def _parse_grid(text: str) -> list[float]:
    """Parse ``start:stop:step`` into an inclusive ascending grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad grid {text!r}, expected start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad grid {text!r}, expected numeric start:stop:step") from None
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid stop {stop} below start {start}")
    count = int((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _csv_writer():
    buf = io.StringIO()
    return buf, csv.writer(buf, lineterminator="\n")


def _cmd_eval(args: argparse.Namespace) -> str:
    gold = parse_clustering(_read(args.gold))
    case_id = args.case_id or Path(args.gold).stem
    pair = MetricPair(args.metrics)
    buf, writer = _csv_writer()
    writer.writerow(("test_case", "system", "metric", "score"))
    for path in args.system:
        system = parse_clustering(_read(path))
        report = validate_pair(system, gold, strict=args.strict)
        system_id = Path(path).stem
        for note in report.notes:
            print(f"warning: {system_id}: {note}", file=sys.stderr)
        vector = score_pair(system, gold, pair)
        for name in vector.names:
            writer.writerow((case_id, system_id, name, _fmt(vector[name])))
    return buf.getvalue()


def _cmd_compare(args: argparse.Namespace) -> str:
    table = _load_table(args.scores, args.percent)
    result = unanimous_improvement_ratio(table, args.a, args.b)
    lines = [
        f"collection: {table.collection_id}",
        f"cases: {result.n_total}",
        f"{args.a} >=all {args.b}: {result.n_a_geq}",
        f"{args.b} >=all {args.a}: {result.n_b_geq}",
        f"incomparable: {result.n_incomparable}",
        f"UIR = {result.value:g}",
    ]
    if len(table.metric_names) == 2:
        category = categorize_improvement(
            table, args.a, args.b, args.significance_level
        )
        lines.append(
            f"wilcoxon category (level {args.significance_level:g}): {category.value}"
        )
    if args.parametric:
        lines.append(f"parametric UIR = {_fmt(parametric_uir(table, args.a, args.b))}")
    return "\n".join(lines) + "\n"


def _cmd_rank(args: argparse.Namespace) -> str:
    table = _load_table(args.scores, args.percent)
    rows = render_ranking_report(table, args.alpha, args.uir_threshold)
    buf, writer = _csv_writer()
    writer.writerow(
        ("system", "mean_f", "improved_systems", "reference_system", "reference_uir")
    )
    for row in rows:
        if row.near_baseline:
            print(
                f"warning: {row.system} is improved near-unanimously by "
                f"{row.reference_system} (UIR {row.reference_uir:g})",
                file=sys.stderr,
            )
        writer.writerow(
            (
                row.system,
                _fmt(row.mean_f),
                " ".join(row.improved_systems),
                row.reference_system if row.reference_system is not None else "-",
                _fmt(row.reference_uir) if row.reference_uir is not None else "-",
            )
        )
    return buf.getvalue()


def _cmd_alpha_sweep(args: argparse.Namespace) -> str:
    table = _load_table(args.scores, args.percent)
    grid = _parse_grid(args.grid)
    sweep = alpha_sweep(table, grid)
    buf, writer = _csv_writer()
    writer.writerow(("system", "alpha", "mean_f"))
    for system in table.systems:
        for alpha, value in zip(sweep.alphas, sweep.curves[system]):
            writer.writerow((system, _fmt(alpha), _fmt(value)))
    return buf.getvalue()


def _cmd_threshold_sweep(args: argparse.Namespace) -> str:
    table = _load_table(args.scores, args.percent)
    grid = _parse_grid(args.grid)
    rows = threshold_sweep(table, grid, args.alpha, args.significance_level)
    buf, writer = _csv_writer()
    writer.writerow(
        (
            "t",
            "accepted_ratio",
            "concordant_ratio",
            "opposite_ratio",
            "all_alpha_ratio",
            "f05_ratio",
            "n_accepted",
        )
    )
    for row in rows:
        writer.writerow(
            (
                _fmt(row.t),
                _fmt(row.accepted_ratio),
                _fmt(row.concordant_ratio),
                _fmt(row.opposite_ratio),
                _fmt(row.all_alpha_ratio),
                _fmt(row.f05_ratio),
                row.n_accepted,
            )
        )
    return buf.getvalue()


def _cmd_predict(args: argparse.Namespace) -> str:
    collections = [_load_table(path, args.percent) for path in args.collections]
    reference_stem = Path(args.reference).stem
    reference = next(
        (t for t in collections if t.collection_id == reference_stem), None
    )
    if reference is None:
        raise ValueError("reference collection must be among the collections")
    grid = _parse_grid(args.grid)
    curves = predictor_curves(reference, collections, grid, args.alpha)
    buf, writer = _csv_writer()
    writer.writerow(("predictor", "t", "precision", "recall"))
    for curve in curves:
        for t, precision, recall in curve.points:
            writer.writerow((curve.predictor.value, _fmt(t), _fmt(precision), _fmt(recall)))
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unanimity",
        description="Clustering evaluation with weighting-robust system comparison.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", help="write the report here instead of stdout")

    def add_table_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scores", required=True, help="score CSV file")
        p.add_argument(
            "--percent",
            action="store_true",
            help="scores are percentages; divide by 100 on ingest",
        )

    p = sub.add_parser("eval", help="score system clusterings against a gold standard")
    p.add_argument("--system", action="append", required=True, help="system TSV file (repeatable)")
    p.add_argument("--gold", required=True, help="gold standard TSV file")
    p.add_argument(
        "--metrics",
        choices=[m.value for m in MetricPair],
        default=MetricPair.PURITY_IP.value,
        help="metric pair to compute (default purity_ip)",
    )
    p.add_argument("--strict", action="store_true", help="reject item-set mismatches")
    p.add_argument("--case-id", help="test case id (default: gold file stem)")
    add_common(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("compare", help="unanimous-improvement breakdown of two systems")
    add_table_input(p)
    p.add_argument("--a", required=True, help="first system id")
    p.add_argument("--b", required=True, help="second system id")
    p.add_argument(
        "--parametric", action="store_true", help="add the parametric UIR estimate"
    )
    p.add_argument("--significance-level", type=float, default=0.05)
    add_common(p)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("rank", help="mean-F ranking annotated with UIR data")
    add_table_input(p)
    p.add_argument("--alpha", type=float, default=0.5, help="precision weight")
    p.add_argument("--uir-threshold", type=float, default=0.25)
    add_common(p)
    p.set_defaults(handler=_cmd_rank)

    p = sub.add_parser("alpha-sweep", help="mean-F curves over the alpha grid")
    add_table_input(p)
    p.add_argument("--grid", default="0:1:0.01", help="start:stop:step (default 0:1:0.01)")
    add_common(p)
    p.set_defaults(handler=_cmd_alpha_sweep)

    p = sub.add_parser(
        "threshold-sweep", help="accepted-pair profile over UIR thresholds"
    )
    add_table_input(p)
    p.add_argument("--grid", default="-1:1:0.05", help="start:stop:step (default -1:1:0.05)")
    p.add_argument("--alpha", type=float, default=0.5, help="precision weight")
    p.add_argument("--significance-level", type=float, default=0.05)
    add_common(p)
    p.set_defaults(handler=_cmd_threshold_sweep)

    p = sub.add_parser("predict", help="cross-collection robustness prediction")
    p.add_argument("--reference", required=True, help="reference collection CSV")
    p.add_argument(
        "--collections", nargs="+", required=True, help="all collection CSVs"
    )
    p.add_argument(
        "--percent",
        action="store_true",
        help="scores are percentages; divide by 100 on ingest",
    )
    p.add_argument("--grid", default="-1:1:0.05", help="start:stop:step (default -1:1:0.05)")
    p.add_argument("--alpha", type=float, default=0.5, help="precision weight")
    add_common(p)
    p.set_defaults(handler=_cmd_predict)

    return parser


def _error_category(exc: Exception) -> str:
    if isinstance(exc, ParseError):
        return "parse"
    if isinstance(exc, ValidationError):
        return "validation"
    if isinstance(exc, OSError):
        return "io"
    return "invalid"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except (ValueError, OSError) as exc:
        detail = " ".join(str(exc).split())
        print(f"error: {_error_category(exc)}: {detail}", file=sys.stderr)
        return 1
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
