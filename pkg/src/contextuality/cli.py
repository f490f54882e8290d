"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data errors under --strict,
3 selftest failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cbd, fractions, pipeline, records, scenario, schema
from .errors import ContextualityError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SELFTEST = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this tool reserves 2 for data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="contextuality", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="per-record contextuality reports", parents=[])
    analyze.add_argument("records", help="line-delimited records file, or - for stdin")
    analyze.add_argument("--with-lp", action="store_true", help="cross-check each record by LP")
    analyze.add_argument("--out", default=".", help="output directory for report.csv")
    analyze.add_argument("--jobs", type=int, default=1, help="worker processes")
    analyze.add_argument("--strict", action="store_true", help="exit 2 on any malformed line")

    stats_cmd = sub.add_parser("stats", help="aggregate statistics over a finished report")
    stats_cmd.add_argument("--reports", required=True, help="report.csv from analyze")
    stats_cmd.add_argument("--records", required=True, help="the records the report was built from")
    stats_cmd.add_argument("--out", default=".", help="output directory for the CSV tables")
    stats_cmd.add_argument("--degrees", default="1..3", help="polynomial degrees, e.g. 1..10 or 1,3")
    stats_cmd.add_argument("--percentiles", default="1,5,10,25,50,100", help="similarity sweep percentiles")
    stats_cmd.add_argument("--hist-bins", type=int, default=50, help="bins for the 1-d histograms")
    stats_cmd.add_argument("--grid-bins", type=int, default=200, help="bins per axis for the sf/delta grid")
    stats_cmd.add_argument("--strict", action="store_true", help="exit 2 on any malformed record line")

    schema_cmd = sub.add_parser("schema", help="schema utilities")
    schema_sub = schema_cmd.add_subparsers(dest="schema_command", required=True)
    render = schema_sub.add_parser("render", help="print the three masked sentences")
    render.add_argument("--nouns", required=True, help="two nouns, comma separated")
    render.add_argument("--adjectives", required=True, help="three modifiers, comma separated")
    render.add_argument("--kind", default="adjective", choices=schema.MODIFIER_KINDS)
    render.add_argument("--mask", default=schema.DEFAULT_MASK, help="mask token")

    inspect = sub.add_parser("inspect", help="measures of one empirical-model JSON file")
    inspect.add_argument("model", help="model file in the interchange object format")
    inspect.add_argument(
        "--support-eps",
        type=float,
        default=0.0,
        help="threshold below which probabilities count as impossible",
    )

    selftest = sub.add_parser("selftest", help="verify analytic formulas against oracles")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--trials", type=int, default=1000)

    return parser


def _parse_degrees(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in spec.split(",") if part]


def _read_records(path: str, strict: bool):
    if path == "-":
        return records.parse_records(sys.stdin, strict=strict)
    with open(path, encoding="utf-8") as fh:
        return records.parse_records(fh, strict=strict)


def _cmd_analyze(args) -> int:
    try:
        parsed, errors = _read_records(args.records, args.strict)
    except records.RecordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    for err in errors:
        print(f"warning: {err}", file=sys.stderr)
    rows = pipeline.analyze_batch(parsed, with_lp=args.with_lp, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "report.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_report_csv(rows, fh)
    analyzed = sum(1 for r in rows if r.report is not None)
    print(f"analyzed {analyzed}/{len(rows)} records -> {out / 'report.csv'}")
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        parsed, errors = _read_records(args.records, args.strict)
    except records.RecordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    for err in errors:
        print(f"warning: {err}", file=sys.stderr)
    with open(args.reports, encoding="utf-8", newline="") as fh:
        rows = pipeline.read_report_csv(fh)
    try:
        degrees = _parse_degrees(args.degrees)
        percentiles = [float(p) for p in args.percentiles.split(",") if p]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = pipeline.aggregate(
        rows,
        parsed,
        degrees=degrees,
        percentiles=percentiles,
        hist_bins=args.hist_bins,
        grid_bins=args.grid_bins,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "histogram_sf.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_histogram_csv(summary.sf_histogram, fh)
    with open(out / "histogram_delta.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_histogram_csv(summary.delta_histogram, fh)
    with open(out / "grid_sf_delta.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_grid_csv(summary.grid, fh)
    with open(out / "correlations.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_correlations_csv(summary.correlations, fh)
    with open(out / "r2.csv", "w", encoding="utf-8", newline="") as fh:
        pipeline.write_r2_csv(summary.r2, fh)
    if summary.sweep is not None:
        with open(out / "similarity_sweep.csv", "w", encoding="utf-8", newline="") as fh:
            pipeline.write_sweep_csv(summary.sweep, fh)
    print(
        f"{summary.n_analyzed} analyzed ({summary.n_errors} errors): "
        f"sheaf fraction {summary.sheaf_fraction:.6f}, cbd fraction {summary.cbd_fraction:.6f}"
    )
    return EXIT_OK


def _cmd_schema_render(args) -> int:
    nouns = tuple(part.strip() for part in args.nouns.split(","))
    adjectives = tuple(part.strip() for part in args.adjectives.split(","))
    if len(nouns) != 2:
        print("error: --nouns needs exactly 2 comma-separated values", file=sys.stderr)
        return EXIT_USAGE
    if len(adjectives) != 3:
        print("error: --adjectives needs exactly 3 comma-separated values", file=sys.stderr)
        return EXIT_USAGE
    try:
        inst = schema.SchemaInstance(nouns, adjectives, args.kind)
        for sentence in schema.render_sentences(inst, args.mask):
            print(sentence)
    except ContextualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _cmd_inspect(args) -> int:
    try:
        with open(args.model, encoding="utf-8") as fh:
            model = scenario.from_json(fh.read())
    except (OSError, ContextualityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"observables: {len(model.scenario.observables)}, contexts: {len(model.scenario.contexts)}")
    print(f"no_signalling: {scenario.is_no_signalling(model)}")
    verdict = fractions.sheaf_contextual(model)
    print(f"cf: {verdict.cf!r}")
    print(f"sf: {verdict.sf!r}")
    print(f"sheaf_contextual: {verdict.contextual}")
    print(f"logically_contextual: {scenario.is_logically_contextual(model, args.support_eps)}")
    print(f"strongly_contextual: {scenario.is_strongly_contextual(model, args.support_eps)}")
    try:
        stats_ = cbd.from_empirical(model)
        print(f"cnt1: {cbd.cnt1(stats_)!r}")
        print(f"cbd_contextual: {cbd.is_cbd_contextual(stats_)}")
    except ContextualityError:
        print("cnt1: n/a (not a binary cyclic scenario)")
    return EXIT_OK


def _cmd_selftest(args) -> int:
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    result = pipeline.selftest(seed=args.seed, trials=args.trials)
    for line in result.lines:
        print(line)
    if not result.passed:
        for failure in result.failures:
            print(f"FAIL: {failure}", file=sys.stderr)
        print(f"selftest FAILED with {len(result.failures)} violations", file=sys.stderr)
        return EXIT_SELFTEST
    print("selftest passed")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "stats":
        return _cmd_stats(args)
    if args.command == "schema":
        return _cmd_schema_render(args)
    if args.command == "inspect":
        return _cmd_inspect(args)
    if args.command == "selftest":
        return _cmd_selftest(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
