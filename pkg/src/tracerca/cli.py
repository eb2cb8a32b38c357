"""Command-line entry point: analyze, link, bench, and serve.

Exit codes: 0 success, 1 parse or validation failure, 2 empty test group.
Reports are written atomically after the run completes, so a failed run
leaves no partial output behind.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from itertools import product
from pathlib import Path

from .binning import BinStrategy
from .linking import LINK_THRESHOLD_DEFAULT, link_report
from .pipeline import (
    MIN_SUPPORT_DEFAULT,
    SIMILARITY_DEFAULT,
    AnalysisConfig,
    EmptyTestGroupError,
    analysis_report,
    normalize_min_support,
    run_analysis,
)
from .ranking import PatternStats
from .report import canonical_json, parse_report, report_rows
from .synth import PRESETS, CorpusSpec, generate_corpus
from .traces import IngestError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EMPTY_TEST = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _load_records(path: Path) -> list[dict]:
    records = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                records.append(json.loads(text))
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path}: line {lineno}: invalid JSON ({exc.msg})")
    return records


def _parse_bin_rule(raw: str) -> int | str:
    if raw.isdigit():
        count = int(raw)
        if count < 1:
            raise ValueError("bin count must be >= 1")
        return count
    if raw in ("sturges", "fd", "freedman_diaconis"):
        return raw
    raise ValueError(f"unknown bin rule {raw!r} (use a count, 'sturges' or 'fd')")


def _format_table(rows: list[PatternStats], top_k: int) -> str:
    header = f"{'pattern':<40} {'test':>5} {'ctrl':>5} {'prec':>6} {'recall':>6} {'f1':>6}"
    lines = [header, "-" * len(header)]
    for row in rows[:top_k]:
        pattern = "(" + ", ".join(row.labels) + ")"
        lines.append(
            f"{pattern:<40} {row.test_support:>5} {row.control_support:>5} "
            f"{row.precision:>6.2f} {row.recall:>6.2f} {row.f1:>6.2f}"
        )
    return "\n".join(lines)


def cmd_analyze(args: argparse.Namespace) -> int:
    test_path, control_path = Path(args.test), Path(args.control)
    try:
        config = AnalysisConfig(
            min_support=normalize_min_support(args.min_support),
            max_len=args.max_len,
            similarity_threshold=args.similarity,
            control_mode=args.control_mode,
            control_min_support=(
                normalize_min_support(args.control_min_support)
                if args.control_min_support is not None
                else None
            ),
            binning_strategy=args.binning,
            bin_rule=_parse_bin_rule(args.bins),
            workers=args.workers,
        )
    except ValueError as exc:
        return _fail(str(exc))
    try:
        test_records = _load_records(test_path)
        control_records = _load_records(control_path)
    except OSError as exc:
        return _fail(f"cannot read input: {exc}")
    except IngestError as exc:
        return _fail(str(exc))

    try:
        run = run_analysis(test_records, control_records, config)
    except EmptyTestGroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_TEST
    except (IngestError, ValueError) as exc:
        return _fail(str(exc))

    analysis_id = args.id or test_path.stem
    payload = analysis_report(run, analysis_id)
    out = Path(args.out)
    if args.format == "json":
        out.write_text(canonical_json(payload), encoding="utf-8")
    else:
        out.write_text(_format_table(run.deduped, len(run.deduped)) + "\n", encoding="utf-8")

    print(_format_table(run.deduped, args.top_k))
    for warning in run.result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    stages = ", ".join(f"{k}={v:.2f}s" for k, v in run.timings.items())
    print(
        f"{len(run.result.rows)} patterns, {len(run.deduped)} after dedupe "
        f"-> {out} ({stages})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_link(args: argparse.Namespace) -> int:
    analyses = []
    used_ids: set[str] = set()
    for raw_path in args.reports:
        path = Path(raw_path)
        try:
            payload = parse_report(path.read_text(encoding="utf-8"), str(path))
        except OSError as exc:
            return _fail(f"cannot read report: {exc}")
        except ValueError as exc:
            return _fail(str(exc))
        rid = str(payload.get("analysis_id") or path.stem)
        suffix = 2
        while rid in used_ids:
            rid = f"{payload.get('analysis_id') or path.stem}#{suffix}"
            suffix += 1
        used_ids.add(rid)
        analyses.append((rid, report_rows(payload)))

    report = link_report(analyses, args.threshold)
    out = Path(args.out)
    out.write_text(canonical_json(report), encoding="utf-8")
    linked = sum(1 for c in report["clusters"] if len(c["members"]) > 1)
    print(
        f"{len(analyses)} reports -> {len(report['clusters'])} clusters "
        f"({linked} with links) -> {out}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.preset:
        base = PRESETS[args.preset]
    else:
        base = CorpusSpec(
            name="custom",
            traces_per_group=10_000,
            median_len=40,
            vocab_size=args.vocab or 200,
            min_support=0.0275,
        )
    # grid over the three scalability dimensions; each combination is one row
    trace_counts = args.traces or [base.traces_per_group]
    lengths = args.median_len or [base.median_len]
    supports = args.min_support or [base.min_support]
    rows = []
    for n_traces, median_len, min_support in product(trace_counts, lengths, supports):
        spec = CorpusSpec(
            name=base.name,
            traces_per_group=n_traces,
            median_len=median_len,
            vocab_size=args.vocab or base.vocab_size,
            min_support=min_support,
            max_len=args.max_len,
            test_planted=base.test_planted,
            shared_planted=base.shared_planted,
        )
        start = time.perf_counter()
        test_records, control_records = generate_corpus(spec, args.seed)
        generate_s = time.perf_counter() - start

        config = AnalysisConfig(
            min_support=normalize_min_support(spec.min_support),
            max_len=spec.max_len,
            workers=args.workers,
        )
        start = time.perf_counter()
        run = run_analysis(test_records, control_records, config)
        total_s = time.perf_counter() - start
        status = "ok"
        if args.budget and total_s > args.budget:
            status = "timeout"
        row = {
            "preset": spec.name,
            "traces_per_group": spec.traces_per_group,
            "median_len": spec.median_len,
            "vocab": spec.vocab_size,
            "min_support": spec.min_support,
            "max_len": spec.max_len,
            "seed": args.seed,
            "status": status,
            "generate_s": round(generate_s, 3),
            **{f"{k}_s": round(v, 3) for k, v in run.timings.items()},
            "analyze_total_s": round(total_s, 3),
            "patterns": len(run.result.rows),
            "after_dedupe": len(run.deduped),
        }
        rows.append(row)
        print(
            f"{spec.name}: {n_traces} traces/group -> {total_s:.2f}s "
            f"({len(run.result.rows)} patterns) [{status}]",
            file=sys.stderr,
        )

    out = Path(args.out)
    with out.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows -> {out}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(
        data_dir=Path(args.data_dir),
        job_workers=args.job_workers,
        max_body_bytes=args.max_body_mb * 1024 * 1024,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracerca",
        description="Statistical root-cause analysis over event traces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze_p = sub.add_parser("analyze", help="rank test-group patterns against a control group")
    analyze_p.add_argument("--test", required=True, help="test group JSONL file")
    analyze_p.add_argument("--control", required=True, help="control group JSONL file")
    analyze_p.add_argument(
        "--min-support", type=float, default=MIN_SUPPORT_DEFAULT,
        help="fraction of the group if < 1, absolute trace count if >= 1",
    )
    analyze_p.add_argument("--max-len", type=int, default=5)
    analyze_p.add_argument("--similarity", type=float, default=SIMILARITY_DEFAULT)
    analyze_p.add_argument(
        "--control-mode", choices=["exact", "algorithm_faithful"], default="exact"
    )
    analyze_p.add_argument(
        "--control-min-support", type=float,
        help="override the control group's mining threshold (algorithm_faithful mode)",
    )
    analyze_p.add_argument(
        "--binning", choices=[s.value for s in BinStrategy], default="equal_proportion"
    )
    analyze_p.add_argument(
        "--bins", default="sturges",
        help="bin count, 'sturges', or 'fd' (Freedman-Diaconis)",
    )
    analyze_p.add_argument("--format", choices=["json", "table"], default="json")
    analyze_p.add_argument("--out", required=True, help="report output path")
    analyze_p.add_argument("--id", help="analysis id for linking (default: test file stem)")
    analyze_p.add_argument("--top-k", type=int, default=10)
    analyze_p.add_argument("--workers", type=int, default=1)
    analyze_p.set_defaults(func=cmd_analyze)

    link_p = sub.add_parser("link", help="link analysis reports that share a root cause")
    link_p.add_argument("reports", nargs="+", help="rca-report/1 JSON files")
    link_p.add_argument("--threshold", type=float, default=LINK_THRESHOLD_DEFAULT)
    link_p.add_argument("--out", required=True)
    link_p.set_defaults(func=cmd_link)

    bench_p = sub.add_parser("bench", help="synthetic-corpus benchmark harness")
    bench_p.add_argument("--preset", choices=sorted(PRESETS))
    bench_p.add_argument(
        "--traces", type=int, nargs="+",
        help="traces per group; multiple values sweep the trace-count curve",
    )
    bench_p.add_argument(
        "--median-len", type=int, nargs="+",
        help="median trace length; multiple values sweep the length curve",
    )
    bench_p.add_argument(
        "--min-support", type=float, nargs="+",
        help="support threshold; multiple values sweep the threshold curve",
    )
    bench_p.add_argument("--vocab", type=int)
    bench_p.add_argument("--max-len", type=int, default=5)
    bench_p.add_argument("--seed", type=int, default=42)
    bench_p.add_argument("--workers", type=int, default=1)
    bench_p.add_argument("--budget", type=float, help="seconds before a run is flagged timeout")
    bench_p.add_argument("--out", required=True, help="CSV output path")
    bench_p.set_defaults(func=cmd_bench)

    serve_p = sub.add_parser("serve", help="run the HTTP analysis service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8008)
    serve_p.add_argument("--data-dir", default="rca-jobs")
    serve_p.add_argument("--job-workers", type=int, default=2)
    serve_p.add_argument("--max-body-mb", type=int, default=64)
    serve_p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
