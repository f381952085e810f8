"""Operator entry point wiring the library together.

Subcommands: simulate, extract, align, metrics, wer, serve, summarize.

Output layout under the data dir (shared by every subcommand):

    traces/<device_id>/   simulate: batches/, reports.jsonl, ground_truth.csv,
                          ledger.json, scheduler_events.jsonl
    labels/               extract: activities.jsonl
    metrics/              align / metrics / summarize: delimited tables,
                          summary.json, and rendered figures (.png)

Exit codes: 0 success, 1 I/O or data failure (diagnostic on stderr),
2 usage errors (argparse). Reruns with identical inputs and --seed are
byte-identical; all writes go through a temp file + rename.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import shutil
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Callable, Optional, Sequence

from .types import GroundTruthClass, format_instant, parse_instant

_ENV_PREFIX = "MYMOVE_"


def _env(key: str, fallback: Optional[str] = None) -> Optional[str]:
    return os.environ.get(_ENV_PREFIX + key, fallback)


def _fail(message: str) -> int:
    print(f"mymove: {message}", file=sys.stderr)
    return 1


def _write_atomic(path: Path, data: str | bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _render_atomic(path: Path, render: Callable[[str], None]) -> None:
    """Figures render straight to a path, so stage them the same way."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=path.suffix)
    os.close(fd)
    try:
        render(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _build_extractor(lexicon: Optional[str]):
    from .extractor import Extractor, load_lexicon, parse_lexicon

    if lexicon:
        entries = parse_lexicon(Path(lexicon).read_text(encoding="utf-8").splitlines())
    else:
        entries = load_lexicon()
    return Extractor(entries)


def _trace_dirs(data_dir: Path) -> list[Path]:
    root = data_dir / "traces"
    if not root.is_dir():
        return []
    return sorted(d for d in root.iterdir() if (d / "reports.jsonl").is_file())


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            rows.append(json.loads(line))
    return rows


def _load_reports(args) -> list:
    from .service.storage import report_from_payload

    if args.reports:
        paths = [Path(args.reports)]
    else:
        paths = [d / "reports.jsonl" for d in _trace_dirs(args.data_dir)]
    if not paths:
        raise FileNotFoundError(
            f"no reports.jsonl under {args.data_dir / 'traces'}; run simulate or pass --reports"
        )
    reports = []
    for path in paths:
        reports.extend(report_from_payload(row) for row in _read_jsonl(path))
    return reports


def _load_activities(args) -> list:
    from .extractor import activity_from_record

    path = Path(args.activities) if args.activities else args.data_dir / "labels" / "activities.jsonl"
    if not path.is_file():
        raise FileNotFoundError(f"{path} not found; run extract or pass --activities")
    return [activity_from_record(row) for row in _read_jsonl(path)]


def _decoded_batches(trace_dir: Path) -> list:
    from .ingest.codec import decode_batch

    batches = []
    for blob_path in sorted((trace_dir / "batches").glob("*.mymv")):
        batches.append(decode_batch(blob_path.read_bytes()))
    return batches


# ---------------------------------------------------------------- simulate


def cmd_simulate(args) -> int:
    from .sim import load_default_script, parse_script, run, trace_summary_line, write_trace

    if args.script == "default":
        script = load_default_script()
    else:
        script = parse_script(Path(args.script).read_text(encoding="utf-8"))
    trace = run(script, days=args.days, seed=args.seed)

    out = args.data_dir / "traces" / trace.device_id
    staging = out.parent / f".{out.name}.tmp"
    if staging.exists():
        shutil.rmtree(staging)
    write_trace(trace, staging)
    if out.exists():
        shutil.rmtree(out)
    os.replace(staging, out)

    print(trace_summary_line(trace))
    print(f"wrote {out}")
    return 0


# ----------------------------------------------------------------- extract


def cmd_extract(args) -> int:
    extractor = _build_extractor(args.lexicon)
    reports = _load_reports(args)
    records = []
    for report in reports:
        records.extend(a.to_record() for a in extractor.extract(report))

    out = args.data_dir / "labels" / "activities.jsonl"
    _write_atomic(out, "".join(json.dumps(r, sort_keys=True) + "\n" for r in records))
    print(f"{len(reports)} reports -> {len(records)} activities")
    print(f"wrote {out}")
    return 0


# ------------------------------------------------------------------- align


def _segments_for(args, trace_dir: Optional[Path]):
    from .analytics import read_segments_csv

    if args.ground_truth:
        path = Path(args.ground_truth)
    elif trace_dir is not None:
        path = trace_dir / "ground_truth.csv"
    else:
        raise FileNotFoundError("no ground truth; run simulate or pass --ground-truth")
    return read_segments_csv(path.read_text(encoding="utf-8").splitlines())


def cmd_align(args) -> int:
    from .analytics import align, bins_from_vitals, render_timeline, render_timeline_csv
    from .analytics.alignment import UNCOVERED

    activities = _load_activities(args)
    trace_dirs = _trace_dirs(args.data_dir)
    if args.ground_truth:
        # explicit ground truth scores every activity as one cohort
        groups = [(None, activities)]
    else:
        if not trace_dirs:
            raise FileNotFoundError(
                f"no traces under {args.data_dir / 'traces'}; run simulate or pass --ground-truth"
            )
        groups = [
            (d, [a for a in activities if a.device_id == d.name]) for d in trace_dirs
        ]

    classes = [c.value for c in GroundTruthClass] + [UNCOVERED]
    header = ["device_id", "activity_id", "activity_type", "start", "end"] + classes
    rows = []
    metrics_dir = args.data_dir / "metrics"
    for trace_dir, acts in groups:
        segments = _segments_for(args, trace_dir)
        device = trace_dir.name if trace_dir else (acts[0].device_id if acts else "")
        timed = [a for a in acts if a.timespan is not None]
        for a in timed:
            fractions = align(a.timespan, segments)
            rows.append(
                [a.device_id, a.activity_id, a.activity_type]
                + [format_instant(a.timespan[0]), format_instant(a.timespan[1])]
                + [f"{fractions.get(c, 0.0):.6f}" for c in classes]
            )
        bins = []
        if trace_dir is not None:
            for batch in _decoded_batches(trace_dir):
                bins.extend(bins_from_vitals(batch.vitals))
        suffix = f"-{device}" if device else ""
        _write_atomic(
            metrics_dir / f"timeline{suffix}.csv",
            render_timeline_csv(segments, timed, bins),
        )
        _render_atomic(
            metrics_dir / f"timeline{suffix}.png",
            lambda path, s=segments, t=timed, b=bins, d=device: render_timeline(
                path, s, t, b, title=d or None
            ),
        )

    _write_atomic(metrics_dir / "alignment.csv", _csv_text(header, rows))
    print(f"{len(rows)} timed activities aligned across {len(groups)} trace(s)")
    print(f"wrote {metrics_dir / 'alignment.csv'}")
    return 0


# ----------------------------------------------------------------- metrics


def cmd_metrics(args) -> int:
    from .analytics import (
        IntensityMeasurement,
        bins_from_vitals,
        cadence,
        classify_intensity,
        pct_hrmax,
        read_segments_csv,
        render_effort_metrics,
    )

    activities = _load_activities(args)
    trace_dirs = _trace_dirs(args.data_dir)
    if not trace_dirs:
        raise FileNotFoundError(
            f"no traces under {args.data_dir / 'traces'}; run simulate first"
        )

    header = [
        "device_id",
        "activity_id",
        "activity_type",
        "minutes",
        "mean_hr",
        "pct_hrmax",
        "cadence_watch",
        "cadence_gt",
        "band",
        "criterion",
    ]
    rows = []
    scored_acts = []
    calls = []
    for trace_dir in trace_dirs:
        ledger = json.loads((trace_dir / "ledger.json").read_text(encoding="utf-8"))
        age = args.age if args.age is not None else ledger["participant_age"]
        segments = read_segments_csv(
            (trace_dir / "ground_truth.csv").read_text(encoding="utf-8").splitlines()
        )
        vitals = []
        for batch in _decoded_batches(trace_dir):
            vitals.extend(batch.vitals)
        bins = bins_from_vitals(vitals)
        for a in activities:
            if a.device_id != trace_dir.name or a.timespan is None:
                continue
            start, end = a.timespan
            hr = [v.heart_rate for v in vitals if start <= v.minute_anchor < end]
            pct = pct_hrmax(hr, age)
            cad_watch = cadence(bins, (start, end))
            cad_gt = cadence(segments, (start, end))
            call = classify_intensity(
                IntensityMeasurement(
                    pct_hrmax=pct, cadence_gt=cad_gt, cadence_watch=cad_watch
                )
            )
            mean_hr = sum(hr) / len(hr) if hr else None
            rows.append(
                [
                    a.device_id,
                    a.activity_id,
                    a.activity_type,
                    f"{(end - start) / 60000:.1f}",
                    f"{mean_hr:.2f}" if mean_hr is not None else "",
                    f"{pct:.2f}" if pct is not None else "",
                    f"{cad_watch:.2f}",
                    f"{cad_gt:.2f}",
                    call.band.value,
                    call.criterion or "",
                ]
            )
            scored_acts.append(a)
            calls.append(call)

    metrics_dir = args.data_dir / "metrics"
    _write_atomic(metrics_dir / "intensity.csv", _csv_text(header, rows))
    _render_atomic(
        metrics_dir / "intensity.png",
        lambda path: render_effort_metrics(path, scored_acts, calls),
    )
    bands = {}
    for call in calls:
        bands[call.band.value] = bands.get(call.band.value, 0) + 1
    print(f"{len(rows)} timed activities scored: " + json.dumps(bands, sort_keys=True))
    print(f"wrote {metrics_dir / 'intensity.csv'}")
    return 0


# --------------------------------------------------------------------- wer


def cmd_wer(args) -> int:
    from .analytics import wer

    reference = Path(args.ref).read_text(encoding="utf-8")
    hypothesis = Path(args.hyp).read_text(encoding="utf-8")
    print(f"{wer(reference, hypothesis):.4f}")
    return 0


# ------------------------------------------------------------------- serve


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app, load_config

    config = load_config(env=os.environ)
    config = replace(config, data_dir=Path(args.data_dir), token=args.token)
    if args.lexicon:
        config = replace(config, lexicon_path=Path(args.lexicon))
    if args.listen:
        host, _, port = args.listen.rpartition(":")
        if not host or not port.isdigit():
            raise ValueError(f"--listen wants host:port, got {args.listen!r}")
        config = replace(config, host=host, port=int(port))

    app = create_app(config)
    print(f"serving {config.data_dir} on {config.host}:{config.port}")
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


# --------------------------------------------------------------- summarize


def cmd_summarize(args) -> int:
    from .analytics import method_table, render_table, render_wear_hours, summarize

    reports = _load_reports(args)
    activities = _load_activities(args)

    wear = {}
    for trace_dir in _trace_dirs(args.data_dir):
        ledger = json.loads((trace_dir / "ledger.json").read_text(encoding="utf-8"))
        wear[ledger["device_id"]] = [
            (parse_instant(a), parse_instant(b)) for a, b in ledger["wear_intervals"]
        ]

    summary = summarize(reports, activities, wear or None)
    table = method_table(summary)
    print(render_table(table))

    metrics_dir = args.data_dir / "metrics"
    _write_atomic(
        metrics_dir / "summary.json",
        json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n",
    )
    _write_atomic(metrics_dir / "summary.csv", _csv_text(table[0], table[1:]))
    if summary.totals.wear_hours:
        _render_atomic(
            metrics_dir / "wear_hours.png",
            lambda path: render_wear_hours(path, summary.totals.wear_hours),
        )
    print(f"wrote {metrics_dir / 'summary.json'}")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mymove",
        description="Simulate, extract, score, and serve verbal activity reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name: str, handler, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument(
            "--data-dir",
            type=Path,
            default=Path(_env("DATA_DIR", "mymove-data")),
            help="artifact root (traces/, labels/, metrics/); env MYMOVE_DATA_DIR",
        )
        return p

    p = add("simulate", cmd_simulate, "run a scripted wear period and write a trace")
    p.add_argument("--script", default="default", help="'default' or a YAML path")
    p.add_argument("--days", type=int, default=7)
    p.add_argument("--seed", type=int, default=1)

    p = add("extract", cmd_extract, "turn reports.jsonl into labeled activities")
    p.add_argument("--reports", help="reports.jsonl path (default: every trace)")
    p.add_argument(
        "--lexicon", default=_env("LEXICON"), help="lexicon TSV; env MYMOVE_LEXICON"
    )

    p = add("align", cmd_align, "score activity timespans against ground truth")
    p.add_argument("--activities", help="activities.jsonl (default: labels/)")
    p.add_argument("--ground-truth", help="segments CSV (default: per trace)")

    p = add("metrics", cmd_metrics, "per-activity intensity from sensor batches")
    p.add_argument("--activities", help="activities.jsonl (default: labels/)")
    p.add_argument("--age", type=float, help="override the trace participant age")

    p = add("wer", cmd_wer, "word error rate between two transcript files")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)

    p = add("serve", cmd_serve, "run the ingestion/review HTTP service")
    p.add_argument(
        "--listen", default=_env("LISTEN"), help="host:port; env MYMOVE_LISTEN"
    )
    p.add_argument(
        "--token",
        default=_env("TOKEN", "dev-token"),
        help="bearer token for mutations; env MYMOVE_TOKEN",
    )
    p.add_argument(
        "--lexicon", default=_env("LEXICON"), help="lexicon TSV; env MYMOVE_LEXICON"
    )

    p = add("summarize", cmd_summarize, "print per-participant report counts")
    p.add_argument("--reports", help="reports.jsonl path (default: every trace)")
    p.add_argument("--activities", help="activities.jsonl (default: labels/)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except OSError as exc:
        return _fail(str(exc))
    except (ValueError, KeyError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
