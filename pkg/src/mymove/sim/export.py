"""Trace export: everything a study server or analysis script ingests."""
from __future__ import annotations

import csv
import json
from pathlib import Path

from ..types import format_instant
from .harness import SimTrace


def report_payload(report) -> dict:
    """The JSON body the report endpoint accepts, also one JSONL row."""
    return {
        "report_id": report.report_id,
        "device_id": report.device_id,
        "method": report.method.value,
        "submitted_at": format_instant(report.submitted_at),
        "audio_duration_s": report.audio_duration,
        "transcript": report.transcript,
    }


def _ledger_row(row: dict) -> dict:
    out = dict(row)
    out["submitted_at"] = format_instant(row["submitted_at"])
    for key in ("expected_start", "expected_end"):
        if out.get(key) is not None:
            out[key] = format_instant(out[key])
    return out


def write_trace(trace: SimTrace, outdir: Path) -> dict[str, Path]:
    """Write a trace to disk; returns the paths keyed by artifact name."""
    outdir = Path(outdir)
    batches_dir = outdir / "batches"
    batches_dir.mkdir(parents=True, exist_ok=True)

    paths: dict[str, Path] = {}
    for batch, blob in zip(trace.batches, trace.encoded_batches):
        (batches_dir / f"{batch.sequence:04d}.mymv").write_bytes(blob)
    paths["batches"] = batches_dir

    reports_path = outdir / "reports.jsonl"
    with reports_path.open("w", encoding="utf-8") as fh:
        for report in trace.reports:
            fh.write(json.dumps(report_payload(report)) + "\n")
    paths["reports"] = reports_path

    gt_path = outdir / "ground_truth.csv"
    with gt_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["start_iso", "end_iso", "class", "steps"])
        for seg in trace.segments:
            writer.writerow(
                [
                    format_instant(seg.start),
                    format_instant(seg.end),
                    seg.gt_class.value,
                    seg.steps,
                ]
            )
    paths["ground_truth"] = gt_path

    ledger_path = outdir / "ledger.json"
    ledger_path.write_text(
        json.dumps(
            {
                "device_id": trace.device_id,
                "participant_age": trace.participant_age,
                "started_at": format_instant(trace.started_at),
                "days": trace.days,
                "seed": trace.seed,
                "wear_intervals": [
                    [format_instant(a), format_instant(b)]
                    for a, b in trace.wear_intervals
                ],
                "entries": [_ledger_row(r) for r in trace.ledger],
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    paths["ledger"] = ledger_path

    events_path = outdir / "scheduler_events.jsonl"
    with events_path.open("w", encoding="utf-8") as fh:
        for rec in trace.scheduler_events:
            fh.write(json.dumps(rec) + "\n")
    paths["scheduler_events"] = events_path
    return paths
