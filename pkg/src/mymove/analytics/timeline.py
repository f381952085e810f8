"""Timeline series export: ground-truth bands, report interval bands, and
per-minute step bars in one delimited file for external plotting."""
from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from ..extractor.pipeline import ExtractedActivity
from ..types import format_instant
from .alignment import GroundTruthSegment, StepBin

FIELDS = ["series", "start", "end", "label", "value"]


def timeline_rows(
    segments: Sequence[GroundTruthSegment],
    activities: Sequence[ExtractedActivity],
    step_bins: Sequence[StepBin],
) -> list[dict]:
    rows: list[dict] = []
    for seg in segments:
        rows.append(
            {
                "series": "ground_truth",
                "start": format_instant(seg.start),
                "end": format_instant(seg.end),
                "label": seg.gt_class.value,
                "value": seg.steps,
            }
        )
    for act in activities:
        if act.timespan is None:
            continue
        rows.append(
            {
                "series": "report",
                "start": format_instant(act.timespan[0]),
                "end": format_instant(act.timespan[1]),
                "label": act.activity_type,
                "value": "",
            }
        )
    for b in step_bins:
        rows.append(
            {
                "series": "steps",
                "start": format_instant(b.start),
                "end": format_instant(b.end),
                "label": "",
                "value": b.steps,
            }
        )
    return rows


def render_timeline_csv(
    segments: Sequence[GroundTruthSegment],
    activities: Sequence[ExtractedActivity],
    step_bins: Sequence[StepBin],
) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in timeline_rows(segments, activities, step_bins):
        writer.writerow(row)
    return out.getvalue()


def read_segments_csv(lines: Iterable[str]) -> list[GroundTruthSegment]:
    """Parse ground-truth segments: header start_iso,end_iso,class,steps."""
    from ..types import GroundTruthClass, parse_instant

    reader = csv.DictReader(lines)
    segments = [
        GroundTruthSegment(
            start=parse_instant(row["start_iso"]),
            end=parse_instant(row["end_iso"]),
            gt_class=GroundTruthClass(row["class"]),
            steps=int(row["steps"]),
        )
        for row in reader
    ]
    segments.sort(key=lambda s: s.start)
    return segments
