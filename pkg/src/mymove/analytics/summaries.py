"""Corpus roll-ups: report counts by method, structure, time-cue class,
and effort presence, plus wear hours per day."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Mapping, Optional, Sequence

from ..capture import VerbalReport
from ..extractor.pipeline import ExtractedActivity
from ..types import MS_PER_HOUR

METHODS = ("prompted", "voluntary")
STRUCTURES = ("singleton", "sequential", "multitasking", "compound", "uncoded")
TIME_CUES = ("complete", "incomplete", "none")


def _day_key(at_ms: int) -> str:
    return datetime.fromtimestamp(at_ms / 1000, tz=timezone.utc).date().isoformat()


@dataclass
class DeviceSummary:
    methods: dict[str, int] = field(default_factory=lambda: dict.fromkeys(METHODS, 0))
    structures: dict[str, int] = field(
        default_factory=lambda: dict.fromkeys(STRUCTURES, 0)
    )
    time_cues: dict[str, int] = field(
        default_factory=lambda: dict.fromkeys(TIME_CUES, 0)
    )
    method_by_cue: dict[str, dict[str, int]] = field(
        default_factory=lambda: {m: dict.fromkeys(TIME_CUES, 0) for m in METHODS}
    )
    with_effort: int = 0
    without_effort: int = 0
    activity_count: int = 0
    reports_per_day: dict[str, int] = field(default_factory=dict)
    wear_hours: dict[str, float] = field(default_factory=dict)

    @property
    def total_reports(self) -> int:
        return sum(self.methods.values())

    def to_dict(self) -> dict:
        return {
            "methods": dict(self.methods),
            "total_reports": self.total_reports,
            "structures": dict(self.structures),
            "time_cues": dict(self.time_cues),
            "method_by_cue": {m: dict(c) for m, c in self.method_by_cue.items()},
            "with_effort": self.with_effort,
            "without_effort": self.without_effort,
            "activity_count": self.activity_count,
            "reports_per_day": dict(sorted(self.reports_per_day.items())),
            "wear_hours": {d: round(h, 3) for d, h in sorted(self.wear_hours.items())},
        }


@dataclass
class StudySummary:
    per_device: dict[str, DeviceSummary]
    totals: DeviceSummary

    def to_dict(self) -> dict:
        return {
            "participants": {
                d: s.to_dict() for d, s in sorted(self.per_device.items())
            },
            "totals": self.totals.to_dict(),
        }


def _fold_report(
    s: DeviceSummary, report: VerbalReport, acts: Sequence[ExtractedActivity]
) -> None:
    s.methods[report.method] = s.methods.get(report.method, 0) + 1
    day = _day_key(report.submitted_at)
    s.reports_per_day[day] = s.reports_per_day.get(day, 0) + 1
    structure = acts[0].structure.value if acts else "uncoded"
    cue = acts[0].time_cue.completeness.value if acts else "none"
    s.structures[structure] = s.structures.get(structure, 0) + 1
    s.time_cues[cue] = s.time_cues.get(cue, 0) + 1
    s.method_by_cue.setdefault(report.method, dict.fromkeys(TIME_CUES, 0))
    s.method_by_cue[report.method][cue] = (
        s.method_by_cue[report.method].get(cue, 0) + 1
    )
    if acts and acts[0].effort is not None:
        s.with_effort += 1
    else:
        s.without_effort += 1
    s.activity_count += len(acts)


def _fold_wear(s: DeviceSummary, spans: Iterable[tuple[int, int]]) -> None:
    for start, end in spans:
        # split a span across UTC day boundaries
        cur = start
        while cur < end:
            day = _day_key(cur)
            day_start = datetime.fromisoformat(day).replace(tzinfo=timezone.utc)
            next_day = int(day_start.timestamp() * 1000) + 24 * MS_PER_HOUR
            hi = min(end, next_day)
            s.wear_hours[day] = s.wear_hours.get(day, 0.0) + (hi - cur) / MS_PER_HOUR
            cur = hi


def summarize(
    reports: Sequence[VerbalReport],
    activities: Sequence[ExtractedActivity],
    wear: Optional[Mapping[str, Sequence[tuple[int, int]]]] = None,
) -> StudySummary:
    by_report: dict[str, list[ExtractedActivity]] = defaultdict(list)
    for a in activities:
        by_report[a.report_id].append(a)

    per_device: dict[str, DeviceSummary] = {}
    totals = DeviceSummary()
    for report in reports:
        s = per_device.setdefault(report.device_id, DeviceSummary())
        acts = by_report.get(report.report_id, [])
        _fold_report(s, report, acts)
        _fold_report(totals, report, acts)
    for device_id, spans in (wear or {}).items():
        s = per_device.setdefault(device_id, DeviceSummary())
        _fold_wear(s, spans)
        _fold_wear(totals, spans)
    return StudySummary(per_device=per_device, totals=totals)


def method_table(summary: StudySummary) -> list[list[str]]:
    """Rows: methods plus a totals row; columns: participants plus total."""
    devices = sorted(summary.per_device)
    header = ["reports"] + devices + ["total"]
    rows = [header]
    for method in METHODS:
        row = [method]
        row += [str(summary.per_device[d].methods.get(method, 0)) for d in devices]
        row.append(str(summary.totals.methods.get(method, 0)))
        rows.append(row)
    total_row = ["total"]
    total_row += [str(summary.per_device[d].total_reports) for d in devices]
    total_row.append(str(summary.totals.total_reports))
    rows.append(total_row)
    return rows


def render_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return "\n".join(lines)
