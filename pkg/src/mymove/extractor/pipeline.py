"""End-to-end transcript extraction: segmentation, time cue, effort,
and timespan resolution rolled into per-activity records.

Cues are report-level. A complete cue resolves to a concrete timespan for
singleton and multitasking reports (co-occurring activities share the
interval). Sequential and compound reports get their members demoted to an
incomplete cue: a single report-level interval cannot be attributed to any
one member. Resolution failures (future or inverted intervals) also demote
to incomplete rather than dropping the activity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..capture import VerbalReport
from ..types import format_instant
from .effort import EffortCue, extract_effort
from .lexicon import LexiconEntry, load_lexicon
from .segment import SegmentedReport, segment_report
from .taxonomy import ReportStructure
from .timecue import (
    ResolutionError,
    TimeCue,
    TimeCueClass,
    extract_time_cue,
    resolve_timespan,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractedActivity:
    activity_id: str
    report_id: str
    device_id: str
    method: str
    submitted_at: int
    structure: ReportStructure
    activity_type: str
    semantic: str
    time_cue: TimeCue
    timespan: Optional[tuple[int, int]]
    effort: Optional[EffortCue]
    source_span: tuple[int, int]

    def to_record(self) -> dict:
        clock = lambda c: f"{c[0]:02d}:{c[1]:02d}" if c else None
        return {
            "activity_id": self.activity_id,
            "report_id": self.report_id,
            "device_id": self.device_id,
            "method": self.method,
            "submitted_at": format_instant(self.submitted_at),
            "structure": self.structure.value,
            "activity_type": self.activity_type,
            "semantic": self.semantic,
            "time_cue": {
                "completeness": self.time_cue.completeness.value,
                "duration_minutes": self.time_cue.duration_minutes,
                "start_clock": clock(self.time_cue.start_clock),
                "end_clock": clock(self.time_cue.end_clock),
                "end_anchor": self.time_cue.end_anchor,
            },
            "timespan": (
                {
                    "start": format_instant(self.timespan[0]),
                    "end": format_instant(self.timespan[1]),
                }
                if self.timespan
                else None
            ),
            "effort": (
                {"category": self.effort.category.value, "score": self.effort.score}
                if self.effort
                else None
            ),
            "source_span": list(self.source_span),
        }


def _demote(cue: TimeCue) -> TimeCue:
    return TimeCue(
        completeness=TimeCueClass.INCOMPLETE,
        start_clock=cue.start_clock,
        end_clock=cue.end_clock,
        duration_minutes=cue.duration_minutes,
        end_anchor=cue.end_anchor,
    )


class Extractor:
    """Reusable extraction front end holding a compiled lexicon."""

    def __init__(self, entries: Optional[list[LexiconEntry]] = None):
        self.entries = entries if entries is not None else load_lexicon()

    def segment(self, text: str) -> SegmentedReport:
        return segment_report(text, self.entries)

    def extract(self, report: VerbalReport) -> list[ExtractedActivity]:
        segmented = segment_report(report.transcript, self.entries)
        if not segmented.activities:
            return []

        cue = extract_time_cue(report.transcript)
        effort = extract_effort(report.transcript, self.entries)

        spans_shareable = segmented.structure in (
            ReportStructure.SINGLETON,
            ReportStructure.MULTITASKING,
        )
        timespan: Optional[tuple[int, int]] = None
        if cue.completeness is TimeCueClass.COMPLETE:
            if spans_shareable:
                try:
                    timespan = resolve_timespan(cue, report.submitted_at)
                except ResolutionError as exc:
                    log.debug("report %s: cue unresolvable: %s", report.report_id, exc)
                    cue = _demote(cue)
            else:
                # interval exists but cannot be pinned to one member
                cue = _demote(cue)
        elif cue.completeness is TimeCueClass.INCOMPLETE and not spans_shareable:
            cue = _demote(cue)

        out: list[ExtractedActivity] = []
        for i, mention in enumerate(segmented.activities):
            out.append(
                ExtractedActivity(
                    # ':' stays literal inside a URL path segment, '#' would not
                    activity_id=f"{report.report_id}:{i}",
                    report_id=report.report_id,
                    device_id=report.device_id,
                    method=report.method,
                    submitted_at=report.submitted_at,
                    structure=segmented.structure,
                    activity_type=mention.activity_type,
                    semantic=mention.semantic.value,
                    time_cue=cue,
                    timespan=timespan,
                    effort=effort,
                    source_span=mention.span,
                )
            )
        return out


def extract_report(
    report: VerbalReport, entries: Optional[list[LexiconEntry]] = None
) -> list[ExtractedActivity]:
    return Extractor(entries).extract(report)


def activity_from_record(record: dict) -> ExtractedActivity:
    """Inverse of ExtractedActivity.to_record for reloading persisted rows.

    The effort source span is not persisted; reloaded cues carry (0, 0).
    """
    from ..types import parse_instant
    from .effort import EffortCue
    from .taxonomy import EffortCategory

    def clock(text: Optional[str]) -> Optional[tuple[int, int]]:
        if text is None:
            return None
        hh, mm = text.split(":")
        return (int(hh), int(mm))

    cue = record["time_cue"]
    span = record.get("timespan")
    effort = record.get("effort")
    return ExtractedActivity(
        activity_id=record["activity_id"],
        report_id=record["report_id"],
        device_id=record["device_id"],
        method=record["method"],
        submitted_at=parse_instant(record["submitted_at"]),
        structure=ReportStructure(record["structure"]),
        activity_type=record["activity_type"],
        semantic=record["semantic"],
        time_cue=TimeCue(
            completeness=TimeCueClass(cue["completeness"]),
            start_clock=clock(cue["start_clock"]),
            end_clock=clock(cue["end_clock"]),
            duration_minutes=cue["duration_minutes"],
            end_anchor=cue["end_anchor"],
        ),
        timespan=(
            (parse_instant(span["start"]), parse_instant(span["end"]))
            if span
            else None
        ),
        effort=(
            EffortCue(EffortCategory(effort["category"]), effort["score"], (0, 0))
            if effort
            else None
        ),
        source_span=(record["source_span"][0], record["source_span"][1]),
    )
