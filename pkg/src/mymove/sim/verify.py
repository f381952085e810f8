"""Checks extraction output against a trace's ground-truth ledger."""
from __future__ import annotations

from ..extractor.pipeline import ExtractedActivity

TIMESPAN_TOLERANCE_MS = 60_000


def ledger_mismatches(
    entry: dict,
    activities: list[ExtractedActivity],
    tolerance_ms: int = TIMESPAN_TOLERANCE_MS,
) -> list[str]:
    """Every way the extracted activities disagree with one ledger row."""
    problems: list[str] = []
    if not activities:
        return [f"{entry['report_id']}: nothing extracted"]

    rid = entry["report_id"]
    structure = activities[0].structure.value
    if structure != entry["structure"]:
        problems.append(f"{rid}: structure {structure} != {entry['structure']}")

    types = [a.activity_type for a in activities]
    if types != list(entry["activity_types"]):
        problems.append(f"{rid}: types {types} != {entry['activity_types']}")

    cue = activities[0].time_cue.completeness.value
    if cue != entry["time_cue"]:
        problems.append(f"{rid}: time cue {cue} != {entry['time_cue']}")

    effort = activities[0].effort.category.value if activities[0].effort else None
    if effort != entry["effort"]:
        problems.append(f"{rid}: effort {effort} != {entry['effort']}")

    if entry["time_cue"] == "complete" and cue == "complete":
        span = activities[0].timespan
        if span is None:
            problems.append(f"{rid}: complete cue but no timespan")
        else:
            for label, got, want in (
                ("start", span[0], entry["expected_start"]),
                ("end", span[1], entry["expected_end"]),
            ):
                if want is None:
                    continue
                if abs(got - want) > tolerance_ms:
                    problems.append(
                        f"{rid}: {label} off by {abs(got - want)} ms"
                    )
    return problems
