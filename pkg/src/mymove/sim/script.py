"""Behavior scripts: a participant, a wear schedule, and a timeline of
scripted activities that the harness replays day by day.

Clock fields are "HH:MM" day-local strings; entries either recur daily
(day: daily) or pin to one day (day: 2). Each entry names the activity
type, the posture class the thigh monitor would log, generator means for
steps and heart rate, a reporting policy, and how the spoken report will
phrase its time cue.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Optional

import yaml

from ..extractor.taxonomy import ACTIVITY_TYPES, EffortCategory
from ..types import GroundTruthClass


class InvalidScript(ValueError):
    pass


class ReportPolicy(str, Enum):
    RESPOND_TO_PROMPT = "respond_to_prompt"
    VOLUNTARY_AT = "voluntary_at"
    IGNORE = "ignore"


class CueMode(str, Enum):
    NONE = "none"
    COMPLETION = "completion"  # "just finished", no span
    DURATION = "duration"  # bare "for about N minutes"
    DURATION_COMPLETED = "duration_completed"  # finished + duration
    ELAPSED = "elapsed"  # "for the past N minutes"
    CLOCK_PAIR = "clock_pair"  # "from H:MM until H:MM"


# posture classes a scripted activity may plausibly carry
GT_CLASSES_FOR_TYPE: dict[str, frozenset[GroundTruthClass]] = {
    "cleaning_arranging_carrying": frozenset(
        {GroundTruthClass.STANDING, GroundTruthClass.STEPPING}
    ),
    "preparing_food": frozenset({GroundTruthClass.STANDING}),
    "driving_in_vehicle": frozenset({GroundTruthClass.IN_VEHICLE}),
    "gardening": frozenset({GroundTruthClass.STANDING, GroundTruthClass.STEPPING}),
    "caring_for_pets": frozenset(
        {GroundTruthClass.STANDING, GroundTruthClass.STEPPING}
    ),
    "offline_shopping": frozenset(
        {GroundTruthClass.STEPPING, GroundTruthClass.STANDING}
    ),
    "other_housekeeping": frozenset(
        {GroundTruthClass.STANDING, GroundTruthClass.STEPPING}
    ),
    "eating_food": frozenset({GroundTruthClass.SITTING, GroundTruthClass.STANDING}),
    "dressing": frozenset({GroundTruthClass.STANDING}),
    "personal_hygiene": frozenset({GroundTruthClass.STANDING}),
    "treatment": frozenset({GroundTruthClass.LYING, GroundTruthClass.SITTING}),
    "non_exercise_stepping": frozenset({GroundTruthClass.STEPPING}),
    "computer": frozenset({GroundTruthClass.SITTING}),
    "tv": frozenset({GroundTruthClass.SITTING, GroundTruthClass.LYING}),
    "mobile_device": frozenset({GroundTruthClass.SITTING, GroundTruthClass.LYING}),
    "device_unspecified": frozenset(
        {GroundTruthClass.SITTING, GroundTruthClass.LYING}
    ),
    "cardio": frozenset({GroundTruthClass.STEPPING, GroundTruthClass.BIKING}),
    "strength_stretching": frozenset(
        {GroundTruthClass.STANDING, GroundTruthClass.SITTING}
    ),
    "other_exercise": frozenset(
        {GroundTruthClass.STANDING, GroundTruthClass.STEPPING}
    ),
    "paperwork_desk_work": frozenset({GroundTruthClass.SITTING}),
    "reading_on_paper": frozenset({GroundTruthClass.SITTING, GroundTruthClass.LYING}),
    "puzzle_table_game": frozenset({GroundTruthClass.SITTING}),
    "crafting_artwork": frozenset(
        {GroundTruthClass.SITTING, GroundTruthClass.STANDING}
    ),
    "seeing_at_theater": frozenset({GroundTruthClass.SITTING}),
    "musical_instrument": frozenset(
        {GroundTruthClass.SITTING, GroundTruthClass.STANDING}
    ),
    "nothing_waiting": frozenset(
        {GroundTruthClass.SITTING, GroundTruthClass.STANDING}
    ),
    "napping": frozenset({GroundTruthClass.LYING, GroundTruthClass.SITTING}),
    "face_to_face": frozenset({GroundTruthClass.SITTING, GroundTruthClass.STANDING}),
    "voice_call": frozenset({GroundTruthClass.SITTING, GroundTruthClass.STANDING}),
}

_CLOCK = re.compile(r"^(\d{1,2}):(\d{2})$")


def parse_clock_minutes(text: str) -> int:
    m = _CLOCK.match(str(text))
    if not m:
        raise InvalidScript(f"bad clock {text!r}, expected HH:MM")
    hour, minute = int(m.group(1)), int(m.group(2))
    if not (0 <= hour <= 23 and 0 <= minute <= 59):
        raise InvalidScript(f"clock {text!r} out of range")
    return hour * 60 + minute


@dataclass(frozen=True)
class ScriptEntry:
    day: Optional[int]  # None = every day
    start_min: int  # minutes since local midnight
    end_min: int
    activity_type: str
    gt_class: GroundTruthClass
    steps_per_min: float
    hr_mean: float
    effort: Optional[EffortCategory]
    report_policy: ReportPolicy
    cue_mode: CueMode
    report_at_min: Optional[int] = None  # voluntary_at instant; default = end
    secondary_type: Optional[str] = None  # simultaneous second activity

    @property
    def duration_min(self) -> int:
        return self.end_min - self.start_min


@dataclass(frozen=True)
class FillerProfile:
    gt_class: GroundTruthClass = GroundTruthClass.SITTING
    steps_per_min: float = 1.0
    hr_mean: float = 70.0
    respond_to_prompt: bool = True


@dataclass(frozen=True)
class SleepProfile:
    hr_mean: float = 55.0


@dataclass(frozen=True)
class Participant:
    participant_id: str
    age: float
    start_date: date
    don_min: int
    doff_min: int


@dataclass(frozen=True)
class BehaviorScript:
    participant: Participant
    timeline: tuple[ScriptEntry, ...]
    filler: FillerProfile = field(default_factory=FillerProfile)
    sleep: SleepProfile = field(default_factory=SleepProfile)


def _entry_from_mapping(raw: dict, index: int) -> ScriptEntry:
    try:
        day_raw = raw.get("day", "daily")
        day = None if day_raw in ("daily", None) else int(day_raw)
        activity_type = raw["activity_type"]
        if activity_type not in ACTIVITY_TYPES:
            raise InvalidScript(f"entry {index}: unknown activity type {activity_type!r}")
        secondary = raw.get("secondary_type")
        if secondary is not None and secondary not in ACTIVITY_TYPES:
            raise InvalidScript(f"entry {index}: unknown secondary type {secondary!r}")
        effort_raw = raw.get("effort_category")
        entry = ScriptEntry(
            day=day,
            start_min=parse_clock_minutes(raw["start"]),
            end_min=parse_clock_minutes(raw["end"]),
            activity_type=activity_type,
            gt_class=GroundTruthClass(raw["gt_class"]),
            steps_per_min=float(raw.get("steps_per_min", 0)),
            hr_mean=float(raw.get("hr_mean", 75)),
            effort=EffortCategory(effort_raw) if effort_raw else None,
            report_policy=ReportPolicy(raw.get("report_policy", "respond_to_prompt")),
            cue_mode=CueMode(raw.get("cue_mode", "none")),
            report_at_min=(
                parse_clock_minutes(raw["report_at"]) if "report_at" in raw else None
            ),
            secondary_type=secondary,
        )
    except InvalidScript:
        raise
    except (KeyError, ValueError) as exc:
        raise InvalidScript(f"entry {index}: {exc}") from exc
    return entry


def validate_script(script: BehaviorScript) -> None:
    p = script.participant
    if not (0 <= p.don_min < p.doff_min <= 24 * 60):
        raise InvalidScript("wear window must satisfy 0 <= don < doff <= 24:00")
    if p.age <= 0:
        raise InvalidScript("age must be positive")

    for i, e in enumerate(script.timeline):
        if e.start_min >= e.end_min:
            raise InvalidScript(f"entry {i}: start must precede end")
        if e.day is not None and e.day < 1:
            raise InvalidScript(f"entry {i}: day index starts at 1")
        if e.steps_per_min < 0:
            raise InvalidScript(f"entry {i}: steps_per_min must be >= 0")
        if e.gt_class not in GT_CLASSES_FOR_TYPE[e.activity_type]:
            raise InvalidScript(
                f"entry {i}: gt_class {e.gt_class.value} inconsistent with "
                f"{e.activity_type}"
            )
        if e.cue_mode is CueMode.CLOCK_PAIR and e.report_policy is not ReportPolicy.VOLUNTARY_AT:
            # a from/until pair spoken mid-activity would name a future end
            raise InvalidScript(f"entry {i}: clock_pair cue requires voluntary_at")
        if e.report_policy is not ReportPolicy.IGNORE and not (
            p.don_min <= e.start_min and e.end_min <= p.doff_min
        ):
            raise InvalidScript(f"entry {i}: reporting entry outside wear window")
        if e.report_at_min is not None and not (
            e.start_min <= e.report_at_min <= e.end_min
        ):
            raise InvalidScript(f"entry {i}: report_at outside the entry")
        if e.secondary_type is not None:
            if e.secondary_type == e.activity_type:
                raise InvalidScript(f"entry {i}: secondary type repeats the primary")
            from .transcripts import supported_secondary_types

            if e.secondary_type not in supported_secondary_types():
                raise InvalidScript(
                    f"entry {i}: {e.secondary_type} cannot follow a while-clause"
                )

    # no overlap among entries active on the same day
    by_day: dict[Optional[int], list[ScriptEntry]] = {}
    days_present = {e.day for e in script.timeline if e.day is not None}
    for e in script.timeline:
        keys = [e.day] if e.day is not None else [None, *days_present]
        for k in keys:
            by_day.setdefault(k, []).append(e)
    for day_key, entries in by_day.items():
        ordered = sorted(entries, key=lambda e: e.start_min)
        for a, b in zip(ordered, ordered[1:]):
            if b.start_min < a.end_min:
                raise InvalidScript(
                    f"timeline overlap on day {day_key or 'daily'}: "
                    f"{a.activity_type} and {b.activity_type}"
                )


def parse_script(text: str) -> BehaviorScript:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InvalidScript(f"unparseable script: {exc}") from exc
    if not isinstance(raw, dict) or "participant" not in raw or "timeline" not in raw:
        raise InvalidScript("script needs participant and timeline sections")

    p = raw["participant"]
    try:
        participant = Participant(
            participant_id=str(p["id"]),
            age=float(p["age"]),
            start_date=date.fromisoformat(str(p["start_date"])),
            don_min=parse_clock_minutes(p["wear"]["don"]),
            doff_min=parse_clock_minutes(p["wear"]["doff"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidScript(f"participant section: {exc}") from exc

    entries = tuple(
        _entry_from_mapping(e, i) for i, e in enumerate(raw["timeline"])
    )
    filler_raw = raw.get("filler", {})
    filler = FillerProfile(
        gt_class=GroundTruthClass(filler_raw.get("gt_class", "sitting")),
        steps_per_min=float(filler_raw.get("steps_per_min", 1.0)),
        hr_mean=float(filler_raw.get("hr_mean", 70.0)),
        respond_to_prompt=bool(filler_raw.get("respond_to_prompt", True)),
    )
    sleep_raw = raw.get("sleep", {})
    sleep = SleepProfile(hr_mean=float(sleep_raw.get("hr_mean", 55.0)))

    script = BehaviorScript(
        participant=participant, timeline=entries, filler=filler, sleep=sleep
    )
    validate_script(script)
    return script


def load_default_script() -> BehaviorScript:
    from importlib import resources

    text = (
        resources.files("mymove.sim")
        .joinpath("data/default_script.yaml")
        .read_text(encoding="utf-8")
    )
    return parse_script(text)
