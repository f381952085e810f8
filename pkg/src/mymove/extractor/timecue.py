"""Time-cue extraction and timespan resolution.

A report can carry clock endpoints ("from 6:30 until 7:03"), durations
("a 30-minute drive", "half an hour"), completion markers ("just finished"),
and elapsed-so-far phrasings ("I've been ... for the past two hours"). A cue
is complete when it pins down an interval:

  R1  clock pair:                [start_clock, end_clock]
  R2  duration + end-at-now:     [submitted - duration, submitted]
  R3  duration + explicit start: [start_clock, start_clock + duration]

Anything that carries some time information but not enough to resolve is
incomplete; everything else is none. Number words go through a small
quantity grammar before duration parsing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..types import MS_PER_DAY, MS_PER_MINUTE, day_floor


class TimeCueClass(str, Enum):
    NONE = "none"
    INCOMPLETE = "incomplete"
    COMPLETE = "complete"


class ResolutionError(ValueError):
    pass


class FutureInterval(ResolutionError):
    """The resolved end lands more than the grace period after submission."""


class CrossMidnight(ResolutionError):
    """Clock readings cannot be placed on the submission day in order."""


@dataclass(frozen=True)
class TimeCue:
    completeness: TimeCueClass
    start_clock: Optional[tuple[int, int]] = None
    end_clock: Optional[tuple[int, int]] = None
    duration_minutes: Optional[int] = None
    end_anchor: Optional[str] = None  # "explicit" | "at_submission"


_WORD_NUMBERS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
    "fifteen": 15, "twenty": 20, "twenty-five": 25, "thirty": 30,
    "forty": 40, "forty-five": 45, "fifty": 50, "sixty": 60, "ninety": 90,
}
_WORDS = "|".join(sorted(_WORD_NUMBERS, key=len, reverse=True))

# ordered longest-meaning-first; overlaps resolved by span length
_DURATION_PATTERNS: list[tuple[re.Pattern, object]] = [
    (re.compile(r"\b(\d+)\s*(?:-|–|\s)?\s*hours?\s+and\s+a\s+half\b", re.I),
     lambda m: int(m.group(1)) * 60 + 30),
    (re.compile(r"\ban?\s+hour\s+and\s+a\s+half\b", re.I), lambda m: 90),
    (re.compile(rf"\b({_WORDS})\s+(?:-|–)?\s*hours?\b", re.I),
     lambda m: _WORD_NUMBERS[m.group(1).lower()] * 60),
    (re.compile(r"\b(\d+)(?:\.5)?\s*(?:-|–)?\s*(?:hours?|hrs?)\b", re.I),
     lambda m: int(m.group(1)) * 60 + (30 if ".5" in m.group(0) else 0)),
    (re.compile(r"\b(?:half\s+an?\s+hour|an?\s+half[\s-]hour|half[\s-]hour)\b", re.I),
     lambda m: 30),
    (re.compile(r"\ba\s+quarter\s+(?:of\s+an\s+)?hour\b", re.I), lambda m: 15),
    (re.compile(r"\ban?\s+hour\b", re.I), lambda m: 60),
    (re.compile(r"\b(\d+)\s*(?:-|–)?\s*(?:minutes?|mins?|min)\b", re.I),
     lambda m: int(m.group(1))),
    (re.compile(rf"\b({_WORDS})\s+minutes?\b", re.I),
     lambda m: _WORD_NUMBERS[m.group(1).lower()]),
]

_CLOCK = r"(\d{1,2}):(\d{2})"
_PAIR_STRICT = re.compile(
    rf"\b(?:from|between)\s+(?:about\s+|around\s+)?{_CLOCK}\s*"
    rf"(?:until|till|to|and|[-–])\s*(?:about\s+|around\s+)?{_CLOCK}\b",
    re.I,
)
_PAIR_BARE = re.compile(
    rf"\b{_CLOCK}\s*(?:until|till|to|[-–])\s*(?:about\s+|around\s+)?{_CLOCK}\b", re.I
)
_SINGLE_START = re.compile(
    rf"\b(?:from|at|since|starting\s+at|around)\s+(?:about\s+)?{_CLOCK}\b", re.I
)

_COMPLETION = re.compile(
    r"\bjust\s+(?:finished|completed|returned|got\s+back|came\s+back|wrapped\s+up|done)\b"
    r"|(?:^|[.!?]\s+)(?:i\s+|i've\s+|i'm\s+)?(?:just\s+)?(?:finished|completed)\b",
    re.I,
)
_PAST_LAST = re.compile(r"\bthe\s+(?:past|last)\s+", re.I)
_BEEN_FOR = re.compile(r"\bbeen\b[^.!?]{0,80}?\bfor\b", re.I)
_SO_FAR = re.compile(r"^[^.!?]{0,15}?\bso\s+far\b", re.I)


def _scan_durations(text: str) -> list[tuple[int, int, int]]:
    """All duration mentions as (start, end, minutes), overlaps removed
    keeping the longest span."""
    raw: list[tuple[int, int, int]] = []
    for pattern, value in _DURATION_PATTERNS:
        for m in pattern.finditer(text):
            raw.append((m.start(), m.end(), value(m)))
    raw.sort(key=lambda t: (-(t[1] - t[0]), t[0]))
    kept: list[tuple[int, int, int]] = []
    for s, e, v in raw:
        if all(e <= ks or s >= ke for ks, ke, _ in kept):
            kept.append((s, e, v))
    kept.sort()
    return kept


def _valid_clock(h: str, m: str) -> Optional[tuple[int, int]]:
    hour, minute = int(h), int(m)
    if 0 <= hour <= 23 and 0 <= minute <= 59:
        return hour, minute
    return None


def extract_time_cue(text: str) -> TimeCue:
    pair = _PAIR_STRICT.search(text) or _PAIR_BARE.search(text)
    if pair:
        start = _valid_clock(pair.group(1), pair.group(2))
        end = _valid_clock(pair.group(3), pair.group(4))
        if start and end:
            return TimeCue(
                completeness=TimeCueClass.COMPLETE,
                start_clock=start,
                end_clock=end,
                end_anchor="explicit",
            )

    durations = _scan_durations(text)
    duration = durations[0][2] if durations else None

    completion = bool(_COMPLETION.search(text))
    elapsed = False
    for m in _PAST_LAST.finditer(text):
        if any(m.end() <= s <= m.end() + 2 for s, _, _ in durations):
            elapsed = True
    for m in _BEEN_FOR.finditer(text):
        if any(m.end() < s <= m.end() + 25 for s, _, _ in durations):
            elapsed = True
    for _, e, _ in durations:
        if _SO_FAR.match(text[e:]):
            elapsed = True

    single = _SINGLE_START.search(text)
    start_clock = _valid_clock(single.group(1), single.group(2)) if single else None

    if duration is not None and (completion or elapsed):
        return TimeCue(
            completeness=TimeCueClass.COMPLETE,
            duration_minutes=duration,
            end_anchor="at_submission",
        )
    if duration is not None and start_clock is not None:
        return TimeCue(
            completeness=TimeCueClass.COMPLETE,
            start_clock=start_clock,
            duration_minutes=duration,
            end_anchor="explicit",
        )
    if duration is not None or start_clock is not None or completion or elapsed:
        return TimeCue(
            completeness=TimeCueClass.INCOMPLETE,
            start_clock=start_clock,
            duration_minutes=duration,
            end_anchor="at_submission" if (completion or elapsed) else None,
        )
    return TimeCue(completeness=TimeCueClass.NONE)


GRACE_MS = 5 * MS_PER_MINUTE


def _readings(clock: tuple[int, int], day_start: int) -> list[int]:
    """Possible instants for a clock phrase on the submission day. Times up
    to 12 are ambiguous between morning and afternoon readings."""
    hour, minute = clock
    if hour > 12:
        hours = [hour]
    elif hour == 12:
        hours = [0, 12]
    else:
        hours = [hour, hour + 12]
    return [day_start + h * 60 * MS_PER_MINUTE + minute * MS_PER_MINUTE for h in hours]


def resolve_timespan(cue: TimeCue, submitted_at: int) -> Optional[tuple[int, int]]:
    """Resolve a complete cue against the submission instant.

    Ambiguous clock readings take the same-day value closest before
    submission; intervals may poke at most 5 minutes past submission.
    """
    if cue.completeness is not TimeCueClass.COMPLETE:
        return None
    day = day_floor(submitted_at)

    if cue.start_clock and cue.end_clock:  # R1
        ends = [t for t in _readings(cue.end_clock, day) if t <= submitted_at + GRACE_MS]
        if not ends:
            raise FutureInterval("no end reading at or before submission")
        end = max(ends)
        starts = [t for t in _readings(cue.start_clock, day) if t < end]
        if not starts:
            raise CrossMidnight("start would precede midnight")
        start = max(starts)
        return start, end

    if cue.duration_minutes is not None and cue.end_anchor == "at_submission":  # R2
        end = submitted_at
        return end - cue.duration_minutes * MS_PER_MINUTE, end

    if cue.duration_minutes is not None and cue.start_clock is not None:  # R3
        starts = [t for t in _readings(cue.start_clock, day) if t <= submitted_at]
        if not starts:
            raise CrossMidnight("start would precede midnight")
        start = max(starts)
        end = start + cue.duration_minutes * MS_PER_MINUTE
        if end > submitted_at + GRACE_MS:
            raise FutureInterval("interval ends after submission")
        return start, end

    return None


def check_not_future(span: tuple[int, int], submitted_at: int) -> None:
    if span[1] > submitted_at + GRACE_MS:
        raise FutureInterval("interval ends after submission")
    if not 0 < span[1] - span[0] <= MS_PER_DAY:
        raise ResolutionError("interval must be positive and at most a day")
