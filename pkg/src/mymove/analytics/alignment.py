"""Interval-vs-ground-truth alignment and step-rate attribution.

Self-reported intervals rarely line up with posture segments, so overlap
is expressed as fractions of the report interval per ground-truth class,
with the remainder reported as uncovered. Steps attribute proportionally:
a bin half-covered by the interval contributes half its steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..ingest.types import MinuteVitals
from ..types import MS_PER_MINUTE, GroundTruthClass

UNCOVERED = "uncovered"


class AnalyticsError(ValueError):
    pass


class DegenerateInterval(AnalyticsError):
    pass


@dataclass(frozen=True)
class GroundTruthSegment:
    start: int
    end: int
    gt_class: GroundTruthClass
    steps: int = 0

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError("segment start must precede end")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")


@dataclass(frozen=True)
class StepBin:
    """A step count over a concrete span (a watch minute bin, usually)."""

    start: int
    end: int
    steps: int


def check_sorted(segments: Sequence[GroundTruthSegment]) -> None:
    for prev, cur in zip(segments, segments[1:]):
        if cur.start < prev.end:
            raise ValueError("segments must be sorted and non-overlapping")


def align(
    interval: tuple[int, int], segments: Sequence[GroundTruthSegment]
) -> Mapping[str, float]:
    """Fraction of the interval spent in each ground-truth class.

    Fractions (including "uncovered") sum to 1 within 1e-9.
    """
    start, end = interval
    if end <= start:
        raise DegenerateInterval("interval must have positive length")
    length = end - start
    fractions: dict[str, float] = {}
    covered = 0
    for seg in segments:
        lo = max(start, seg.start)
        hi = min(end, seg.end)
        if hi <= lo:
            continue
        key = seg.gt_class.value
        fractions[key] = fractions.get(key, 0.0) + (hi - lo) / length
        covered += hi - lo
    if covered < length:
        fractions[UNCOVERED] = (length - covered) / length
    return fractions


def bins_from_vitals(vitals: Iterable[MinuteVitals]) -> list[StepBin]:
    return [
        StepBin(v.minute_anchor, v.minute_anchor + MS_PER_MINUTE, v.step_count)
        for v in vitals
    ]


def attributed_steps(
    interval: tuple[int, int], sources: Iterable[StepBin | GroundTruthSegment]
) -> float:
    start, end = interval
    if end <= start:
        raise DegenerateInterval("interval must have positive length")
    total = 0.0
    for src in sources:
        lo = max(start, src.start)
        hi = min(end, src.end)
        if hi <= lo:
            continue
        total += src.steps * (hi - lo) / (src.end - src.start)
    return total


def cadence(
    sources: Iterable[StepBin | GroundTruthSegment], interval: tuple[int, int]
) -> float:
    """Steps per minute over the interval, proportionally attributed."""
    steps = attributed_steps(interval, sources)
    minutes = (interval[1] - interval[0]) / MS_PER_MINUTE
    return steps / minutes
