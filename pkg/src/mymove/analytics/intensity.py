"""Heart-rate and cadence intensity metrics.

Age-predicted maximum heart rate uses 211 - 0.64*age; a mean rate in the
64-76% band of that maximum, or a cadence of 100 steps/min and up, reads
as moderate activity. Above the band is only a vigorous *candidate*: one
criterion is not enough to certify vigorous effort.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .alignment import AnalyticsError


class InvalidAge(AnalyticsError):
    pass


class NoMeasurement(AnalyticsError):
    pass


MODERATE_PCT_LOW = 64.0
MODERATE_PCT_HIGH = 76.0
MODERATE_CADENCE = 100.0


@dataclass(frozen=True)
class IntensityMeasurement:
    pct_hrmax: Optional[float] = None
    cadence_gt: Optional[float] = None
    cadence_watch: Optional[float] = None

    def __post_init__(self):
        for name in ("pct_hrmax", "cadence_gt", "cadence_watch"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.pct_hrmax is not None and self.pct_hrmax > 250:
            raise ValueError("pct_hrmax above sanity bound")


class IntensityBand(str, Enum):
    BELOW_MODERATE = "below_moderate"
    MODERATE = "moderate"
    VIGOROUS_CANDIDATE = "vigorous_candidate"


@dataclass(frozen=True)
class IntensityCall:
    band: IntensityBand
    criterion: Optional[str]  # "pct_hrmax" | "cadence" | None


def hr_max(age: float) -> float:
    if age <= 0:
        raise InvalidAge("age must be positive")
    return 211.0 - 0.64 * age


def pct_hrmax(hr_samples: Sequence[float], age: float) -> Optional[float]:
    """Mean heart rate as a percentage of the age-predicted maximum."""
    ceiling = hr_max(age)
    if not hr_samples:
        return None
    return sum(hr_samples) / len(hr_samples) / ceiling * 100.0


def classify_intensity(m: IntensityMeasurement) -> IntensityCall:
    cadences = [c for c in (m.cadence_gt, m.cadence_watch) if c is not None]
    if m.pct_hrmax is None and not cadences:
        raise NoMeasurement("need pct_hrmax or a cadence")
    if m.pct_hrmax is not None and m.pct_hrmax > MODERATE_PCT_HIGH:
        return IntensityCall(IntensityBand.VIGOROUS_CANDIDATE, "pct_hrmax")
    if m.pct_hrmax is not None and m.pct_hrmax >= MODERATE_PCT_LOW:
        return IntensityCall(IntensityBand.MODERATE, "pct_hrmax")
    if any(c >= MODERATE_CADENCE for c in cadences):
        return IntensityCall(IntensityBand.MODERATE, "cadence")
    return IntensityCall(IntensityBand.BELOW_MODERATE, None)
