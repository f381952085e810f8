"""Sensor payload types for minute-level capture.

Each worn minute yields one inertial window per sensor kind (500 samples at
25 Hz over 20 seconds), a step/heart-rate vitals row, and locomotion samples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..types import Locomotion

SAMPLE_RATE_HZ = 25
WINDOW_SECONDS = 20
SAMPLES_PER_WINDOW = SAMPLE_RATE_HZ * WINDOW_SECONDS  # 500


class SampleKind(str, Enum):
    ACCELEROMETER = "accelerometer"
    ROTATION_VECTOR = "rotation_vector"
    MAGNETOMETER = "magnetometer"
    GRAVITY = "gravity"


# rotation vectors carry a quaternion; the rest are 3-axis
DEFAULT_COMPONENTS: dict[SampleKind, int] = {
    SampleKind.ACCELEROMETER: 3,
    SampleKind.ROTATION_VECTOR: 4,
    SampleKind.MAGNETOMETER: 3,
    SampleKind.GRAVITY: 3,
}

KIND_ORDER = (
    SampleKind.ACCELEROMETER,
    SampleKind.ROTATION_VECTOR,
    SampleKind.MAGNETOMETER,
    SampleKind.GRAVITY,
)


class WindowError(ValueError):
    pass


class ShortWindow(WindowError):
    """A sensor stream sealed with fewer than the required samples."""


class OverfullWindow(WindowError):
    """A sensor stream sealed with more than the required samples."""


@dataclass(eq=False)
class InertialWindow:
    minute_anchor: int
    samples: dict[SampleKind, np.ndarray] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InertialWindow):
            return NotImplemented
        return (
            self.minute_anchor == other.minute_anchor
            and set(self.samples) == set(other.samples)
            and all(np.array_equal(self.samples[k], other.samples[k]) for k in self.samples)
        )


@dataclass(frozen=True)
class MinuteVitals:
    minute_anchor: int
    step_count: int
    heart_rate: Optional[float] = None

    def __post_init__(self):
        if self.step_count < 0:
            raise ValueError("step_count must be >= 0")
        if self.heart_rate is not None and self.heart_rate <= 0:
            raise ValueError("heart_rate must be positive when present")


@dataclass(frozen=True)
class LocomotionSample:
    timestamp: int
    locomotion: Locomotion


@dataclass(eq=False)
class SensorBatch:
    device_id: str
    sequence: int
    windows: list[InertialWindow] = field(default_factory=list)
    vitals: list[MinuteVitals] = field(default_factory=list)
    locomotion: list[LocomotionSample] = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SensorBatch):
            return NotImplemented
        return (
            self.device_id == other.device_id
            and self.sequence == other.sequence
            and self.windows == other.windows
            and self.vitals == other.vitals
            and self.locomotion == other.locomotion
        )


def seal_minute_window(
    minute_anchor: int,
    samples: dict[SampleKind, "np.ndarray | list"],
    components: Optional[dict[SampleKind, int]] = None,
) -> InertialWindow:
    """Validate and freeze one minute's inertial capture.

    Every kind must be present with exactly SAMPLES_PER_WINDOW rows and its
    configured component count.
    """
    comp = dict(DEFAULT_COMPONENTS)
    if components:
        comp.update(components)
    missing = [k.value for k in KIND_ORDER if k not in samples]
    if missing:
        raise ShortWindow(f"missing sensor kinds: {', '.join(missing)}")
    sealed: dict[SampleKind, np.ndarray] = {}
    for kind in KIND_ORDER:
        arr = np.asarray(samples[kind], dtype=np.float32)
        if arr.ndim != 2 or arr.shape[1] != comp[kind]:
            raise WindowError(
                f"{kind.value} expects {comp[kind]} components, got shape {arr.shape}"
            )
        if arr.shape[0] < SAMPLES_PER_WINDOW:
            raise ShortWindow(f"{kind.value}: {arr.shape[0]} of {SAMPLES_PER_WINDOW} samples")
        if arr.shape[0] > SAMPLES_PER_WINDOW:
            raise OverfullWindow(f"{kind.value}: {arr.shape[0]} of {SAMPLES_PER_WINDOW} samples")
        sealed[kind] = arr
    return InertialWindow(minute_anchor=minute_anchor, samples=sealed)
