"""Synthetic watch sensor streams, one minute at a time.

Waveforms are class-tagged caricatures, not biomechanics: stepping gets a
strong periodic accelerometer trace, sedentary classes get low-amplitude
noise, vehicle minutes get mid-band vibration. Enough texture that batch
sizes and figure renderings look plausible.
"""
from __future__ import annotations

import numpy as np

from ..ingest.types import (
    SAMPLE_RATE_HZ,
    SAMPLES_PER_WINDOW,
    InertialWindow,
    SampleKind,
    seal_minute_window,
)
from ..types import GroundTruthClass, Locomotion

GRAVITY = 9.81

# (acceleration amplitude m/s^2, dominant frequency Hz)
_MOTION_PROFILE: dict[GroundTruthClass, tuple[float, float]] = {
    GroundTruthClass.STEPPING: (2.6, 1.8),
    GroundTruthClass.BIKING: (1.1, 1.3),
    GroundTruthClass.IN_VEHICLE: (0.6, 4.0),
    GroundTruthClass.STANDING: (0.25, 0.9),
    GroundTruthClass.SITTING: (0.12, 0.5),
    GroundTruthClass.LYING: (0.08, 0.3),
}

LOCOMOTION_FOR_CLASS: dict[GroundTruthClass, Locomotion] = {
    GroundTruthClass.STEPPING: Locomotion.WALKING,
    GroundTruthClass.BIKING: Locomotion.ON_BICYCLE,
    GroundTruthClass.IN_VEHICLE: Locomotion.IN_VEHICLE,
    GroundTruthClass.SITTING: Locomotion.STILL,
    GroundTruthClass.LYING: Locomotion.STILL,
    GroundTruthClass.STANDING: Locomotion.STILL,
}


def synth_window(
    rng: np.random.Generator, minute_anchor: int, gt_class: GroundTruthClass
) -> InertialWindow:
    amp, freq = _MOTION_PROFILE[gt_class]
    n = SAMPLES_PER_WINDOW
    t = np.arange(n) / SAMPLE_RATE_HZ
    carrier = np.sin(2 * np.pi * freq * t)

    accel = np.empty((n, 3))
    accel[:, 0] = amp * 0.4 * carrier + rng.normal(0, 0.05, n)
    accel[:, 1] = amp * 0.3 * np.cos(2 * np.pi * freq * t) + rng.normal(0, 0.05, n)
    accel[:, 2] = GRAVITY + amp * carrier + rng.normal(0, 0.08, n)

    # a near-identity quaternion with small wobble, renormalized per row
    quat = np.column_stack(
        [
            np.ones(n),
            0.02 * amp * carrier + rng.normal(0, 0.005, n),
            rng.normal(0, 0.005, n),
            rng.normal(0, 0.005, n),
        ]
    )
    quat /= np.linalg.norm(quat, axis=1, keepdims=True)

    mag = np.array([22.0, 5.0, -40.0]) + rng.normal(0, 1.5, (n, 3))
    grav = np.array([0.0, 0.0, GRAVITY]) + 0.05 * amp * np.column_stack(
        [carrier, carrier, np.zeros(n)]
    )

    return seal_minute_window(
        minute_anchor,
        {
            SampleKind.ACCELEROMETER: accel,
            SampleKind.ROTATION_VECTOR: quat,
            SampleKind.MAGNETOMETER: mag,
            SampleKind.GRAVITY: grav,
        },
    )


def synth_heart_rate(rng: np.random.Generator, mean: float) -> float:
    # quantize to wire precision so a decoded batch reproduces the value
    raw = max(40.0, rng.normal(mean, 2.0))
    return float(np.float32(raw))


def synth_steps(rng: np.random.Generator, per_minute: float) -> int:
    if per_minute <= 0:
        return 0
    return int(rng.poisson(per_minute))
