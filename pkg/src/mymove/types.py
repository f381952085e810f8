"""Shared vocabulary and instant helpers.

Instants are integer milliseconds since the Unix epoch, UTC. Everything that
crosses a module boundary uses this representation; ISO-8601 strings appear
only at file and wire edges.
"""
from __future__ import annotations

from datetime import datetime, timezone
from enum import Enum

MS_PER_SECOND = 1_000
MS_PER_MINUTE = 60_000
MS_PER_HOUR = 3_600_000
MS_PER_DAY = 86_400_000


class Locomotion(str, Enum):
    """Coarse locomotion states reported by the device activity API."""

    STILL = "still"
    WALKING = "walking"
    RUNNING = "running"
    IN_VEHICLE = "in_vehicle"
    ON_BICYCLE = "on_bicycle"
    UNKNOWN = "unknown"


class GroundTruthClass(str, Enum):
    """Reference-monitor posture/movement classes."""

    SITTING = "sitting"
    LYING = "lying"
    STANDING = "standing"
    STEPPING = "stepping"
    IN_VEHICLE = "in_vehicle"
    BIKING = "biking"


def parse_instant(text: str) -> int:
    """Parse an ISO-8601 timestamp into epoch milliseconds (UTC).

    Accepts a trailing 'Z' and naive timestamps (treated as UTC).
    """
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return round(dt.timestamp() * 1000)


def format_instant(at: int) -> str:
    """Render epoch milliseconds as an ISO-8601 UTC string."""
    dt = datetime.fromtimestamp(at / 1000, tz=timezone.utc)
    if at % 1000:
        return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{at % 1000:03d}Z"
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def hour_floor(at: int) -> int:
    return at - at % MS_PER_HOUR

def minute_floor(at: int) -> int:
    return at - at % MS_PER_MINUTE

def day_floor(at: int) -> int:
    return at - at % MS_PER_DAY


def local_clock(at: int) -> tuple[int, int]:
    """(hour, minute) of the clock reading for an instant.

    The deployment runs on device-local time; the platform pins that to UTC,
    so clock arithmetic here is plain modular math.
    """
    minutes = (at % MS_PER_DAY) // MS_PER_MINUTE
    return int(minutes // 60), int(minutes % 60)
