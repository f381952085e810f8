"""Idempotent batch ingest keyed by (device_id, sequence).

Devices upload store-and-forward, so replays are normal; the first copy wins
and replays are acknowledged without duplicate storage. Missing sequences
between the lowest and highest seen are tracked in a per-device gap ledger.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .types import SensorBatch


@dataclass(frozen=True)
class IngestAck:
    status: str  # "accepted" | "duplicate"
    device_id: str
    sequence: int
    gaps: tuple[int, ...]


@dataclass
class _DeviceLane:
    batches: dict[int, SensorBatch] = field(default_factory=dict)
    gaps: set[int] = field(default_factory=set)
    lo: int = -1
    hi: int = -1


class BatchStore:
    """In-memory batch index. Writes are serialized per store; the lock is
    coarse but uploads are small relative to decode cost."""

    def __init__(self):
        self._lanes: dict[str, _DeviceLane] = {}
        self._lock = threading.Lock()

    def ingest(self, batch: SensorBatch) -> IngestAck:
        with self._lock:
            lane = self._lanes.setdefault(batch.device_id, _DeviceLane())
            seq = batch.sequence
            if seq in lane.batches:
                return IngestAck("duplicate", batch.device_id, seq, tuple(sorted(lane.gaps)))
            if not lane.batches:
                lane.lo = lane.hi = seq
            elif seq > lane.hi:
                lane.gaps.update(range(lane.hi + 1, seq))
                lane.hi = seq
            elif seq < lane.lo:
                lane.gaps.update(range(seq + 1, lane.lo))
                lane.lo = seq
            else:
                lane.gaps.discard(seq)
            lane.batches[seq] = batch
            return IngestAck("accepted", batch.device_id, seq, tuple(sorted(lane.gaps)))

    def gap_ledger(self, device_id: str) -> tuple[int, ...]:
        with self._lock:
            lane = self._lanes.get(device_id)
            return tuple(sorted(lane.gaps)) if lane else ()

    def sequences(self, device_id: str) -> tuple[int, ...]:
        with self._lock:
            lane = self._lanes.get(device_id)
            return tuple(sorted(lane.batches)) if lane else ()

    def batches(self, device_id: str) -> list[SensorBatch]:
        with self._lock:
            lane = self._lanes.get(device_id)
            return [lane.batches[s] for s in sorted(lane.batches)] if lane else []

    def device_ids(self) -> tuple[str, ...]:
        with self._lock:
            return tuple(sorted(self._lanes))


def ingest_batch(store: BatchStore, batch: SensorBatch) -> IngestAck:
    return store.ingest(batch)
