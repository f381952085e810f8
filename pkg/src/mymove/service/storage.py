"""Append-only persistence with in-memory indexes rebuilt on start.

Three JSONL logs (reports, activities, corrections) plus raw .mymv blobs on
disk. Every acked write hits the log before the response goes out; restart
replays the logs, so the store's answer after a crash matches the acks it
gave before it. Corrections never touch the original extraction records;
reads compose base + latest-per-field overlay.
"""
from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import replace
from pathlib import Path
from typing import Optional

from ..capture import VerbalReport
from ..extractor import (
    ACTIVITY_TYPES,
    EffortCategory,
    EffortCue,
    Extractor,
    ExtractedActivity,
    Semantic,
    TimeCueClass,
    effort_score,
)
from ..ingest.types import SensorBatch
from ..scheduler import ReportMethod

MS_PER_MINUTE = 60_000

CORRECTABLE_FIELDS = ("activity_type", "semantic", "time_cue", "effort")

_REPORT_FIELDS = (
    "report_id",
    "device_id",
    "method",
    "submitted_at",
    "audio_duration_s",
    "transcript",
)


class StorageError(ValueError):
    pass


class ConflictError(StorageError):
    """Same key resubmitted with different content."""


class UnknownActivity(KeyError):
    pass


def validate_correction_value(field: str, value) -> None:
    if field == "activity_type":
        if value not in ACTIVITY_TYPES:
            raise StorageError(f"unknown activity type {value!r}")
    elif field == "semantic":
        if value not in {s.value for s in Semantic}:
            raise StorageError(f"unknown semantic family {value!r}")
    elif field == "time_cue":
        if value not in {c.value for c in TimeCueClass}:
            raise StorageError(f"unknown time-cue class {value!r}")
    elif field == "effort":
        if value is not None and value not in {c.value for c in EffortCategory}:
            raise StorageError(f"unknown effort category {value!r}")
    else:
        raise StorageError(
            f"field must be one of {', '.join(CORRECTABLE_FIELDS)}, got {field!r}"
        )


def apply_overlay(act: ExtractedActivity, overlay: dict) -> ExtractedActivity:
    """Rebuild an activity with the latest correction per field applied."""
    for field, value in overlay.items():
        if field == "activity_type":
            act = replace(act, activity_type=value)
        elif field == "semantic":
            act = replace(act, semantic=value)
        elif field == "time_cue":
            cls = TimeCueClass(value)
            timespan = act.timespan if cls is TimeCueClass.COMPLETE else None
            act = replace(
                act,
                time_cue=replace(act.time_cue, completeness=cls),
                timespan=timespan,
            )
        elif field == "effort":
            if value is None:
                act = replace(act, effort=None)
            else:
                cat = EffortCategory(value)
                act = replace(
                    act, effort=EffortCue(cat, effort_score(cat), (0, 0))
                )
    return act


def report_from_payload(payload: dict) -> VerbalReport:
    from ..types import parse_instant

    return VerbalReport(
        report_id=payload["report_id"],
        device_id=payload["device_id"],
        method=ReportMethod(payload["method"]),
        submitted_at=parse_instant(payload["submitted_at"]),
        audio_duration=float(payload["audio_duration_s"]),
        transcript=payload["transcript"],
    )


class Store:
    def __init__(self, data_dir: Path, extractor: Optional[Extractor] = None):
        self.data_dir = Path(data_dir)
        self.extractor = extractor or Extractor()
        self._lock = threading.Lock()

        self._report_payloads: dict[str, dict] = {}
        self._reports: dict[str, VerbalReport] = {}
        self._report_order: list[str] = []
        self._activities: dict[str, ExtractedActivity] = {}
        self._activity_order: list[str] = []
        self._corrections: dict[str, dict] = {}  # activity_id -> field -> value
        self._correction_log: list[dict] = []
        self._batch_digests: dict[tuple[str, int], str] = {}
        self._wear_minutes: dict[str, set[int]] = {}
        self._devices: set[str] = set()

        self.data_dir.mkdir(parents=True, exist_ok=True)
        (self.data_dir / "batches").mkdir(exist_ok=True)
        self._replay()

    # --- paths ---------------------------------------------------------

    @property
    def reports_log(self) -> Path:
        return self.data_dir / "reports.jsonl"

    @property
    def activities_log(self) -> Path:
        return self.data_dir / "activities.jsonl"

    @property
    def corrections_log(self) -> Path:
        return self.data_dir / "corrections.jsonl"

    def _batch_path(self, device_id: str, sequence: int) -> Path:
        d = self.data_dir / "batches" / device_id
        d.mkdir(parents=True, exist_ok=True)
        return d / f"{sequence:05d}.mymv"

    # --- startup replay --------------------------------------------------

    def _replay(self) -> None:
        if self.reports_log.exists():
            for line in self.reports_log.read_text(encoding="utf-8").splitlines():
                payload = json.loads(line)
                self._index_report(payload)
        # activity log is the audit trail; live objects are regenerated so
        # summaries and overlays work on full structures
        if self.corrections_log.exists():
            for line in self.corrections_log.read_text(encoding="utf-8").splitlines():
                self._index_correction(json.loads(line))
        for blob_path in sorted((self.data_dir / "batches").glob("*/*.mymv")):
            device_id = blob_path.parent.name
            sequence = int(blob_path.stem)
            blob = blob_path.read_bytes()
            key = (device_id, sequence)
            self._batch_digests[key] = hashlib.sha256(blob).hexdigest()
            self._devices.add(device_id)
            from ..ingest.codec import decode_batch

            self._index_wear(decode_batch(blob))

    def _index_report(self, payload: dict) -> None:
        report = report_from_payload(payload)
        self._report_payloads[report.report_id] = {
            k: payload[k] for k in _REPORT_FIELDS
        }
        self._reports[report.report_id] = report
        self._report_order.append(report.report_id)
        self._devices.add(report.device_id)
        for act in self.extractor.extract(report):
            self._activities[act.activity_id] = act
            self._activity_order.append(act.activity_id)

    def _index_correction(self, row: dict) -> None:
        self._correction_log.append(row)
        overlay = self._corrections.setdefault(row["activity_id"], {})
        overlay[row["field"]] = row["new_value"]

    def _index_wear(self, batch: SensorBatch) -> None:
        minutes = self._wear_minutes.setdefault(batch.device_id, set())
        minutes.update(v.minute_anchor for v in batch.vitals)

    # --- writes ----------------------------------------------------------

    def _append(self, path: Path, row: dict) -> None:
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(row) + "\n")
            fh.flush()

    def put_report(self, payload: dict) -> tuple[str, list[ExtractedActivity]]:
        """Returns ("created"|"duplicate", activities). ConflictError on a
        same-id resubmission whose content differs."""
        canonical = {k: payload[k] for k in _REPORT_FIELDS}
        with self._lock:
            existing = self._report_payloads.get(payload["report_id"])
            if existing is not None:
                if existing == canonical:
                    acts = self.activities_for_report(payload["report_id"])
                    return "duplicate", acts
                raise ConflictError(
                    f"report {payload['report_id']} already stored with different content"
                )
            report = report_from_payload(canonical)
            acts = self.extractor.extract(report)
            self._append(self.reports_log, canonical)
            for act in acts:
                self._append(self.activities_log, act.to_record())
            self._report_payloads[report.report_id] = canonical
            self._reports[report.report_id] = report
            self._report_order.append(report.report_id)
            self._devices.add(report.device_id)
            for act in acts:
                self._activities[act.activity_id] = act
                self._activity_order.append(act.activity_id)
            return "created", acts

    def put_batch(self, batch: SensorBatch, blob: bytes) -> str:
        key = (batch.device_id, batch.sequence)
        digest = hashlib.sha256(blob).hexdigest()
        with self._lock:
            existing = self._batch_digests.get(key)
            if existing is not None:
                if existing == digest:
                    return "duplicate"
                raise ConflictError(
                    f"batch {key[0]}/{key[1]} already stored with different content"
                )
            self._batch_path(batch.device_id, batch.sequence).write_bytes(blob)
            self._batch_digests[key] = digest
            self._devices.add(batch.device_id)
            self._index_wear(batch)
            return "created"

    def put_correction(self, activity_id: str, row: dict) -> dict:
        with self._lock:
            if activity_id not in self._activities:
                raise UnknownActivity(activity_id)
            stored = {
                "activity_id": activity_id,
                "field": row["field"],
                "old_value": row.get("old_value"),
                "new_value": row["new_value"],
                "author": row["author"],
                "at": row["at"],
            }
            self._append(self.corrections_log, stored)
            self._index_correction(stored)
            return stored

    # --- reads -----------------------------------------------------------

    def has_device(self, device_id: str) -> bool:
        return device_id in self._devices

    def devices(self) -> list[str]:
        return sorted(self._devices)

    def report_payloads(self, device_id: Optional[str] = None) -> list[dict]:
        """Canonical report rows as accepted, transcript included."""
        out = [dict(self._report_payloads[rid]) for rid in self._report_order]
        if device_id is not None:
            out = [p for p in out if p["device_id"] == device_id]
        return out

    def reports(self, device_id: Optional[str] = None) -> list[VerbalReport]:
        out = [self._reports[rid] for rid in self._report_order]
        if device_id is not None:
            out = [r for r in out if r.device_id == device_id]
        return out

    def activities_for_report(self, report_id: str) -> list[ExtractedActivity]:
        return [
            self._activities[aid]
            for aid in self._activity_order
            if self._activities[aid].report_id == report_id
        ]

    def activities(
        self, device_id: Optional[str] = None, with_overlay: bool = True
    ) -> list[ExtractedActivity]:
        out = []
        for aid in self._activity_order:
            act = self._activities[aid]
            if device_id is not None and act.device_id != device_id:
                continue
            if with_overlay and aid in self._corrections:
                act = apply_overlay(act, self._corrections[aid])
            out.append(act)
        return out

    def corrected_fields(self, activity_id: str) -> list[str]:
        return sorted(self._corrections.get(activity_id, {}))

    def wear_intervals(self, device_id: str) -> list[tuple[int, int]]:
        """Fold worn-minute anchors from uploaded vitals into spans."""
        minutes = sorted(self._wear_minutes.get(device_id, ()))
        spans: list[tuple[int, int]] = []
        for anchor in minutes:
            if spans and anchor == spans[-1][1]:
                spans[-1] = (spans[-1][0], anchor + MS_PER_MINUTE)
            else:
                spans.append((anchor, anchor + MS_PER_MINUTE))
        return spans

    def last_activity_anchor(self, device_id: str) -> Optional[int]:
        """Latest instant the device was known active: report or worn minute."""
        candidates = [
            r.submitted_at for r in self._reports.values() if r.device_id == device_id
        ]
        minutes = self._wear_minutes.get(device_id)
        if minutes:
            candidates.append(max(minutes) + MS_PER_MINUTE)
        return max(candidates) if candidates else None
