"""HTTP surface for the study pipeline, versioned under /v1.

Mutations carry a static bearer token; reads are open. Report and batch
uploads are idempotent by client key (report_id, (device, sequence)); a
resubmission with different content is a 409, never an overwrite.
"""
from __future__ import annotations

import time
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request, Response

from ..analytics.summaries import DeviceSummary, summarize
from ..capture import MAX_RECORDING_MS
from ..extractor import Extractor, load_lexicon, parse_lexicon
from ..ingest.codec import CorruptBatch, FormatError, TruncatedBatch, decode_batch
from ..scheduler import PROMPT_LIFETIME_MS, ReportMethod, reserve_next
from ..types import format_instant, parse_instant
from .config import ServiceConfig
from .storage import (
    CORRECTABLE_FIELDS,
    ConflictError,
    Store,
    StorageError,
    UnknownActivity,
    validate_correction_value,
)

_REQUIRED_REPORT_FIELDS = {
    "report_id": str,
    "device_id": str,
    "method": str,
    "submitted_at": str,
    "audio_duration_s": (int, float),
    "transcript": str,
}


def build_extractor(config: ServiceConfig) -> Extractor:
    if config.lexicon_path is None:
        return Extractor(load_lexicon())
    text = Path(config.lexicon_path).read_text(encoding="utf-8")
    return Extractor(parse_lexicon(text.splitlines()))


def _validated_report(body) -> dict:
    if not isinstance(body, dict):
        raise HTTPException(400, "body must be a JSON object")
    for key, types in _REQUIRED_REPORT_FIELDS.items():
        if key not in body:
            raise HTTPException(400, f"missing field {key}")
        if not isinstance(body[key], types) or isinstance(body[key], bool):
            raise HTTPException(400, f"field {key} has the wrong type")
    if body["method"] not in (m.value for m in ReportMethod):
        raise HTTPException(400, f"unknown method {body['method']!r}")
    try:
        parse_instant(body["submitted_at"])
    except ValueError as exc:
        raise HTTPException(400, f"submitted_at: {exc}")
    duration = float(body["audio_duration_s"])
    if not 0 <= duration <= MAX_RECORDING_MS / 1000:
        raise HTTPException(400, "audio_duration_s outside the recording cap")
    return {k: body[k] for k in _REQUIRED_REPORT_FIELDS}


def create_app(config: ServiceConfig, store: Optional[Store] = None) -> FastAPI:
    app = FastAPI(title="mymove study service", version="1")
    app.state.config = config
    app.state.store = store or Store(config.data_dir, build_extractor(config))

    def require_token(authorization: Optional[str] = Header(default=None)) -> None:
        if authorization != f"Bearer {config.token}":
            raise HTTPException(401, "missing or invalid bearer token")

    mutate = [Depends(require_token)]

    @app.post("/v1/reports", dependencies=mutate)
    async def post_report(request: Request, response: Response):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(400, "body is not valid JSON")
        payload = _validated_report(body)
        try:
            outcome, acts = app.state.store.put_report(payload)
        except ConflictError as exc:
            raise HTTPException(409, str(exc))
        response.status_code = 201 if outcome == "created" else 200
        return {
            "status": outcome,
            "report_id": payload["report_id"],
            "activity_ids": [a.activity_id for a in acts],
        }

    @app.post("/v1/batches", dependencies=mutate)
    async def post_batch(request: Request):
        blob = await request.body()
        try:
            batch = decode_batch(blob)
        except (FormatError, TruncatedBatch, CorruptBatch) as exc:
            raise HTTPException(422, f"{type(exc).__name__}: {exc}")
        try:
            outcome = app.state.store.put_batch(batch, blob)
        except ConflictError as exc:
            raise HTTPException(409, str(exc))
        return {
            "status": outcome,
            "device_id": batch.device_id,
            "sequence": batch.sequence,
            "vitals_minutes": len(batch.vitals),
        }

    @app.get("/v1/participants/{device_id}/summary")
    def get_summary(
        device_id: str,
        start: Optional[str] = Query(default=None),
        end: Optional[str] = Query(default=None),
    ):
        store: Store = app.state.store
        if not store.has_device(device_id):
            raise HTTPException(404, f"unknown participant {device_id}")
        lo = parse_instant(start) if start else None
        hi = parse_instant(end) if end else None

        reports = store.reports(device_id)
        if lo is not None:
            reports = [r for r in reports if r.submitted_at >= lo]
        if hi is not None:
            reports = [r for r in reports if r.submitted_at < hi]
        kept = {r.report_id for r in reports}
        acts = [a for a in store.activities(device_id) if a.report_id in kept]
        wear = [
            (a, b)
            for a, b in store.wear_intervals(device_id)
            if (lo is None or b > lo) and (hi is None or a < hi)
        ]
        summary = summarize(reports, acts, {device_id: wear})
        device = summary.per_device.get(device_id, DeviceSummary())
        return device.to_dict()

    @app.get("/v1/participants")
    def get_participants():
        store: Store = app.state.store
        out = []
        for device_id in store.devices():
            anchor = store.last_activity_anchor(device_id)
            out.append(
                {
                    "device_id": device_id,
                    "total_reports": len(store.reports(device_id)),
                    "last_seen": format_instant(anchor) if anchor else None,
                }
            )
        return {"participants": out, "count": len(out)}

    @app.get("/v1/reports")
    def get_reports(
        device_id: Optional[str] = None, method: Optional[str] = None
    ):
        store: Store = app.state.store
        rows = store.report_payloads(device_id)
        if method is not None:
            rows = [r for r in rows if r["method"] == method]
        rows.sort(key=lambda r: (parse_instant(r["submitted_at"]), r["report_id"]))
        return {"reports": rows, "count": len(rows)}

    @app.get("/v1/activities")
    def get_activities(
        device_id: Optional[str] = None,
        structure: Optional[str] = None,
        time_cue: Optional[str] = None,
        activity_type: Optional[str] = None,
        report_id: Optional[str] = None,
    ):
        store: Store = app.state.store
        out = []
        for act in store.activities(device_id):
            record = act.to_record()
            if structure is not None and record["structure"] != structure:
                continue
            if time_cue is not None and record["time_cue"]["completeness"] != time_cue:
                continue
            if activity_type is not None and record["activity_type"] != activity_type:
                continue
            if report_id is not None and record["report_id"] != report_id:
                continue
            corrected = store.corrected_fields(act.activity_id)
            if corrected:
                record["corrected_fields"] = corrected
            out.append(record)
        return {"activities": out, "count": len(out)}

    @app.put("/v1/activities/{activity_id}/correction", dependencies=mutate)
    async def put_correction(activity_id: str, request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(400, "body is not valid JSON")
        if not isinstance(body, dict):
            raise HTTPException(400, "body must be a JSON object")
        field = body.get("field")
        if field not in CORRECTABLE_FIELDS:
            raise HTTPException(
                400, f"field must be one of {', '.join(CORRECTABLE_FIELDS)}"
            )
        if "new_value" not in body:
            raise HTTPException(400, "missing new_value")
        try:
            validate_correction_value(field, body["new_value"])
        except StorageError as exc:
            raise HTTPException(400, str(exc))
        row = {
            "field": field,
            "old_value": body.get("old_value"),
            "new_value": body["new_value"],
            "author": body.get("author", "anonymous"),
            "at": int(time.time() * 1000),
        }
        try:
            stored = app.state.store.put_correction(activity_id, row)
        except UnknownActivity:
            raise HTTPException(404, f"unknown activity {activity_id}")
        return {"status": "applied", **stored}

    @app.get("/v1/schedule/{device_id}")
    def get_schedule(device_id: str):
        """Next prompt reservation, re-anchored at the device's last activity."""
        store: Store = app.state.store
        anchor = store.last_activity_anchor(device_id)
        if anchor is None:
            raise HTTPException(404, f"no traffic from device {device_id}")
        plan = reserve_next(anchor, config.schedule_seed)
        return {
            "device_id": device_id,
            "anchor": format_instant(anchor),
            "window_start": format_instant(plan.window_start),
            "scheduled_at": format_instant(plan.scheduled_at),
            "expires_at": format_instant(plan.scheduled_at + PROMPT_LIFETIME_MS),
            "status": plan.status.value,
        }

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    return app
