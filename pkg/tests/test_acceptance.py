"""Acceptance gate: seven end-to-end criteria, one verdict line each.

Each test prints exactly one `ACCEPTANCE <name>: PASS` line when it
succeeds (written past pytest's capture so verdicts always surface);
a failed criterion shows up as the test failure itself. Tolerances are
pinned as constants next to the criterion they guard.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import replace

import numpy as np
import pytest
from fastapi.testclient import TestClient

from mymove.analytics import (
    GroundTruthSegment,
    IntensityMeasurement,
    align,
    backward_eliminate,
    classify_intensity,
    normalize_text,
    ols_fit,
    pct_hrmax,
    wer,
)
from mymove.analytics.alignment import UNCOVERED
from mymove.capture import (
    MAX_RECORDING_MS,
    REVIEW_IDLE_MS,
    ReportSession,
    SessionEvent,
    SessionState,
    finalize,
    transition,
)
from mymove.extractor import (
    Extractor,
    ReportStructure,
    TimeCueClass,
    activity_from_record,
)
from mymove.extractor.fixtures import load_fixture_corpus
from mymove.capture import VerbalReport
from mymove.ingest import (
    CodecError,
    decode_batch,
    encode_batch,
)
from mymove.service.storage import Store
from mymove.scheduler import (
    PROMPT_LIFETIME_MS,
    DeviceScheduler,
    EventKind,
    ReportMethod,
    WearContext,
)
from mymove.service import ServiceConfig, create_app
from mymove.sim import (
    TIMESPAN_TOLERANCE_MS,
    ledger_mismatches,
    load_default_script,
    report_payload,
    run,
)
from mymove.types import (
    GroundTruthClass,
    Locomotion,
    MS_PER_HOUR,
    MS_PER_MINUTE,
    parse_instant,
)

from synth import make_batch

MIN_GAP_MS = 30 * MS_PER_MINUTE


@pytest.fixture
def verdict(capsys):
    """One pass line per criterion, emitted past pytest's capture."""

    def emit(name: str) -> None:
        with capsys.disabled():
            print(f"ACCEPTANCE {name}: PASS", flush=True)

    return emit


# ------------------------------------------------------- 1. scheduler protocol


def _drive_scheduler(seed: int) -> list[str]:
    """Seven days of minute ticks, 12 worn hours a day, one daily drive.

    Returns protocol violations (empty = clean run).
    """
    rng = random.Random(seed)
    t0 = parse_instant("2021-06-07T00:00:00Z")
    don, doff = 8 * 60, 20 * 60  # 12 h worn
    drive_start = rng.randrange(don + 60, doff - 120)
    sched = DeviceScheduler(f"dev-{seed}", t0 + don * MS_PER_MINUTE, seed)

    violations: list[str] = []
    deliveries: list[tuple[int, bool, bool]] = []  # (at, worn, in_vehicle)
    respond_at: int | None = None

    for day in range(7):
        for minute in range(don, doff + 1):
            now = t0 + (day * 1440 + minute) * MS_PER_MINUTE
            worn = minute < doff
            in_vehicle = drive_start <= minute < drive_start + 30
            ctx = WearContext(
                timestamp=now,
                worn=worn,
                locomotion=Locomotion.IN_VEHICLE if in_vehicle else Locomotion.STILL,
            )
            for ev in sched.tick(now, ctx):
                if ev.kind is EventKind.DELIVER:
                    deliveries.append((ev.at, worn, in_vehicle))
                    if rng.random() < 0.6:
                        respond_at = now + rng.randrange(1, 14) * MS_PER_MINUTE
                elif ev.kind is EventKind.EXPIRE:
                    if ev.at != ev.plan.delivered_at + PROMPT_LIFETIME_MS:
                        violations.append(f"expiry not 15 min post-delivery at {ev.at}")
                    respond_at = None
            if respond_at is not None and now >= respond_at:
                sched.report_submitted(now, ReportMethod.PROMPTED)
                respond_at = None
            elif worn and respond_at is None and rng.random() < 0.002:
                before = sched.pending.scheduled_at
                sched.report_submitted(now, ReportMethod.VOLUNTARY)
                after = sched.pending
                if after.earliest_allowed != now + MIN_GAP_MS:
                    violations.append(f"voluntary at {now} did not re-anchor")
                if after.scheduled_at < now + MIN_GAP_MS:
                    violations.append(f"voluntary at {now} left an early reservation")
                del before

    for (a, _, _), (b, _, _) in zip(deliveries, deliveries[1:]):
        if b - a < MIN_GAP_MS:
            violations.append(f"gap {b - a} ms between deliveries at {a}, {b}")
    blocks = Counter(at // MS_PER_HOUR for at, _, _ in deliveries)
    for block, count in blocks.items():
        if count > 1:
            violations.append(f"{count} deliveries in block {block}")
    for at, worn, in_vehicle in deliveries:
        if not worn:
            violations.append(f"delivery at {at} while off-body")
        if in_vehicle:
            violations.append(f"delivery at {at} while in vehicle")
    if not deliveries:
        violations.append("no deliveries at all")
    return violations


def test_scheduler_protocol_suite(verdict):
    started = time.monotonic()
    problems = []
    for seed in range(100):
        problems.extend(_drive_scheduler(seed))
    elapsed = time.monotonic() - started
    assert problems == [], problems[:10]
    assert elapsed < 10.0, f"100 simulations took {elapsed:.1f} s"
    verdict("scheduler-protocol")


# --------------------------------------------------------- 2. fixture corpus


def test_fixture_corpus_codes_exactly(verdict):
    extractor = Extractor()
    submitted = parse_instant("2021-06-07T14:00:00Z")
    rows = load_fixture_corpus()
    assert len(rows) >= 45
    mismatches = []
    for row in rows:
        acts = extractor.extract(
            VerbalReport(
                report_id=row.fixture_id,
                device_id="watch-01",
                method="prompted",
                submitted_at=submitted,
                audio_duration=10.0,
                transcript=row.text,
            )
        )
        got = (
            acts[0].structure if acts else ReportStructure.UNCODED,
            tuple(a.activity_type for a in acts),
            acts[0].time_cue.completeness if acts else TimeCueClass.NONE,
            acts[0].effort.category if acts and acts[0].effort else None,
        )
        want = (row.structure, row.activity_types, row.time_cue, row.effort)
        if got != want:
            mismatches.append(f"{row.fixture_id}: want {want}, got {got}")
    agreement = 1.0 - len(mismatches) / len(rows)
    assert agreement == 1.0, "\n".join(mismatches)
    verdict("fixture-corpus")


# ------------------------------------------------------ 3. end-to-end round trip


def test_end_to_end_round_trip(tmp_path, verdict):
    started = time.monotonic()
    trace = run(load_default_script(), days=2, seed=1)

    config = ServiceConfig(data_dir=tmp_path / "svc", token="acc-token")
    auth = {"Authorization": "Bearer acc-token"}
    with TestClient(create_app(config)) as client:
        for blob in trace.encoded_batches:
            r = client.post("/v1/batches", content=blob, headers=auth)
            assert r.status_code == 200, r.text
        for report in trace.reports:
            r = client.post("/v1/reports", json=report_payload(report), headers=auth)
            assert r.status_code == 201, r.text

        r = client.get("/v1/activities", params={"device_id": trace.device_id})
        assert r.status_code == 200
        by_report: dict[str, list] = {}
        for rec in r.json()["activities"]:
            by_report.setdefault(rec["report_id"], []).append(
                activity_from_record(rec)
            )

        problems = []
        for entry in trace.ledger:
            acts = by_report.get(entry["report_id"], [])
            problems.extend(
                f"{entry['report_id']}: {p}"
                for p in ledger_mismatches(entry, acts, TIMESPAN_TOLERANCE_MS)
            )
        assert problems == [], problems[:10]
        assert TIMESPAN_TOLERANCE_MS == 60_000

        summary = client.get(f"/v1/participants/{trace.device_id}/summary").json()
        assert summary["total_reports"] == len(trace.ledger)
        assert summary["methods"] == dict(
            Counter(e["method"] for e in trace.ledger)
        )

    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"round trip took {elapsed:.1f} s"
    verdict("end-to-end-round-trip")


# ------------------------------------------------------------ 4. codec/ingest


def test_codec_round_trip_and_replay(tmp_path, verdict):
    rng = random.Random(202)
    batches = []
    for seed in range(1000):
        batches.append(
            make_batch(seed, n_windows=seed % 4, device_id=f"w{seed % 7:02d}",
                       sequence=seed + 1)
        )
    mismatches = 0
    blobs = []
    for batch in batches:
        blob = encode_batch(batch)
        blobs.append(blob)
        if decode_batch(blob) != batch:
            mismatches += 1
    assert mismatches == 0

    # any single flipped bit must be rejected, whatever byte it lands in
    for blob in blobs[:250]:
        corrupt = bytearray(blob)
        bit = rng.randrange(len(corrupt) * 8)
        corrupt[bit // 8] ^= 1 << (bit % 8)
        with pytest.raises(CodecError):
            decode_batch(bytes(corrupt))

    store = Store(tmp_path / "ingest")
    for batch, blob in zip(batches, blobs):
        outcomes = [store.put_batch(batch, blob) for _ in range(3)]
        assert outcomes == ["created", "duplicate", "duplicate"]
    stored = list((tmp_path / "ingest").rglob("*.mymv"))
    assert len(stored) == len(blobs)
    verdict("codec-ingest")


# --------------------------------------------------------------- 5. WER oracle


def _wer_oracle(ref_tokens: list[str], hyp_tokens: list[str]) -> float:
    n, m = len(ref_tokens), len(hyp_tokens)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if ref_tokens[i - 1] == hyp_tokens[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[n][m] / n


def test_wer_matches_brute_force_oracle(verdict):
    rng = random.Random(55)
    vocab = ["walk", "tv", "lunch", "call", "nap", "ann", "and", "a", "the"]
    for _ in range(1000):
        ref = [rng.choice(vocab) for _ in range(rng.randrange(1, 14))]
        hyp = [rng.choice(vocab) for _ in range(rng.randrange(0, 14))]
        got = wer(" ".join(ref), " ".join(hyp))
        want = _wer_oracle(normalize_text(" ".join(ref)), normalize_text(" ".join(hyp)))
        assert got == pytest.approx(want, abs=1e-12), (ref, hyp)

    for _ in range(100):
        text = " ".join(rng.choice(vocab) for _ in range(rng.randrange(1, 20)))
        assert wer(text, text) == 0.0

    ref = "eating lunch and about to get on a zoom call"
    hyp = "eating lunch Ann about to get on a zoom call"
    assert len(normalize_text(ref)) == 10
    assert wer(ref, hyp) == pytest.approx(1 / 10)
    verdict("wer-oracle")


# ------------------------------------------------------- 6. analytics numerics


def _align_oracle(interval, segments) -> dict[str, float]:
    start, end = interval
    counts: Counter = Counter()
    for s in range(start, end, 1000):
        label = UNCOVERED
        for seg in segments:
            if seg.start <= s < seg.end:
                label = seg.gt_class.value
                break
        counts[label] += 1
    total = (end - start) // 1000
    return {k: v / total for k, v in counts.items()}


def test_analytics_numerics(verdict):
    rng = random.Random(77)
    classes = list(GroundTruthClass)
    t0 = parse_instant("2021-06-07T08:00:00Z")

    # alignment vs a per-second sweep, on second-aligned random segment sets
    for _ in range(25):
        cursor = t0
        segments = []
        for _ in range(rng.randrange(2, 8)):
            cursor += rng.randrange(0, 4) * 60_000  # occasional gap
            length = rng.randrange(60, 900) * 1000
            segments.append(
                GroundTruthSegment(cursor, cursor + length, rng.choice(classes))
            )
            cursor += length
        lo = t0 - rng.randrange(0, 300) * 1000
        hi = cursor + rng.randrange(1, 300) * 1000
        start = rng.randrange(lo // 1000, hi // 1000 - 60) * 1000
        end = start + rng.randrange(60, 1800) * 1000
        got = align((start, end), segments)
        want = _align_oracle((start, end), segments)
        keys = set(got) | set(want)
        for key in keys:
            assert abs(got.get(key, 0.0) - want.get(key, 0.0)) < 1e-9, key

    # heart-rate ceiling: age 70 at mean 83.1 bpm sits at half the maximum
    pct = pct_hrmax([83.1], 70)
    assert pct == pytest.approx(50.00, abs=0.01)

    # band boundaries: 64 / 76 %HRmax and the 100 steps/min cadence gate
    call = classify_intensity(IntensityMeasurement(pct_hrmax=63.999))
    assert call.band.value == "below_moderate"
    call = classify_intensity(IntensityMeasurement(pct_hrmax=64.0))
    assert (call.band.value, call.criterion) == ("moderate", "pct_hrmax")
    call = classify_intensity(IntensityMeasurement(pct_hrmax=76.0))
    assert call.band.value == "moderate"
    call = classify_intensity(IntensityMeasurement(pct_hrmax=76.001))
    assert call.band.value == "vigorous_candidate"
    call = classify_intensity(IntensityMeasurement(cadence_watch=99.999))
    assert call.band.value == "below_moderate"
    call = classify_intensity(IntensityMeasurement(cadence_watch=100.0))
    assert (call.band.value, call.criterion) == ("moderate", "cadence")

    # OLS against the normal-equation oracle, planted betas within 3 SE
    gen = np.random.default_rng(4242)
    n = 500
    X = np.column_stack(
        [np.ones(n), gen.normal(size=n), gen.normal(size=n), gen.normal(size=n)]
    )
    planted = np.array([1.5, -2.0, 0.75, 3.25])
    y = X @ planted + gen.normal(scale=0.8, size=n)
    fit = ols_fit(X, y)
    oracle = np.linalg.solve(X.T @ X, X.T @ y)
    for i, name in enumerate(fit.names):
        assert abs(fit.coefficients[name] - oracle[i]) < 1e-8
        assert abs(fit.coefficients[name] - planted[i]) <= 3 * fit.standard_errors[name]

    # backward elimination drops every planted-noise column in >= 95/100 runs
    clean = 0
    for seed in range(100):
        gen = np.random.default_rng(seed)
        X = np.column_stack([np.ones(200)] + [gen.normal(size=200) for _ in range(5)])
        y = 2.0 + 1.2 * X[:, 1] - 0.9 * X[:, 2] + gen.normal(scale=1.0, size=200)
        names = ["intercept", "x1", "x2", "noise1", "noise2", "noise3"]
        out = backward_eliminate(X, y, alpha_keep=0.01, names=names)
        kept = set(out.result.names)
        if not kept & {"noise1", "noise2", "noise3"}:
            clean += 1
    assert clean >= 95, f"noise predictors survived in {100 - clean} trials"
    verdict("analytics-numerics")


# -------------------------------------------------------- 7. capture state machine


def _session_in(state: SessionState) -> ReportSession:
    s = ReportSession()
    t = 1_000_000
    if state is SessionState.IDLE:
        return s
    s = transition(s, SessionEvent.PROMPT_SHOWN, t)
    if state is SessionState.PROMPTED:
        return s
    s = transition(s, SessionEvent.PRESS_RECORD, t + 1000)
    if state is SessionState.RECORDING:
        return s
    s = transition(s, SessionEvent.PRESS_END, t + 9000)
    if state is SessionState.REVIEWING:
        return s
    if state is SessionState.SUBMITTED:
        return transition(s, SessionEvent.PRESS_OK, t + 10_000)
    return transition(s, SessionEvent.PRESS_CANCEL, t + 10_000)


# target state for every (state, event); None marks a rejected no-op
TRANSITIONS = {
    SessionState.IDLE: {
        SessionEvent.PROMPT_SHOWN: SessionState.PROMPTED,
        SessionEvent.PRESS_RECORD: SessionState.RECORDING,
        SessionEvent.TICK: SessionState.IDLE,
    },
    SessionState.PROMPTED: {
        SessionEvent.PROMPT_DISMISSED: SessionState.IDLE,
        SessionEvent.PRESS_RECORD: SessionState.RECORDING,
        SessionEvent.TICK: SessionState.PROMPTED,
    },
    SessionState.RECORDING: {
        SessionEvent.PRESS_END: SessionState.REVIEWING,
        SessionEvent.PRESS_CANCEL: SessionState.DISCARDED,
        SessionEvent.TICK: SessionState.RECORDING,
    },
    SessionState.REVIEWING: {
        SessionEvent.PRESS_OK: SessionState.SUBMITTED,
        SessionEvent.PRESS_CANCEL: SessionState.DISCARDED,
        SessionEvent.PRESS_END: SessionState.REVIEWING,
        SessionEvent.PRESS_RECORD: SessionState.REVIEWING,
        SessionEvent.TICK: SessionState.REVIEWING,
    },
    SessionState.SUBMITTED: {},
    SessionState.DISCARDED: {},
}


def test_capture_state_machine(verdict):
    # exhaustive (state, event) sweep against the table; rejects stay put
    for state in SessionState:
        for event in SessionEvent:
            session = _session_in(state)
            now = (session.last_interaction or session.session_start or 1_000_000) + 500
            after = transition(session, event, now)
            expected = TRANSITIONS[state].get(event, state)
            assert after.state is expected, (state, event, after.state)

    # the recording cap: a tick at 120 s discards; nothing longer submits
    s = transition(ReportSession(), SessionEvent.PRESS_RECORD, 0)
    s = transition(s, SessionEvent.TICK, MAX_RECORDING_MS - 1)
    assert s.state is SessionState.RECORDING
    s = transition(s, SessionEvent.TICK, MAX_RECORDING_MS)
    assert s.state is SessionState.DISCARDED

    durations = []
    rng = random.Random(9)
    for _ in range(200):
        s = transition(ReportSession(), SessionEvent.PRESS_RECORD, 0)
        pressed = rng.randrange(1000, 200_000)
        t = 0
        while s.state is SessionState.RECORDING:
            t += 1000
            if t >= pressed:
                s = transition(s, SessionEvent.PRESS_END, pressed)
            else:
                s = transition(s, SessionEvent.TICK, t)
        if s.state is SessionState.REVIEWING:
            s = transition(s, SessionEvent.PRESS_OK, pressed + 2000)
            report = finalize(s, "r-1", "w-1", "ok")
            durations.append(report.audio_duration)
    assert durations and max(durations) <= MAX_RECORDING_MS / 1000

    # auto-submit stamps last_interaction + 8 s exactly, even on a late tick
    s = transition(ReportSession(), SessionEvent.PRESS_RECORD, 0)
    s = transition(s, SessionEvent.PRESS_END, 5000)
    s = transition(s, SessionEvent.TICK, 5000 + REVIEW_IDLE_MS - 1)
    assert s.state is SessionState.REVIEWING
    s = transition(s, SessionEvent.TICK, 5000 + REVIEW_IDLE_MS + 777)
    assert s.state is SessionState.SUBMITTED
    assert s.submitted_at == 5000 + REVIEW_IDLE_MS
    verdict("capture-state-machine")
