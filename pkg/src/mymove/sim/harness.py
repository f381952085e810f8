"""Replays a behavior script against the real device stack.

The harness advances a virtual clock one minute at a time. Each worn minute
yields sensor rows; the prompt scheduler ticks on the same clock; prompted
and voluntary reports run through the actual capture state machine at
sub-minute resolution, so every submission in a trace is one a device could
have produced. Alongside the device-visible outputs it keeps a ground-truth
ledger with the scripted answer for every report.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from datetime import datetime, time, timezone
from typing import Optional

import numpy as np

from ..capture import (
    ReportSession,
    SessionEvent,
    SessionState,
    VerbalReport,
    finalize,
    transition,
)
from ..extractor.taxonomy import ReportStructure
from ..ingest.codec import encode_batch
from ..ingest.types import LocomotionSample, MinuteVitals, SensorBatch
from ..scheduler import DeviceScheduler, EventKind, ReportMethod, WearContext
from ..types import GroundTruthClass, format_instant
from .script import BehaviorScript, CueMode, ReportPolicy, ScriptEntry, validate_script
from .sensors import (
    LOCOMOTION_FOR_CLASS,
    synth_heart_rate,
    synth_steps,
    synth_window,
)
from .transcripts import (
    CUE_CLASS,
    TranscriptSpec,
    render_filler,
    render_transcript,
)
from ..analytics.alignment import GroundTruthSegment

MS_PER_MINUTE = 60_000
MS_PER_DAY = 24 * 60 * MS_PER_MINUTE
BATCH_MINUTES = 15
WINDOW_EVERY_MINUTES = 10  # one inertial window per ten worn minutes

# a capture flow must fit the remaining minute; past this cursor offset the
# job rolls over to the next minute instead
_JOB_CUTOFF_MS = 20_000


@dataclass
class SimTrace:
    device_id: str
    participant_age: float
    started_at: int
    days: int
    seed: int
    batches: list[SensorBatch] = field(default_factory=list)
    encoded_batches: list[bytes] = field(default_factory=list)
    reports: list[VerbalReport] = field(default_factory=list)
    segments: list[GroundTruthSegment] = field(default_factory=list)
    wear_intervals: list[tuple[int, int]] = field(default_factory=list)
    scheduler_events: list[dict] = field(default_factory=list)
    ledger: list[dict] = field(default_factory=list)


@dataclass
class _Job:
    method: ReportMethod
    day: int
    entry: Optional[ScriptEntry]  # None = filler response
    deliver_at: Optional[int] = None  # prompt delivery instant


@dataclass
class _BatchAccumulator:
    windows: list = field(default_factory=list)
    vitals: list = field(default_factory=list)
    locomotion: list = field(default_factory=list)

    def empty(self) -> bool:
        return not (self.windows or self.vitals or self.locomotion)


class _SegmentTracker:
    """Folds the per-minute class stream into contiguous segments."""

    def __init__(self):
        self._key = None
        self._start: Optional[int] = None
        self._gt_class: Optional[GroundTruthClass] = None
        self._steps = 0
        self.segments: list[GroundTruthSegment] = []

    def observe(self, key, now: int, gt_class: GroundTruthClass, steps: int):
        if key != self._key:
            self.close(now)
            self._key, self._start, self._gt_class = key, now, gt_class
            self._steps = 0
        self._steps += steps

    def close(self, end: int):
        if self._key is not None:
            self.segments.append(
                GroundTruthSegment(self._start, end, self._gt_class, self._steps)
            )
            self._key = None


def _epoch_midnight(d) -> int:
    return int(datetime.combine(d, time(), tzinfo=timezone.utc).timestamp() * 1000)


def _entry_grid(script: BehaviorScript, days: int) -> list[list[Optional[int]]]:
    """minute -> timeline index, one row per day (day index 0-based here)."""
    grid = [[None] * 1440 for _ in range(days)]
    for idx, e in enumerate(script.timeline):
        for day0 in range(days):
            if e.day is not None and e.day != day0 + 1:
                continue
            for lm in range(e.start_min, e.end_min):
                grid[day0][lm] = idx
    return grid


def _run_capture_flow(
    method: ReportMethod,
    begin_at: int,
    rng: random.Random,
    prompt_shown_at: Optional[int] = None,
) -> ReportSession:
    s = ReportSession()
    if method is ReportMethod.PROMPTED:
        assert prompt_shown_at is not None
        s = transition(s, SessionEvent.PROMPT_SHOWN, prompt_shown_at)
    t = begin_at + rng.randint(2_000, 8_000)
    s = transition(s, SessionEvent.PRESS_RECORD, t)
    t += rng.randint(6_000, 20_000)
    s = transition(s, SessionEvent.PRESS_END, t)
    if rng.random() < 0.7:
        s = transition(s, SessionEvent.PRESS_OK, t + rng.randint(1_000, 3_000))
    else:
        # walk the clock to the idle deadline and let review auto-submit
        s = transition(s, SessionEvent.TICK, t + 8_000)
    assert s.state is SessionState.SUBMITTED
    return s


def run(script: BehaviorScript, days: int = 7, seed: int = 1) -> SimTrace:
    validate_script(script)
    p = script.participant
    t0 = _epoch_midnight(p.start_date)
    device_id = p.participant_id

    rng_np = np.random.default_rng(seed)
    rng_py = random.Random(f"reports:{seed}")
    sched = DeviceScheduler(device_id=device_id, start_anchor=t0, seed=seed)
    grid = _entry_grid(script, days)

    trace = SimTrace(
        device_id=device_id,
        participant_age=p.age,
        started_at=t0,
        days=days,
        seed=seed,
    )
    for day0 in range(days):
        day_base = t0 + day0 * MS_PER_DAY
        trace.wear_intervals.append(
            (day_base + p.don_min * MS_PER_MINUTE, day_base + p.doff_min * MS_PER_MINUTE)
        )

    tracker = _SegmentTracker()
    acc = _BatchAccumulator()
    seq = 0
    report_no = 0
    carried_jobs: list[_Job] = []

    def flush_batch():
        nonlocal seq
        if acc.empty():
            return
        seq += 1
        batch = SensorBatch(
            device_id=device_id,
            sequence=seq,
            windows=list(acc.windows),
            vitals=list(acc.vitals),
            locomotion=list(acc.locomotion),
        )
        trace.batches.append(batch)
        trace.encoded_batches.append(encode_batch(batch))
        acc.windows.clear()
        acc.vitals.clear()
        acc.locomotion.clear()

    def entry_bounds(day: int, e: ScriptEntry) -> tuple[int, int]:
        base = t0 + (day - 1) * MS_PER_DAY
        return base + e.start_min * MS_PER_MINUTE, base + e.end_min * MS_PER_MINUTE

    def run_job(job: _Job, begin_at: int) -> int:
        nonlocal report_no
        session = _run_capture_flow(
            job.method, begin_at, rng_py, prompt_shown_at=job.deliver_at
        )
        submitted = session.submitted_at
        assert submitted is not None

        entry = job.entry
        if entry is None:
            transcript = render_filler(rng_py)
            expected = {
                "structure": ReportStructure.SINGLETON.value,
                "activity_types": ["nothing_waiting"],
                "time_cue": CUE_CLASS[CueMode.NONE].value,
                "effort": None,
                "expected_start": None,
                "expected_end": None,
            }
        else:
            start_abs, end_abs = entry_bounds(job.day, entry)
            minutes = None
            expected_span: tuple[Optional[int], Optional[int]] = (None, None)
            if entry.cue_mode is CueMode.DURATION:
                minutes = entry.duration_min
            elif entry.cue_mode in (CueMode.DURATION_COMPLETED, CueMode.ELAPSED):
                minutes = max(1, round((submitted - start_abs) / MS_PER_MINUTE))
                expected_span = (start_abs, submitted)
            elif entry.cue_mode is CueMode.CLOCK_PAIR:
                expected_span = (start_abs, end_abs)
            spec = TranscriptSpec(
                activity_type=entry.activity_type,
                cue_mode=entry.cue_mode,
                minutes=minutes,
                start_clock=divmod(entry.start_min, 60),
                end_clock=divmod(entry.end_min, 60),
                effort=entry.effort,
                secondary_type=entry.secondary_type,
            )
            transcript = render_transcript(spec, rng_py)
            types = [entry.activity_type]
            structure = ReportStructure.SINGLETON
            if entry.secondary_type:
                types.append(entry.secondary_type)
                structure = ReportStructure.MULTITASKING
            expected = {
                "structure": structure.value,
                "activity_types": types,
                "time_cue": CUE_CLASS[entry.cue_mode].value,
                "effort": entry.effort.value if entry.effort else None,
                "expected_start": expected_span[0],
                "expected_end": expected_span[1],
            }

        report_no += 1
        report_id = f"{device_id}-r{report_no:04d}"
        report = finalize(session, report_id, device_id, transcript)
        trace.reports.append(report)
        sched.report_submitted(submitted, job.method)
        trace.ledger.append(
            {
                "report_id": report_id,
                "device_id": device_id,
                "method": job.method.value,
                "submitted_at": submitted,
                "transcript": transcript,
                **expected,
            }
        )
        return submitted

    total_minutes = days * 1440
    for m in range(total_minutes):
        now = t0 + m * MS_PER_MINUTE
        day0, lm = divmod(m, 1440)
        day = day0 + 1
        worn = p.don_min <= lm < p.doff_min
        idx = grid[day0][lm]
        entry = script.timeline[idx] if idx is not None else None

        if entry is not None:
            gt_class, spm, hr_mean = entry.gt_class, entry.steps_per_min, entry.hr_mean
            seg_key = ("entry", day, idx)
        elif worn:
            f = script.filler
            gt_class, spm, hr_mean = f.gt_class, f.steps_per_min, f.hr_mean
            seg_key = ("filler", day)
        else:
            gt_class, spm, hr_mean = (
                GroundTruthClass.LYING,
                0.0,
                script.sleep.hr_mean,
            )
            seg_key = ("sleep",)

        steps = synth_steps(rng_np, spm) if worn else 0
        tracker.observe(seg_key, now, gt_class, steps)

        loc = LOCOMOTION_FOR_CLASS[gt_class]
        if worn:
            acc.vitals.append(
                MinuteVitals(now, steps, synth_heart_rate(rng_np, hr_mean))
            )
            acc.locomotion.append(LocomotionSample(now, loc))
            if lm % WINDOW_EVERY_MINUTES == 0:
                acc.windows.append(synth_window(rng_np, now, gt_class))
            if len(acc.vitals) >= BATCH_MINUTES:
                flush_batch()
        elif not acc.empty():
            flush_batch()  # watch came off mid-batch

        jobs: list[_Job] = carried_jobs
        carried_jobs = []

        for ev in sched.tick(now, WearContext(now, worn, loc)):
            if ev.kind is not EventKind.DELIVER:
                continue
            if entry is not None and entry.report_policy is ReportPolicy.RESPOND_TO_PROMPT:
                jobs.append(_Job(ReportMethod.PROMPTED, day, entry, deliver_at=ev.at))
            elif entry is None and worn and script.filler.respond_to_prompt:
                jobs.append(_Job(ReportMethod.PROMPTED, day, None, deliver_at=ev.at))
            # otherwise the prompt sits unanswered and lapses on its own

        for idx2, e in enumerate(script.timeline):
            if e.report_policy is not ReportPolicy.VOLUNTARY_AT:
                continue
            if e.day is not None and e.day != day:
                continue
            at_min = e.report_at_min if e.report_at_min is not None else e.end_min
            if at_min == lm:
                jobs.append(_Job(ReportMethod.VOLUNTARY, day, e))

        cursor = now
        for i, job in enumerate(jobs):
            if cursor - now > _JOB_CUTOFF_MS:
                carried_jobs.extend(jobs[i:])
                break
            submitted = run_job(job, cursor)
            cursor = submitted + 2_000

    end_of_run = t0 + total_minutes * MS_PER_MINUTE
    flush_batch()
    tracker.close(end_of_run)
    trace.segments = tracker.segments
    trace.scheduler_events = sched.event_records()
    return trace


def trace_summary_line(trace: SimTrace) -> str:
    prompts = sum(1 for e in trace.scheduler_events if e["kind"] == "deliver")
    return (
        f"{trace.device_id}: {trace.days}d from {format_instant(trace.started_at)}, "
        f"{len(trace.batches)} batches, {len(trace.reports)} reports "
        f"({prompts} prompts delivered), {len(trace.segments)} reference segments"
    )
