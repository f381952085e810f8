"""Verbal-report capture session on the watch.

A session walks idle/prompted -> recording -> reviewing -> submitted or
discarded. Recording is capped at 120 seconds; hitting the cap discards the
take. On the review screen the report auto-submits after 8 seconds without
interaction, and any button press that is not OK or Cancel (replaying the
clip, say) resets that timer. Events that make no sense for the current state
are rejected without changing it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from .scheduler import ReportMethod
from .types import MS_PER_SECOND

log = logging.getLogger(__name__)

MAX_RECORDING_MS = 120 * MS_PER_SECOND
REVIEW_IDLE_MS = 8 * MS_PER_SECOND


class SessionState(str, Enum):
    IDLE = "idle"
    PROMPTED = "prompted"
    RECORDING = "recording"
    REVIEWING = "reviewing"
    SUBMITTED = "submitted"
    DISCARDED = "discarded"


class SessionEvent(str, Enum):
    PRESS_RECORD = "press_record"
    PRESS_END = "press_end"
    PRESS_CANCEL = "press_cancel"
    PRESS_OK = "press_ok"
    PROMPT_SHOWN = "prompt_shown"
    PROMPT_DISMISSED = "prompt_dismissed"
    TICK = "tick"


@dataclass(frozen=True)
class ReportSession:
    state: SessionState = SessionState.IDLE
    method: Optional[ReportMethod] = None
    session_start: Optional[int] = None
    recording_start: Optional[int] = None
    recording_end: Optional[int] = None
    last_interaction: Optional[int] = None
    submitted_at: Optional[int] = None

    @property
    def audio_duration(self) -> Optional[float]:
        """Seconds of recorded audio, once recording has ended."""
        if self.recording_start is None or self.recording_end is None:
            return None
        return (self.recording_end - self.recording_start) / 1000


@dataclass(frozen=True)
class VerbalReport:
    report_id: str
    device_id: str
    method: ReportMethod
    submitted_at: int
    audio_duration: float
    transcript: str = ""


_TERMINAL = (SessionState.SUBMITTED, SessionState.DISCARDED)


def transition(session: ReportSession, event: SessionEvent, now: int) -> ReportSession:
    """Apply one event. Illegal events return the session unchanged."""
    s, e = session.state, event

    if s in _TERMINAL:
        return _reject(session, event)

    if e is SessionEvent.PROMPT_SHOWN:
        if s is SessionState.IDLE:
            return replace(session, state=SessionState.PROMPTED, session_start=now)
        return _reject(session, event)

    if e is SessionEvent.PROMPT_DISMISSED:
        if s is SessionState.PROMPTED:
            return replace(session, state=SessionState.IDLE)
        return _reject(session, event)

    if e is SessionEvent.PRESS_RECORD:
        if s in (SessionState.IDLE, SessionState.PROMPTED):
            method = ReportMethod.PROMPTED if s is SessionState.PROMPTED else ReportMethod.VOLUNTARY
            return replace(
                session,
                state=SessionState.RECORDING,
                method=method,
                session_start=session.session_start if session.session_start is not None else now,
                recording_start=now,
            )
        if s is SessionState.REVIEWING:  # replay press, keeps the screen alive
            return replace(session, last_interaction=now)
        return _reject(session, event)

    if e is SessionEvent.PRESS_END:
        if s is SessionState.RECORDING:
            return replace(
                session,
                state=SessionState.REVIEWING,
                recording_end=now,
                last_interaction=now,
            )
        if s is SessionState.REVIEWING:
            return replace(session, last_interaction=now)
        return _reject(session, event)

    if e is SessionEvent.PRESS_CANCEL:
        if s in (SessionState.RECORDING, SessionState.REVIEWING):
            return replace(session, state=SessionState.DISCARDED)
        return _reject(session, event)

    if e is SessionEvent.PRESS_OK:
        if s is SessionState.REVIEWING:
            return replace(session, state=SessionState.SUBMITTED, submitted_at=now)
        return _reject(session, event)

    if e is SessionEvent.TICK:
        if s is SessionState.RECORDING:
            assert session.recording_start is not None
            if now - session.recording_start >= MAX_RECORDING_MS:
                return replace(session, state=SessionState.DISCARDED)
        elif s is SessionState.REVIEWING:
            assert session.last_interaction is not None
            if now - session.last_interaction >= REVIEW_IDLE_MS:
                # auto-submit stamps the logical deadline, not the tick
                return replace(
                    session,
                    state=SessionState.SUBMITTED,
                    submitted_at=session.last_interaction + REVIEW_IDLE_MS,
                )
        return session

    return _reject(session, event)


def _reject(session: ReportSession, event: SessionEvent) -> ReportSession:
    log.debug("rejected %s in state %s", event.value, session.state.value)
    return session


def finalize(
    session: ReportSession, report_id: str, device_id: str, transcript: str = ""
) -> VerbalReport:
    """Materialize the single report a submitted session produces."""
    if session.state is not SessionState.SUBMITTED:
        raise ValueError(f"cannot finalize a session in state {session.state.value}")
    assert session.method is not None and session.submitted_at is not None
    duration = session.audio_duration
    assert duration is not None and 0 <= duration <= MAX_RECORDING_MS / 1000
    return VerbalReport(
        report_id=report_id,
        device_id=device_id,
        method=session.method,
        submitted_at=session.submitted_at,
        audio_duration=duration,
        transcript=transcript,
    )
