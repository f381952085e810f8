"""Prompt scheduling for in-situ verbal reports.

One prompt is reserved per clock-hour block at a uniformly random instant,
never closer than 30 minutes to the previous anchor (last delivery or last
submitted report). A delivered prompt stays available for 15 minutes. Prompts
are skipped while the wearer is driving and deferred while the watch is off
the wrist. A submitted report, prompted or voluntary, replaces the
outstanding reservation with one anchored at the submission instant.

Reservation draws are deterministic given (anchor, seed), so a trace can be
replayed exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from .types import MS_PER_HOUR, MS_PER_MINUTE, Locomotion, format_instant

RESERVE_BUFFER_MS = 30 * MS_PER_MINUTE
PROMPT_LIFETIME_MS = 15 * MS_PER_MINUTE


class SchedulerError(Exception):
    pass


class MonotonicityError(SchedulerError):
    """A tick arrived with a timestamp earlier than one already processed."""


class ProtocolError(SchedulerError):
    """An operation was applied to a plan in the wrong status."""


class PlanStatus(str, Enum):
    RESERVED = "reserved"
    DELIVERED = "delivered"
    DEFERRED = "deferred"
    EXPIRED = "expired"
    SKIPPED = "skipped"
    CONSUMED = "consumed"


class EventKind(str, Enum):
    DELIVER = "deliver"
    EXPIRE = "expire"
    SKIP = "skip"
    DEFER = "defer"
    RESCHEDULE = "reschedule"


class ReportMethod(str, Enum):
    PROMPTED = "prompted"
    VOLUNTARY = "voluntary"


@dataclass(frozen=True)
class WearContext:
    """Device context sampled at a tick."""

    timestamp: int
    worn: bool
    locomotion: Locomotion = Locomotion.UNKNOWN


@dataclass
class PromptPlan:
    window_start: int
    window_end: int
    earliest_allowed: int
    scheduled_at: int
    status: PlanStatus
    seed: int
    delivered_at: Optional[int] = None
    last_event_at: int = field(default=-1)


@dataclass(frozen=True)
class SchedulerEvent:
    kind: EventKind
    at: int
    plan: PromptPlan  # snapshot taken when the event was emitted


def _snapshot(plan: PromptPlan) -> PromptPlan:
    return replace(plan)


def _draw_rng(anchor: int, seed: int) -> random.Random:
    # bytes seeds hash through sha512, stable across processes and platforms
    return random.Random(f"{seed}:{anchor}".encode("ascii"))


def reserve_next(anchor: int, seed: int) -> PromptPlan:
    """Reserve the prompt for the clock-hour block after `anchor`.

    The draw is uniform over the part of the block at least 30 minutes past
    the anchor; if the buffer swallows the whole block, the reservation moves
    one block later.
    """
    window_start = (anchor // MS_PER_HOUR + 1) * MS_PER_HOUR
    earliest = anchor + RESERVE_BUFFER_MS
    if earliest >= window_start + MS_PER_HOUR:
        window_start += MS_PER_HOUR
    window_end = window_start + MS_PER_HOUR
    lower = max(window_start, earliest)
    scheduled_at = lower + _draw_rng(anchor, seed).randrange(window_end - lower)
    return PromptPlan(
        window_start=window_start,
        window_end=window_end,
        earliest_allowed=earliest,
        scheduled_at=scheduled_at,
        status=PlanStatus.RESERVED,
        seed=seed,
        last_event_at=anchor,
    )


def on_tick(now: int, ctx: WearContext, plan: PromptPlan) -> list[SchedulerEvent]:
    """Advance one live plan by a context tick, returning the events it causes."""
    if plan.status not in (PlanStatus.RESERVED, PlanStatus.DEFERRED, PlanStatus.DELIVERED):
        raise ProtocolError(f"tick on settled plan ({plan.status.value})")
    if now < plan.last_event_at:
        raise MonotonicityError(f"tick at {format_instant(now)} precedes {format_instant(plan.last_event_at)}")
    plan.last_event_at = now
    events: list[SchedulerEvent] = []

    if plan.status is PlanStatus.RESERVED and now >= plan.scheduled_at:
        if ctx.locomotion is Locomotion.IN_VEHICLE:
            # the block is spent; retry in the next one
            plan.status = PlanStatus.SKIPPED
            events.append(SchedulerEvent(EventKind.SKIP, now, _snapshot(plan)))
            nxt = reserve_next(plan.scheduled_at, plan.seed + 1)
            events.append(SchedulerEvent(EventKind.RESCHEDULE, now, _snapshot(nxt)))
        elif not ctx.worn:
            plan.status = PlanStatus.DEFERRED
            events.append(SchedulerEvent(EventKind.DEFER, now, _snapshot(plan)))
        else:
            plan.status = PlanStatus.DELIVERED
            plan.delivered_at = now
            events.append(SchedulerEvent(EventKind.DELIVER, now, _snapshot(plan)))
        return events

    if plan.status is PlanStatus.DEFERRED:
        if now >= plan.window_end:
            plan.status = PlanStatus.SKIPPED
            events.append(SchedulerEvent(EventKind.SKIP, now, _snapshot(plan)))
            nxt = reserve_next(plan.window_end, plan.seed + 1)
            events.append(SchedulerEvent(EventKind.RESCHEDULE, now, _snapshot(nxt)))
        elif ctx.worn and ctx.locomotion is not Locomotion.IN_VEHICLE:
            plan.status = PlanStatus.DELIVERED
            plan.delivered_at = now
            events.append(SchedulerEvent(EventKind.DELIVER, now, _snapshot(plan)))
        return events

    if plan.status is PlanStatus.DELIVERED:
        assert plan.delivered_at is not None
        deadline = plan.delivered_at + PROMPT_LIFETIME_MS
        if now >= deadline:
            plan.status = PlanStatus.EXPIRED
            events.append(SchedulerEvent(EventKind.EXPIRE, deadline, _snapshot(plan)))
    return events


def on_report_submitted(
    now: int, method: ReportMethod, plan: Optional[PromptPlan], seed: int
) -> tuple[Optional[PromptPlan], PromptPlan]:
    """Settle the delivered plan (for prompted reports) and reserve the next one.

    Both methods re-anchor the chain at the submission instant; the caller
    must drop whatever reservation was outstanding in favour of the returned
    one.
    """
    if method is ReportMethod.PROMPTED:
        if plan is None or plan.status is not PlanStatus.DELIVERED:
            raise ProtocolError("prompted report without a delivered prompt")
        plan.status = PlanStatus.CONSUMED
        plan.last_event_at = now
    return plan, reserve_next(now, seed)


class DeviceScheduler:
    """Per-device prompt chain: one outstanding reservation plus, transiently,
    one delivered prompt awaiting a response.

    Keeps an append-only event log suitable for line-delimited export.
    """

    def __init__(self, device_id: str, start_anchor: int, seed: int):
        self.device_id = device_id
        self.base_seed = seed
        self._seed_counter = 0
        self.delivered: Optional[PromptPlan] = None
        self.pending: Optional[PromptPlan] = reserve_next(start_anchor, self._next_seed())
        self.events: list[SchedulerEvent] = []
        self._last_now = start_anchor

    def _next_seed(self) -> int:
        self._seed_counter += 1
        return self.base_seed * 1_000_003 + self._seed_counter

    def _observe(self, now: int) -> None:
        if now < self._last_now:
            raise MonotonicityError(
                f"tick at {format_instant(now)} precedes {format_instant(self._last_now)}"
            )
        self._last_now = now

    def tick(self, now: int, ctx: WearContext) -> list[SchedulerEvent]:
        self._observe(now)
        out: list[SchedulerEvent] = []
        if self.delivered is not None:
            for ev in on_tick(now, ctx, self.delivered):
                if ev.kind is EventKind.EXPIRE:
                    self.delivered = None
                out.append(ev)
        if self.pending is not None:
            for ev in on_tick(now, ctx, self.pending):
                if ev.kind is EventKind.DELIVER:
                    self.delivered = self.pending
                    # chain: next reservation is anchored at this delivery
                    self.pending = reserve_next(ev.at, self._next_seed())
                    out.append(ev)
                    out.append(SchedulerEvent(EventKind.RESCHEDULE, ev.at, _snapshot(self.pending)))
                elif ev.kind is EventKind.RESCHEDULE:
                    self.pending = replace(ev.plan)
                    out.append(ev)
                else:
                    out.append(ev)
        self.events.extend(out)
        return out

    def report_submitted(self, now: int, method: ReportMethod) -> list[SchedulerEvent]:
        self._observe(now)
        out: list[SchedulerEvent] = []
        if self.delivered is not None and self.delivered.delivered_at is not None:
            deadline = self.delivered.delivered_at + PROMPT_LIFETIME_MS
            if now >= deadline:
                # the prompt lapsed before anyone noticed; settle it first
                self.delivered.status = PlanStatus.EXPIRED
                out.append(SchedulerEvent(EventKind.EXPIRE, deadline, _snapshot(self.delivered)))
                self.delivered = None
        settled, nxt = on_report_submitted(now, method, self.delivered, self._next_seed())
        if method is ReportMethod.PROMPTED:
            assert settled is not None
            self.delivered = None
        self.pending = nxt
        out.append(SchedulerEvent(EventKind.RESCHEDULE, now, _snapshot(nxt)))
        self.events.extend(out)
        return out

    def event_records(self) -> list[dict]:
        return [event_record(self.device_id, ev) for ev in self.events]


def event_record(device_id: str, ev: SchedulerEvent) -> dict:
    """Flatten one event for the line-delimited log export."""
    return {
        "device_id": device_id,
        "kind": ev.kind.value,
        "at": format_instant(ev.at),
        "window_start": format_instant(ev.plan.window_start),
        "scheduled_at": format_instant(ev.plan.scheduled_at),
        "status": ev.plan.status.value,
    }
