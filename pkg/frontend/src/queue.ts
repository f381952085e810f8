/** Review queue model: reports joined with their extracted activities.
 *
 * Corrections apply optimistically and roll back if the PUT fails; writes
 * to the same activity are serialized so a slow response can't clobber a
 * later edit. A failed refresh keeps the items already on screen.
 */
import {
  ActivityRecord,
  ApiError,
  Client,
  CorrectableField,
  ReportRow,
  Unreachable,
} from "./api";

export type CorrectionState = "pending" | "accepted" | "corrected";

export interface ReviewActivity {
  record: ActivityRecord;
  state: CorrectionState;
  busy: boolean;
  error: string | null;
}

export interface ReviewItem {
  report: ReportRow;
  activities: ReviewActivity[];
}

export interface QueueFilter {
  effort?: string; // category value, or "none" for reports without a cue
  timeCue?: string;
  onlyPending?: boolean;
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) return err.detail;
  if (err instanceof Unreachable) return "service unreachable";
  return err instanceof Error ? err.message : String(err);
}

function byte(a: string, b: string): number {
  return a < b ? -1 : a > b ? 1 : 0;
}

/** Chronological, with report_id as the tiebreaker so pagination is stable
 * even when two reports share a timestamp. Date.parse handles both the
 * millisecond and whole-second instant forms the service emits. */
export function orderReports(rows: ReportRow[]): ReportRow[] {
  return [...rows].sort(
    (a, b) =>
      Date.parse(a.submitted_at) - Date.parse(b.submitted_at) ||
      byte(a.report_id, b.report_id),
  );
}

/** Optimistic local edit mirroring the server's overlay semantics. The
 * effort score is server-derived, so it goes stale until the refetch lands;
 * nothing downstream computes with it. */
export function applyLocal(
  record: ActivityRecord,
  field: CorrectableField,
  value: string | null,
): void {
  switch (field) {
    case "activity_type":
      record.activity_type = value as string;
      break;
    case "semantic":
      record.semantic = value as string;
      break;
    case "time_cue":
      record.time_cue = { ...record.time_cue, completeness: value as never };
      if (value !== "complete") record.timespan = null;
      break;
    case "effort":
      record.effort = value === null ? null : { category: value, score: record.effort?.score ?? null };
      break;
  }
  const set = new Set(record.corrected_fields ?? []);
  set.add(field);
  record.corrected_fields = [...set].sort();
}

export class ReviewQueue {
  items: ReviewItem[] = [];
  /** True when the last refresh failed and the view is showing old data. */
  stale = false;
  lastError: string | null = null;
  loaded = false;

  private accepted = new Set<string>();
  private chains = new Map<string, Promise<void>>();
  private listeners: Array<() => void> = [];

  constructor(
    private client: Client,
    public deviceId: string | undefined = undefined,
    public author: string = "reviewer",
  ) {}

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  private stateOf(record: ActivityRecord): CorrectionState {
    if (record.corrected_fields?.length) return "corrected";
    if (this.accepted.has(record.activity_id)) return "accepted";
    return "pending";
  }

  private wrap(record: ActivityRecord, old?: ReviewActivity): ReviewActivity {
    return {
      record,
      state: this.stateOf(record),
      busy: old?.busy ?? false,
      error: old?.error ?? null,
    };
  }

  async refresh(): Promise<void> {
    try {
      const [reports, acts] = await Promise.all([
        this.client.reports(this.deviceId),
        this.client.activities(this.deviceId ? { device_id: this.deviceId } : {}),
      ]);
      const byReport = new Map<string, ActivityRecord[]>();
      for (const a of acts) {
        const bucket = byReport.get(a.report_id);
        if (bucket) bucket.push(a);
        else byReport.set(a.report_id, [a]);
      }
      const previous = new Map(
        this.items.flatMap((it) => it.activities).map((a) => [a.record.activity_id, a]),
      );
      this.items = orderReports(reports).map((report) => ({
        report,
        activities: (byReport.get(report.report_id) ?? []).map((rec) =>
          this.wrap(rec, previous.get(rec.activity_id)),
        ),
      }));
      this.stale = false;
      this.lastError = null;
      this.loaded = true;
    } catch (err) {
      // keep whatever is on screen; the banner offers a retry
      this.stale = true;
      this.lastError = errorText(err);
    }
    this.emit();
  }

  filtered(filter: QueueFilter = {}): ReviewItem[] {
    const match = (a: ReviewActivity): boolean => {
      if (filter.effort !== undefined) {
        const cat = a.record.effort?.category ?? "none";
        if (cat !== filter.effort) return false;
      }
      if (filter.timeCue !== undefined && a.record.time_cue.completeness !== filter.timeCue)
        return false;
      if (filter.onlyPending && a.state !== "pending") return false;
      return true;
    };
    return this.items
      .map((it) => ({ report: it.report, activities: it.activities.filter(match) }))
      .filter((it) => it.activities.length > 0);
  }

  find(activityId: string): ReviewActivity | undefined {
    for (const item of this.items) {
      for (const a of item.activities) {
        if (a.record.activity_id === activityId) return a;
      }
    }
    return undefined;
  }

  /** Reviewer sign-off with no server write; cleared by a real correction. */
  markAccepted(activityId: string): void {
    const entry = this.find(activityId);
    if (!entry || entry.state === "corrected") return;
    this.accepted.add(activityId);
    entry.state = "accepted";
    this.emit();
  }

  submitCorrection(
    activityId: string,
    field: CorrectableField,
    newValue: string | null,
  ): Promise<void> {
    const prev = this.chains.get(activityId) ?? Promise.resolve();
    const task = prev.then(() => this.doSubmit(activityId, field, newValue));
    // keep the chain alive past failures so the next edit still queues
    this.chains.set(activityId, task.catch(() => undefined));
    return task;
  }

  private async doSubmit(
    activityId: string,
    field: CorrectableField,
    newValue: string | null,
  ): Promise<void> {
    const entry = this.find(activityId);
    if (!entry) throw new Error(`activity ${activityId} is not loaded`);

    const snapshot: ActivityRecord = structuredClone(entry.record);
    const oldValue = currentValue(entry.record, field);
    applyLocal(entry.record, field, newValue);
    entry.state = "corrected";
    entry.busy = true;
    entry.error = null;
    this.emit();

    try {
      await this.client.putCorrection(activityId, field, newValue, oldValue, this.author);
      // swap in server truth for the whole report (overlay recomputes score etc.)
      const fresh = await this.client.activities({ report_id: entry.record.report_id });
      for (const rec of fresh) {
        const held = this.find(rec.activity_id);
        if (held) {
          held.record = rec;
          held.state = this.stateOf(rec);
        }
      }
      // a poll may have rebuilt the tree while the PUT was in flight
      const live = this.find(activityId) ?? entry;
      live.busy = false;
      live.error = null;
    } catch (err) {
      const live = this.find(activityId) ?? entry;
      live.record = snapshot;
      live.state = this.stateOf(snapshot);
      live.busy = false;
      live.error = errorText(err);
    }
    this.emit();
  }
}

export function currentValue(
  record: ActivityRecord,
  field: CorrectableField,
): string | null {
  switch (field) {
    case "activity_type":
      return record.activity_type;
    case "semantic":
      return record.semantic;
    case "time_cue":
      return record.time_cue.completeness;
    case "effort":
      return record.effort?.category ?? null;
  }
}
