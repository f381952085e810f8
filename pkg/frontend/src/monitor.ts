/** Per-participant monitoring numbers, rendered from the summary endpoint's
 * raw bytes so what the researcher reads is exactly what the service said.
 */
import { leafSpans, joinPath, PathSeg } from "./jsonspan";

export interface MonitorRow {
  label: string;
  /** Literal slice of the response body. */
  value: string;
  group: string;
}

export interface MonitorModel {
  raw: string;
  rows: MonitorRow[];
}

interface SummaryShape {
  methods: Record<string, number>;
  total_reports: number;
  structures: Record<string, number>;
  time_cues: Record<string, number>;
  with_effort: number;
  without_effort: number;
  activity_count: number;
  reports_per_day: Record<string, number>;
  wear_hours: Record<string, number>;
}

export function buildMonitor(raw: string): MonitorModel {
  const spans = leafSpans(raw);
  const parsed = JSON.parse(raw) as SummaryShape;
  const rows: MonitorRow[] = [];

  const push = (group: string, label: string, path: PathSeg[]): void => {
    const value = spans.get(joinPath(path));
    if (value !== undefined) rows.push({ group, label, value });
  };

  push("reports", "total reports", ["total_reports"]);
  for (const method of Object.keys(parsed.methods)) {
    push("reports", method, ["methods", method]);
  }
  push("activities", "activities extracted", ["activity_count"]);
  push("activities", "with effort cue", ["with_effort"]);
  push("activities", "without effort cue", ["without_effort"]);
  for (const s of Object.keys(parsed.structures)) {
    push("structures", s, ["structures", s]);
  }
  for (const c of Object.keys(parsed.time_cues)) {
    push("time cues", c, ["time_cues", c]);
  }
  for (const day of Object.keys(parsed.reports_per_day)) {
    push("reports per day", day, ["reports_per_day", day]);
  }
  for (const day of Object.keys(parsed.wear_hours)) {
    push("wear hours", day, ["wear_hours", day]);
  }
  return { raw, rows };
}
