/** Typed client for the study service /v1 endpoints.
 *
 * Reads are open; mutations carry the bearer token. Network-level failures
 * and HTTP errors are distinct types so callers can keep stale data on a
 * dropped connection but surface a 4xx inline.
 */

export interface ReportRow {
  report_id: string;
  device_id: string;
  method: "prompted" | "voluntary";
  submitted_at: string;
  audio_duration_s: number;
  transcript: string;
}

export interface TimeCueRecord {
  completeness: "none" | "incomplete" | "complete";
  duration_minutes: number | null;
  start_clock: string | null;
  end_clock: string | null;
  end_anchor: string | null;
}

export interface EffortRecord {
  category: string;
  score: number | null;
}

export interface ActivityRecord {
  activity_id: string;
  report_id: string;
  device_id: string;
  method: string;
  submitted_at: string;
  structure: string;
  activity_type: string;
  semantic: string;
  time_cue: TimeCueRecord;
  timespan: { start: string; end: string } | null;
  effort: EffortRecord | null;
  source_span: [number, number];
  corrected_fields?: string[];
}

export interface ParticipantRow {
  device_id: string;
  total_reports: number;
  last_seen: string | null;
}

export type CorrectableField = "activity_type" | "semantic" | "time_cue" | "effort";

/** Legal values per correctable field; the form offers nothing else. */
export const FIELD_VALUES: Record<CorrectableField, readonly (string | null)[]> = {
  activity_type: [
    "cardio",
    "caring_for_pets",
    "cleaning_arranging_carrying",
    "computer",
    "crafting_artwork",
    "device_unspecified",
    "dressing",
    "driving_in_vehicle",
    "eating_food",
    "face_to_face",
    "gardening",
    "mobile_device",
    "musical_instrument",
    "napping",
    "non_exercise_stepping",
    "nothing_waiting",
    "offline_shopping",
    "other_exercise",
    "other_housekeeping",
    "paperwork_desk_work",
    "personal_hygiene",
    "preparing_food",
    "puzzle_table_game",
    "reading_on_paper",
    "seeing_at_theater",
    "strength_stretching",
    "treatment",
    "tv",
    "voice_call",
  ],
  semantic: [
    "housekeeping",
    "self-maintenance",
    "non-exercise stepping",
    "screen time",
    "exercise",
    "paperwork/desk work",
    "hobby/leisure",
    "resting",
    "social",
  ],
  time_cue: ["none", "incomplete", "complete"],
  effort: [
    "relaxed",
    "no_effort",
    "no_to_low",
    "low",
    "low_to_moderate",
    "moderate",
    "moderate_to_strenuous",
    "strenuous",
    "uncategorizable",
    null, // clears the cue
  ],
};

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }
}

/** Connection-level failure: the service never answered. */
export class Unreachable extends Error {
  constructor(cause: unknown) {
    super(cause instanceof Error ? cause.message : String(cause));
    this.name = "Unreachable";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ActivityFilter {
  device_id?: string;
  report_id?: string;
  structure?: string;
  time_cue?: string;
  activity_type?: string;
}

export class Client {
  constructor(
    private baseUrl: string,
    private token: string = "",
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  setToken(token: string): void {
    this.token = token;
  }

  private url(path: string, params?: Record<string, string | undefined>): string {
    let qs = "";
    if (params) {
      const pairs = Object.entries(params).filter(([, v]) => v !== undefined);
      if (pairs.length) {
        qs = "?" + pairs.map(([k, v]) => `${k}=${encodeURIComponent(v!)}`).join("&");
      }
    }
    return `${this.baseUrl}${path}${qs}`;
  }

  private async request(url: string, init?: RequestInit): Promise<Response> {
    let resp: Response;
    try {
      resp = await this.fetchFn(url, init);
    } catch (cause) {
      throw new Unreachable(cause);
    }
    if (!resp.ok) {
      let detail = resp.statusText || `HTTP ${resp.status}`;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return resp;
  }

  async participants(): Promise<ParticipantRow[]> {
    const resp = await this.request(this.url("/v1/participants"));
    return (await resp.json()).participants;
  }

  async reports(deviceId?: string): Promise<ReportRow[]> {
    const resp = await this.request(this.url("/v1/reports", { device_id: deviceId }));
    return (await resp.json()).reports;
  }

  async activities(filter: ActivityFilter = {}): Promise<ActivityRecord[]> {
    const resp = await this.request(this.url("/v1/activities", { ...filter }));
    return (await resp.json()).activities;
  }

  /** Raw body text: the monitoring view renders byte-exact slices of it. */
  async summaryRaw(deviceId: string): Promise<string> {
    const resp = await this.request(
      this.url(`/v1/participants/${encodeURIComponent(deviceId)}/summary`),
    );
    return resp.text();
  }

  async putCorrection(
    activityId: string,
    field: CorrectableField,
    newValue: string | null,
    oldValue: string | null,
    author: string,
  ): Promise<void> {
    await this.request(
      this.url(`/v1/activities/${encodeURIComponent(activityId)}/correction`),
      {
        method: "PUT",
        headers: {
          "Content-Type": "application/json",
          Authorization: `Bearer ${this.token}`,
        },
        body: JSON.stringify({
          field,
          new_value: newValue,
          old_value: oldValue,
          author,
        }),
      },
    );
  }
}
