/** App shell: connection header, three tabs, 5 s polling on the active one. */
import { Client } from "./api";
import { buildMonitor } from "./monitor";
import { ReviewQueue, QueueFilter } from "./queue";
import { parseTimelineCsv, renderTimeline, TimelineFormatError } from "./timeline";
import { renderMonitor, renderQueue } from "./views";

const POLL_MS = 5000;

type Tab = "queue" | "monitor" | "timeline";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function startApp(): void {
  const baseInput = byId<HTMLInputElement>("base-url");
  const tokenInput = byId<HTMLInputElement>("token");
  const deviceSelect = byId<HTMLSelectElement>("device");
  const effortFilter = byId<HTMLSelectElement>("effort-filter");
  const pendingOnly = byId<HTMLInputElement>("pending-only");
  const queuePane = byId<HTMLElement>("queue-pane");
  const monitorPane = byId<HTMLElement>("monitor-pane");
  const timelinePane = byId<HTMLElement>("timeline-pane");
  const csvInput = byId<HTMLInputElement>("timeline-file");
  const timelineStatus = byId<HTMLElement>("timeline-status");

  baseInput.value = window.location.origin;
  let client = new Client(baseInput.value, tokenInput.value);
  let queue = new ReviewQueue(client, undefined);
  let tab: Tab = "queue";
  let timer: ReturnType<typeof setInterval> | null = null;

  const filter = (): QueueFilter => {
    const f: QueueFilter = {};
    if (effortFilter.value) f.effort = effortFilter.value;
    if (pendingOnly.checked) f.onlyPending = true;
    return f;
  };

  const drawQueue = (): void =>
    renderQueue(queuePane, queue, filter(), {
      onCorrect: (id, field, value) => void queue.submitCorrection(id, field, value),
      onAccept: (id) => queue.markAccepted(id),
    });

  queuePane.addEventListener("click", (ev) => {
    if ((ev.target as HTMLElement).dataset.role === "retry") void queue.refresh();
  });

  const drawMonitor = async (): Promise<void> => {
    const device = deviceSelect.value;
    if (!device) {
      monitorPane.replaceChildren("pick a participant");
      return;
    }
    try {
      renderMonitor(monitorPane, buildMonitor(await client.summaryRaw(device)));
    } catch (err) {
      monitorPane.replaceChildren(`summary unavailable: ${(err as Error).message}`);
    }
  };

  const refreshRoster = async (): Promise<void> => {
    try {
      const rows = await client.participants();
      const held = deviceSelect.value;
      deviceSelect.replaceChildren(
        ...rows.map((r) => {
          const opt = document.createElement("option");
          opt.value = r.device_id;
          opt.textContent = `${r.device_id} (${r.total_reports} reports)`;
          return opt;
        }),
      );
      if (rows.some((r) => r.device_id === held)) deviceSelect.value = held;
    } catch {
      // roster is cosmetic; the poll will retry
    }
  };

  const poll = async (): Promise<void> => {
    if (tab === "queue") await queue.refresh();
    else if (tab === "monitor") await drawMonitor();
  };

  const restartPolling = (): void => {
    if (timer) clearInterval(timer);
    timer = setInterval(() => void poll(), POLL_MS);
    void poll();
  };

  const reconnect = (): void => {
    client = new Client(baseInput.value, tokenInput.value);
    queue = new ReviewQueue(client, queue.deviceId);
    queue.onChange(drawQueue);
    void refreshRoster();
    restartPolling();
  };

  baseInput.addEventListener("change", reconnect);
  tokenInput.addEventListener("change", () => client.setToken(tokenInput.value));
  deviceSelect.addEventListener("change", () => void poll());
  effortFilter.addEventListener("change", drawQueue);
  pendingOnly.addEventListener("change", drawQueue);

  for (const name of ["queue", "monitor", "timeline"] as const) {
    byId<HTMLButtonElement>(`tab-${name}`).addEventListener("click", () => {
      tab = name;
      for (const pane of [queuePane, monitorPane, timelinePane]) pane.hidden = true;
      byId<HTMLElement>(`${name}-pane`).hidden = false;
      if (name === "timeline") byId<HTMLElement>("timeline-controls").hidden = false;
      else byId<HTMLElement>("timeline-controls").hidden = true;
      restartPolling();
    });
  }

  csvInput.addEventListener("change", async () => {
    const file = csvInput.files?.[0];
    if (!file) return;
    try {
      const lanes = parseTimelineCsv(await file.text());
      timelinePane.replaceChildren(renderTimeline(lanes));
      timelineStatus.textContent =
        `${lanes.groundTruth.length} ground-truth bands, ` +
        `${lanes.reports.length} reported intervals, ${lanes.steps.length} step bins`;
    } catch (err) {
      timelinePane.replaceChildren();
      timelineStatus.textContent =
        err instanceof TimelineFormatError ? err.message : `could not read file: ${err}`;
    }
  });

  queue.onChange(drawQueue);
  void refreshRoster();
  restartPolling();
}

if (!("VITEST" in import.meta.env) || !import.meta.env.VITEST) {
  startApp();
}
