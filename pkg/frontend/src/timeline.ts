/** Three-lane timeline from the delimited alignment export.
 *
 * Input is the pipeline's timeline CSV: series,start,end,label,value with
 * series one of ground_truth / report / steps. The console only draws it;
 * every number on screen was computed upstream.
 */

export interface Band {
  start: number;
  end: number;
  label: string;
  value: number;
}

export interface Lanes {
  groundTruth: Band[];
  reports: Band[];
  steps: Band[];
  t0: number;
  t1: number;
}

const HEADER = "series,start,end,label,value";
const SERIES = new Set(["ground_truth", "report", "steps"]);

export class TimelineFormatError extends Error {
  constructor(message: string, readonly line: number) {
    super(`line ${line}: ${message}`);
    this.name = "TimelineFormatError";
  }
}

export function parseTimelineCsv(text: string): Lanes {
  const lines = text.split(/\r?\n/);
  if ((lines[0] ?? "").trim() !== HEADER) {
    throw new TimelineFormatError(`expected header ${HEADER}`, 1);
  }
  const lanes: Lanes = { groundTruth: [], reports: [], steps: [], t0: Infinity, t1: -Infinity };
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i]!.trim();
    if (!line) continue;
    const cells = line.split(",");
    if (cells.length !== 5) {
      throw new TimelineFormatError(`expected 5 columns, got ${cells.length}`, i + 1);
    }
    const [series, startIso, endIso, label, valueText] = cells as [
      string,
      string,
      string,
      string,
      string,
    ];
    if (!SERIES.has(series)) {
      throw new TimelineFormatError(`unknown series ${JSON.stringify(series)}`, i + 1);
    }
    const start = Date.parse(startIso);
    const end = Date.parse(endIso);
    if (Number.isNaN(start) || Number.isNaN(end)) {
      throw new TimelineFormatError("bad timestamp", i + 1);
    }
    if (end < start) {
      throw new TimelineFormatError("interval ends before it starts", i + 1);
    }
    const value = Number(valueText);
    if (Number.isNaN(value)) {
      throw new TimelineFormatError(`bad value ${JSON.stringify(valueText)}`, i + 1);
    }
    const band: Band = { start, end, label, value };
    if (series === "ground_truth") lanes.groundTruth.push(band);
    else if (series === "report") lanes.reports.push(band);
    else lanes.steps.push(band);
    lanes.t0 = Math.min(lanes.t0, start);
    lanes.t1 = Math.max(lanes.t1, end);
  }
  if (!Number.isFinite(lanes.t0)) {
    throw new TimelineFormatError("no rows", 2);
  }
  for (const lane of [lanes.groundTruth, lanes.reports, lanes.steps]) {
    lane.sort((a, b) => a.start - b.start);
  }
  return lanes;
}

/** Fixed palette keyed by ground-truth class; report intervals reuse one hue. */
export const CLASS_COLORS: Record<string, string> = {
  sitting: "#c9b458",
  lying: "#8d7bb3",
  standing: "#69a2b0",
  stepping: "#55a868",
  in_vehicle: "#b0713f",
  biking: "#c44e52",
};

const SVG = "http://www.w3.org/2000/svg";
const WIDTH = 960;
const LANE_H = 42;
const GAP = 18;
const LEFT = 90;

function el<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function renderTimeline(lanes: Lanes): SVGSVGElement {
  const height = 3 * (LANE_H + GAP) + 24;
  const svg = el("svg", {
    viewBox: `0 0 ${WIDTH + LEFT + 10} ${height}`,
    width: "100%",
    role: "img",
    "data-role": "timeline",
  });
  const spanMs = Math.max(lanes.t1 - lanes.t0, 1);
  const x = (t: number): number => LEFT + ((t - lanes.t0) / spanMs) * WIDTH;

  const laneDefs: Array<{ name: string; bands: Band[]; kind: "band" | "bar" }> = [
    { name: "ground truth", bands: lanes.groundTruth, kind: "band" },
    { name: "self-report", bands: lanes.reports, kind: "band" },
    { name: "steps/min", bands: lanes.steps, kind: "bar" },
  ];
  const maxSteps = Math.max(1, ...lanes.steps.map((b) => b.value));

  laneDefs.forEach((lane, row) => {
    const top = 12 + row * (LANE_H + GAP);
    const title = el("text", {
      x: "4",
      y: String(top + LANE_H / 2 + 4),
      "font-size": "12",
      "data-role": "lane-title",
    });
    title.textContent = lane.name;
    svg.appendChild(title);
    svg.appendChild(
      el("line", {
        x1: String(LEFT),
        y1: String(top + LANE_H),
        x2: String(LEFT + WIDTH),
        y2: String(top + LANE_H),
        stroke: "#555",
        "stroke-width": "0.5",
      }),
    );
    for (const band of lane.bands) {
      const x0 = x(band.start);
      const w = Math.max(x(band.end) - x0, 0.5);
      if (lane.kind === "band") {
        const rect = el("rect", {
          x: String(x0),
          y: String(top + 4),
          width: String(w),
          height: String(LANE_H - 8),
          fill: CLASS_COLORS[band.label] ?? "#4878a8",
          "data-label": band.label,
        });
        const tip = el("title", {});
        tip.textContent = `${band.label} ${new Date(band.start).toISOString()}`;
        rect.appendChild(tip);
        svg.appendChild(rect);
      } else {
        const h = (band.value / maxSteps) * (LANE_H - 6);
        svg.appendChild(
          el("rect", {
            x: String(x0),
            y: String(top + LANE_H - 3 - h),
            width: String(w),
            height: String(Math.max(h, 0)),
            fill: "#55a868",
            "data-label": "steps",
          }),
        );
      }
    }
  });
  return svg;
}
