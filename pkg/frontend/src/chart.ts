/** SVG line chart of per-emotion bucket means, with peak markers. */

import type { Peak, SchemaDoc, SeriesDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

// one fixed, colorblind-aware color per palette slot (schema order)
const COLORS = [
  "#d62728",
  "#8c564b",
  "#9467bd",
  "#e377c2",
  "#1f77b4",
  "#2ca02c",
  "#17becf",
  "#ff7f0e",
];

export interface ChartLayout {
  width: number;
  height: number;
  padLeft: number;
  padRight: number;
  padTop: number;
  padBottom: number;
}

const DEFAULT_LAYOUT: ChartLayout = {
  width: 640,
  height: 240,
  padLeft: 34,
  padRight: 12,
  padTop: 10,
  padBottom: 26,
};

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function round1(value: number): string {
  return String(Math.round(value * 10) / 10);
}

/** Human x-axis tick for a bucket start: date for day/week, clock for hour. */
function tickLabel(start: string, granularity: string): string {
  return granularity === "hour" ? start.slice(11, 16) : start.slice(5, 10);
}

/**
 * Render the series as one polyline per visible emotion. Buckets with
 * no ratings break the line; peaks of visible emotions get a circle
 * marker. With nothing visible the frame and grid still render.
 */
export function buildChart(
  series: SeriesDoc,
  peaks: Peak[],
  visible: ReadonlySet<string>,
  schema: SchemaDoc,
  layout: ChartLayout = DEFAULT_LAYOUT,
): SVGSVGElement {
  const { width, height, padLeft, padRight, padTop, padBottom } = layout;
  const plotW = width - padLeft - padRight;
  const plotH = height - padTop - padBottom;
  const buckets = series.buckets;

  const x = (index: number): number =>
    buckets.length <= 1
      ? padLeft + plotW / 2
      : padLeft + (plotW * index) / (buckets.length - 1);
  const y = (mean: number): number =>
    padTop +
    plotH -
    ((mean - schema.scale_min) / (schema.scale_max - schema.scale_min)) * plotH;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "emotion-chart",
    role: "img",
  }) as SVGSVGElement;

  const grid = svgEl("g", { class: "grid" });
  for (let level = schema.scale_min; level <= schema.scale_max; level++) {
    grid.append(
      svgEl("line", {
        x1: String(padLeft),
        x2: String(width - padRight),
        y1: round1(y(level)),
        y2: round1(y(level)),
      }),
    );
    const tick = svgEl("text", { x: String(padLeft - 6), y: round1(y(level) + 4), class: "y-tick" });
    tick.textContent = String(level);
    grid.append(tick);
  }
  svg.append(grid);

  const axis = svgEl("g", { class: "x-axis" });
  buckets.forEach((bucket, index) => {
    const label = svgEl("text", {
      x: round1(x(index)),
      y: String(height - 8),
      class: "x-tick",
      "data-bucket": bucket.start,
    });
    label.textContent = tickLabel(bucket.start, series.granularity);
    axis.append(label);
  });
  svg.append(axis);

  const colorOf = new Map(schema.emotions.map((d, i) => [d.kind as string, COLORS[i % COLORS.length]]));
  const bucketIndex = new Map(buckets.map((b, i) => [b.start, i]));

  const lines = svgEl("g", { class: "series" });
  for (const descriptor of schema.emotions) {
    if (!visible.has(descriptor.kind)) continue;
    let segment: string[] = [];
    const flush = (): void => {
      if (segment.length === 0) return;
      lines.append(
        svgEl(segment.length === 1 ? "circle" : "polyline", {
          ...(segment.length === 1
            ? { cx: segment[0].split(",")[0], cy: segment[0].split(",")[1], r: "2.5" }
            : { points: segment.join(" ") }),
          class: "series-line",
          "data-emotion": descriptor.kind,
          stroke: colorOf.get(descriptor.kind) ?? "#333",
          fill: segment.length === 1 ? colorOf.get(descriptor.kind) ?? "#333" : "none",
        }),
      );
      segment = [];
    };
    buckets.forEach((bucket, index) => {
      const mean = bucket.emotions[descriptor.kind]?.mean ?? null;
      if (mean === null) flush();
      else segment.push(`${round1(x(index))},${round1(y(mean))}`);
    });
    flush();
  }
  svg.append(lines);

  const markers = svgEl("g", { class: "peaks" });
  for (const peak of peaks) {
    if (!visible.has(peak.emotion)) continue;
    const index = bucketIndex.get(peak.bucket_start);
    if (index === undefined) continue;
    const marker = svgEl("circle", {
      cx: round1(x(index)),
      cy: round1(y(peak.mean)),
      r: "4.5",
      class: "peak-marker",
      "data-emotion": peak.emotion,
      "data-bucket": peak.bucket_start,
      stroke: colorOf.get(peak.emotion) ?? "#333",
      fill: "white",
    });
    const title = svgEl("title");
    title.textContent = `${peak.emotion} peak: ${peak.mean} (${peak.bucket_start})`;
    marker.append(title);
    markers.append(marker);
  }
  svg.append(markers);

  return svg;
}
