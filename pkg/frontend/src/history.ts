/**
 * 30-day trend rendering. Unlogged days are gaps: the line only connects
 * consecutive calendar days, and every point keeps its own marker.
 */

import { formatProbability } from "./format.js";
import { COLOR_HEX } from "./charts.js";
import type { HistoryPoint, RiskLevelName } from "./types.js";

const LEVEL_COLOR: Record<RiskLevelName, string> = {
  LOW: COLOR_HEX.GREEN,
  MEDIUM: "#d9a13b",
  HIGH: COLOR_HEX.RED,
};

const SVG_NS = "http://www.w3.org/2000/svg";

export function dayNumber(isoDate: string): number {
  return Math.round(Date.parse(isoDate + "T00:00:00Z") / 86_400_000);
}

export function renderTrend(points: HistoryPoint[]): SVGSVGElement {
  const width = 420;
  const height = 160;
  const pad = 12;
  const root = document.createElementNS(SVG_NS, "svg");
  root.setAttribute("viewBox", `0 0 ${width} ${height}`);
  root.setAttribute("width", String(width));
  root.setAttribute("height", String(height));
  root.dataset.role = "trend";

  if (!points.length) {
    const empty = document.createElementNS(SVG_NS, "text");
    empty.setAttribute("x", String(width / 2));
    empty.setAttribute("y", String(height / 2));
    empty.setAttribute("text-anchor", "middle");
    empty.textContent = "no risk history yet";
    root.appendChild(empty);
    return root;
  }

  const days = points.map((p) => dayNumber(p.date));
  const first = days[0];
  const span = Math.max(days[days.length - 1] - first, 1);
  const x = (day: number) => pad + ((day - first) / span) * (width - 2 * pad);
  const y = (probability: number) => height - pad - probability * (height - 2 * pad);

  // Connect only consecutive calendar days; gaps break the line.
  let segment: string[] = [];
  const flush = () => {
    if (segment.length > 1) {
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", segment.join(" "));
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", "#6b7fd7");
      line.setAttribute("stroke-width", "2");
      line.dataset.role = "trend-segment";
      root.appendChild(line);
    }
    segment = [];
  };
  points.forEach((point, i) => {
    if (i > 0 && days[i] - days[i - 1] !== 1) {
      flush();
    }
    segment.push(`${x(days[i])},${y(point.probability)}`);
  });
  flush();

  for (let i = 0; i < points.length; i += 1) {
    const marker = document.createElementNS(SVG_NS, "circle");
    marker.setAttribute("cx", String(x(days[i])));
    marker.setAttribute("cy", String(y(points[i].probability)));
    marker.setAttribute("r", "4");
    marker.setAttribute("fill", LEVEL_COLOR[points[i].level]);
    marker.dataset.date = points[i].date;
    marker.dataset.probability = formatProbability(points[i].probability);
    root.appendChild(marker);
  }
  return root;
}
