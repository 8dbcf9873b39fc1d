/**
 * SVG chart renderers, all fed by one ExplanationView payload.
 *
 * BAR and PIE use the unsigned percentage shares; DIVERGING uses the signed
 * shares (risk-decreasing factors extend left, risk-increasing right).
 * Colors come verbatim from the payload; nothing is recolored client-side.
 */

import { formatPercent } from "./format.js";
import type { FactorPayload, ViewPayload } from "./types.js";

export type ChartMode = "BAR" | "PIE" | "DIVERGING";
export const CHART_MODES: ChartMode[] = ["BAR", "PIE", "DIVERGING"];

export const COLOR_HEX: Record<string, string> = {
  RED: "#d64545",
  GREEN: "#2f9e63",
  GRAY: "#9aa0a6",
};

const SVG_NS = "http://www.w3.org/2000/svg";

export function rankedFactors(view: ViewPayload): FactorPayload[] {
  return [...view.factors].sort((a, b) => a.rank - b.rank);
}

function svgRoot(width: number, height: number, mode: ChartMode): SVGSVGElement {
  const root = document.createElementNS(SVG_NS, "svg");
  root.setAttribute("viewBox", `0 0 ${width} ${height}`);
  root.setAttribute("width", String(width));
  root.setAttribute("height", String(height));
  root.setAttribute("role", "img");
  root.dataset.mode = mode;
  return root;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function factorAttrs(factor: FactorPayload): Record<string, string> {
  return {
    "data-feature": factor.id,
    "data-color": factor.color,
    "data-percent": formatPercent(factor.percent),
    fill: COLOR_HEX[factor.color],
  };
}

function renderBarChart(view: ViewPayload): SVGSVGElement {
  const factors = rankedFactors(view);
  const rowHeight = 26;
  const labelWidth = 56;
  const barSpan = 250;
  const root = svgRoot(labelWidth + barSpan + 60, factors.length * rowHeight + 8, "BAR");
  factors.forEach((factor, row) => {
    const y = 4 + row * rowHeight;
    const width = (factor.percent / 100) * barSpan;
    root.appendChild(
      svgEl("text", {
        x: "0", y: String(y + 15), "font-size": "12", fill: "#333",
      }),
    ).textContent = factor.abbr;
    root.appendChild(
      svgEl("rect", {
        x: String(labelWidth), y: String(y), height: "16",
        width: String(width), ...factorAttrs(factor),
      }),
    );
    root.appendChild(
      svgEl("text", {
        x: String(labelWidth + width + 4), y: String(y + 13),
        "font-size": "11", fill: "#555",
      }),
    ).textContent = formatPercent(factor.percent);
  });
  return root;
}

function renderPieChart(view: ViewPayload): SVGSVGElement {
  const size = 220;
  const cx = size / 2;
  const cy = size / 2;
  const radius = 96;
  const root = svgRoot(size, size, "PIE");
  const slices = rankedFactors(view).filter((f) => f.percent > 0);

  if (slices.length === 1) {
    root.appendChild(
      svgEl("circle", {
        cx: String(cx), cy: String(cy), r: String(radius),
        ...factorAttrs(slices[0]),
      }),
    );
    return root;
  }

  let angle = -Math.PI / 2;
  for (const factor of slices) {
    const sweep = (factor.percent / 100) * 2 * Math.PI;
    const x1 = cx + radius * Math.cos(angle);
    const y1 = cy + radius * Math.sin(angle);
    angle += sweep;
    const x2 = cx + radius * Math.cos(angle);
    const y2 = cy + radius * Math.sin(angle);
    const largeArc = sweep > Math.PI ? 1 : 0;
    root.appendChild(
      svgEl("path", {
        d: `M ${cx} ${cy} L ${x1} ${y1} A ${radius} ${radius} 0 ${largeArc} 1 ${x2} ${y2} Z`,
        ...factorAttrs(factor),
      }),
    );
  }
  return root;
}

function renderDivergingChart(view: ViewPayload): SVGSVGElement {
  const factors = rankedFactors(view);
  const rowHeight = 26;
  const center = 190;
  const halfSpan = 130;
  const height = factors.length * rowHeight + 8;
  const root = svgRoot(center * 2, height, "DIVERGING");
  root.appendChild(
    svgEl("line", {
      x1: String(center), y1: "0", x2: String(center), y2: String(height),
      stroke: "#888", "stroke-width": "1",
    }),
  );
  factors.forEach((factor, row) => {
    const y = 4 + row * rowHeight;
    const width = (Math.abs(factor.signed_percent) / 100) * halfSpan;
    const negative = factor.signed_percent < 0;
    const x = negative ? center - width : center;
    root.appendChild(
      svgEl("rect", {
        x: String(x), y: String(y), height: "16", width: String(width),
        "data-side": negative ? "left" : "right",
        ...factorAttrs(factor),
      }),
    );
    root.appendChild(
      svgEl("text", {
        x: negative ? String(center - width - 4) : String(center + width + 4),
        y: String(y + 13), "font-size": "11",
        "text-anchor": negative ? "end" : "start", fill: "#555",
      }),
    ).textContent = `${factor.abbr} ${formatPercent(factor.percent)}`;
  });
  return root;
}

export function renderChart(view: ViewPayload, mode: ChartMode): SVGSVGElement {
  if (mode === "PIE") return renderPieChart(view);
  if (mode === "DIVERGING") return renderDivergingChart(view);
  return renderBarChart(view);
}

/** Ranked legend: abbreviation, one-decimal share, payload color swatch. */
export function renderLegend(view: ViewPayload): HTMLOListElement {
  const list = document.createElement("ol");
  list.className = "legend";
  for (const factor of rankedFactors(view)) {
    const item = document.createElement("li");
    item.dataset.feature = factor.id;
    item.dataset.rank = String(factor.rank);
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.dataset.color = factor.color;
    swatch.style.backgroundColor = COLOR_HEX[factor.color];
    const label = document.createElement("span");
    label.textContent = ` ${factor.abbr} ${formatPercent(factor.percent)}`;
    item.append(swatch, label);
    list.appendChild(item);
  }
  return list;
}
