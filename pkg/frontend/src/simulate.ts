/**
 * What-if panel: sliders and toggles for controllable factors only.
 * Uncontrollable factors are listed read-only, so the panel structurally
 * cannot submit an override the server would reject.
 */

import { formatValue } from "./format.js";
import { CONTROLLABLE_FEATURES, UNCONTROLLABLE_FEATURES } from "./schema.js";

export function buildSimulationPanel(base: Record<string, number>): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "simulate-panel";

  const controls = document.createElement("section");
  controls.dataset.group = "controls";
  for (const def of CONTROLLABLE_FEATURES) {
    const row = document.createElement("div");
    row.className = "control";
    const label = document.createElement("label");
    label.htmlFor = `sim-${def.id}`;
    label.textContent = def.unit ? `${def.label} (${def.unit})` : def.label;
    row.appendChild(label);

    let input: HTMLInputElement;
    const current = base[def.id] ?? def.defaultValue;
    if (def.kind === "binary") {
      input = document.createElement("input");
      input.type = "checkbox";
      input.checked = current === 1;
    } else {
      input = document.createElement("input");
      input.type = "range";
      input.min = String(def.min);
      input.max = String(def.max);
      input.step = String(def.step);
      input.value = String(current);
    }
    input.id = `sim-${def.id}`;
    input.name = def.id;
    input.dataset.simControl = def.id;
    row.appendChild(input);

    const readout = document.createElement("output");
    readout.dataset.readoutFor = def.id;
    readout.textContent = def.kind === "binary"
      ? (current === 1 ? "yes" : "no")
      : formatValue(current, def.unit);
    input.addEventListener("input", () => {
      readout.textContent = def.kind === "binary"
        ? ((input as HTMLInputElement).checked ? "yes" : "no")
        : formatValue(Number(input.value), def.unit);
    });
    row.appendChild(readout);
    controls.appendChild(row);
  }
  panel.appendChild(controls);

  const fixed = document.createElement("section");
  fixed.dataset.group = "fixed";
  const note = document.createElement("p");
  note.textContent = "Not changeable:";
  fixed.appendChild(note);
  for (const def of UNCONTROLLABLE_FEATURES) {
    const row = document.createElement("div");
    row.dataset.fixedFeature = def.id;
    row.textContent = `${def.label}: ${formatValue(base[def.id] ?? 0, def.unit)}`;
    fixed.appendChild(row);
  }
  panel.appendChild(fixed);
  return panel;
}

/** Values differing from the base record; controllable features only. */
export function readOverrides(
  panel: HTMLElement,
  base: Record<string, number>,
): Record<string, number> {
  const overrides: Record<string, number> = {};
  for (const def of CONTROLLABLE_FEATURES) {
    const input = panel.querySelector<HTMLInputElement>(
      `[data-sim-control="${def.id}"]`,
    );
    if (!input) {
      continue;
    }
    const value = def.kind === "binary" ? (input.checked ? 1 : 0) : Number(input.value);
    if (value !== (base[def.id] ?? def.defaultValue)) {
      overrides[def.id] = value;
    }
  }
  return overrides;
}

export function resetPanel(panel: HTMLElement, base: Record<string, number>): void {
  for (const def of CONTROLLABLE_FEATURES) {
    const input = panel.querySelector<HTMLInputElement>(
      `[data-sim-control="${def.id}"]`,
    );
    if (!input) {
      continue;
    }
    const current = base[def.id] ?? def.defaultValue;
    if (def.kind === "binary") {
      input.checked = current === 1;
    } else {
      input.value = String(current);
    }
    input.dispatchEvent(new Event("input"));
  }
}
