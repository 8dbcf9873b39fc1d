/**
 * Health-data entry form. Validation mirrors the server's schema bounds so
 * obviously bad values never leave the browser; the server's 422 envelopes
 * are still rendered inline should anything slip through.
 */

import { FEATURES, FEATURE_BY_ID } from "./schema.js";
import type { ErrorEnvelope } from "./types.js";

export type FieldErrors = Record<string, string>;

export function buildForm(initial?: Record<string, number>): HTMLFormElement {
  const form = document.createElement("form");
  form.className = "entry-form";
  form.noValidate = true;
  for (const def of FEATURES) {
    const row = document.createElement("div");
    row.className = "field";
    const label = document.createElement("label");
    label.htmlFor = `field-${def.id}`;
    label.textContent = def.unit ? `${def.label} (${def.unit})` : def.label;
    row.appendChild(label);

    let input: HTMLInputElement | HTMLSelectElement;
    if (def.kind === "binary") {
      input = document.createElement("select");
      for (const value of [0, 1]) {
        const option = document.createElement("option");
        option.value = String(value);
        option.textContent = value ? "yes" : "no";
        input.appendChild(option);
      }
    } else {
      input = document.createElement("input");
      input.type = "number";
      input.min = String(def.min);
      input.max = String(def.max);
      input.step = String(def.step);
    }
    input.id = `field-${def.id}`;
    input.name = def.id;
    input.value = String(initial?.[def.id] ?? def.defaultValue);
    row.appendChild(input);

    const error = document.createElement("span");
    error.className = "field-error";
    error.dataset.errorFor = def.id;
    row.appendChild(error);
    form.appendChild(row);
  }
  return form;
}

export function validateValues(raw: Record<string, string>): {
  values: Record<string, number>;
  errors: FieldErrors;
} {
  const values: Record<string, number> = {};
  const errors: FieldErrors = {};
  for (const def of FEATURES) {
    const text = raw[def.id];
    if (text === undefined || text.trim() === "") {
      errors[def.id] = "required";
      continue;
    }
    const value = Number(text);
    if (!Number.isFinite(value)) {
      errors[def.id] = "must be a number";
      continue;
    }
    if (def.kind === "binary") {
      if (value !== 0 && value !== 1) {
        errors[def.id] = "must be yes or no";
        continue;
      }
    } else if (value < def.min || value > def.max) {
      errors[def.id] = `must be between ${def.min} and ${def.max}`;
      continue;
    }
    values[def.id] = value;
  }
  return { values, errors };
}

export function readForm(form: HTMLFormElement): {
  values: Record<string, number> | null;
  errors: FieldErrors;
} {
  const raw: Record<string, string> = {};
  for (const def of FEATURES) {
    const input = form.elements.namedItem(def.id) as
      | HTMLInputElement
      | HTMLSelectElement
      | null;
    raw[def.id] = input?.value ?? "";
  }
  const { values, errors } = validateValues(raw);
  return { values: Object.keys(errors).length ? null : values, errors };
}

export function showErrors(form: HTMLFormElement, errors: FieldErrors): void {
  for (const span of form.querySelectorAll<HTMLElement>("[data-error-for]")) {
    const field = span.dataset.errorFor ?? "";
    span.textContent = errors[field] ?? "";
  }
}

/** Render a server 422 envelope inline at its field path. */
export function showEnvelope(form: HTMLFormElement, envelope: {
  message: string;
  field_path?: string | null;
  fieldPath?: string | null;
}): void {
  const path = envelope.fieldPath ?? envelope.field_path ?? null;
  const field = path?.split(".").pop() ?? "";
  if (field && FEATURE_BY_ID[field]) {
    showErrors(form, { [field]: envelope.message });
  } else {
    showErrors(form, {});
    let banner = form.querySelector<HTMLElement>("[data-role=form-error]");
    if (!banner) {
      banner = document.createElement("div");
      banner.dataset.role = "form-error";
      banner.className = "form-error";
      form.prepend(banner);
    }
    banner.textContent = envelope.message;
  }
}

export type { ErrorEnvelope };
