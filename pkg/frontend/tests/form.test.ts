import { describe, expect, it } from "vitest";

import { buildForm, readForm, showEnvelope, showErrors, validateValues } from "../src/form.js";

function setField(form: HTMLFormElement, id: string, value: string) {
  const input = form.elements.namedItem(id) as HTMLInputElement;
  input.value = value;
}

describe("entry form", () => {
  it("accepts the defaults", () => {
    const form = buildForm();
    const { values, errors } = readForm(form);
    expect(errors).toEqual({});
    expect(values).not.toBeNull();
    expect(values!.bmi).toBeCloseTo(22.0);
  });

  it("mirrors server bounds before submission", () => {
    const form = buildForm();
    setField(form, "bmi", "500");
    const { values, errors } = readForm(form);
    expect(values).toBeNull();
    expect(errors.bmi).toContain("between 10 and 60");
  });

  it("requires every field", () => {
    const form = buildForm();
    setField(form, "age", "");
    const { values, errors } = readForm(form);
    expect(values).toBeNull();
    expect(errors.age).toBe("required");
  });

  it("restricts binary features to yes/no", () => {
    const { errors } = validateValues({
      age: "40", sex: "2", bmi: "22", fasting_glucose: "90",
      systolic_bp: "115", family_history: "0", physical_activity: "150",
      smoking: "0",
    });
    expect(errors.sex).toBe("must be yes or no");
  });

  it("renders field errors inline", () => {
    const form = buildForm();
    showErrors(form, { bmi: "must be between 10 and 60" });
    const span = form.querySelector('[data-error-for="bmi"]');
    expect(span?.textContent).toContain("between 10 and 60");
    showErrors(form, {});
    expect(span?.textContent).toBe("");
  });

  it("renders a server envelope at its field path", () => {
    const form = buildForm();
    showEnvelope(form, {
      message: "bmi must be within [10.0, 60.0], got 500.0",
      field_path: "record.bmi",
    });
    const span = form.querySelector('[data-error-for="bmi"]');
    expect(span?.textContent).toContain("must be within");
  });

  it("falls back to a form-level message for unknown paths", () => {
    const form = buildForm();
    showEnvelope(form, { message: "something went wrong", field_path: null });
    expect(form.querySelector('[data-role="form-error"]')?.textContent).toBe(
      "something went wrong",
    );
  });
});
