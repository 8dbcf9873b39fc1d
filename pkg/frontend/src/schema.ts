/**
 * The feature catalog, mirrored from the server so the form can validate
 * bounds before submission and the simulation panel knows which factors
 * are lifestyle-controllable. The server remains authoritative; anything
 * slipping through here is still rejected with a 422 envelope.
 */

export type FeatureKind = "continuous" | "binary";

export interface FeatureDef {
  id: string;
  label: string;
  abbreviation: string;
  kind: FeatureKind;
  unit: string;
  min: number;
  max: number;
  step: number;
  controllable: boolean;
  ideal?: [number, number];
  defaultValue: number;
}

export const FEATURES: FeatureDef[] = [
  {
    id: "age", label: "Age", abbreviation: "AGE", kind: "continuous",
    unit: "years", min: 18, max: 100, step: 1, controllable: false,
    defaultValue: 40,
  },
  {
    id: "sex", label: "Sex (0 female, 1 male)", abbreviation: "SEX",
    kind: "binary", unit: "", min: 0, max: 1, step: 1, controllable: false,
    defaultValue: 0,
  },
  {
    id: "bmi", label: "Body Mass Index", abbreviation: "BMI",
    kind: "continuous", unit: "kg/m²", min: 10, max: 60, step: 0.1,
    controllable: true, ideal: [18.5, 22.9], defaultValue: 22.0,
  },
  {
    id: "fasting_glucose", label: "Fasting Glucose", abbreviation: "GLU",
    kind: "continuous", unit: "mg/dL", min: 50, max: 300, step: 1,
    controllable: true, ideal: [70, 99], defaultValue: 90,
  },
  {
    id: "systolic_bp", label: "Systolic Blood Pressure", abbreviation: "BP",
    kind: "continuous", unit: "mmHg", min: 70, max: 220, step: 1,
    controllable: true, ideal: [90, 119], defaultValue: 115,
  },
  {
    id: "family_history", label: "Family History of Diabetes",
    abbreviation: "FAM", kind: "binary", unit: "", min: 0, max: 1, step: 1,
    controllable: false, defaultValue: 0,
  },
  {
    id: "physical_activity", label: "Physical Activity", abbreviation: "ACT",
    kind: "continuous", unit: "min/week", min: 0, max: 1000, step: 10,
    controllable: true, ideal: [150, 1000], defaultValue: 150,
  },
  {
    id: "smoking", label: "Smoking", abbreviation: "SMK", kind: "binary",
    unit: "", min: 0, max: 1, step: 1, controllable: true, ideal: [0, 0],
    defaultValue: 0,
  },
];

export const FEATURE_BY_ID: Record<string, FeatureDef> = Object.fromEntries(
  FEATURES.map((f) => [f.id, f]),
);

export const CONTROLLABLE_FEATURES = FEATURES.filter((f) => f.controllable);
export const UNCONTROLLABLE_FEATURES = FEATURES.filter((f) => !f.controllable);
