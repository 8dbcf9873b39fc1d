/** Shared payload fixtures and a fetch router for app-level tests. */

import { vi } from "vitest";
import type {
  CardPayload,
  ExplainResponse,
  FactorPayload,
  SimulateResponse,
  ViewPayload,
} from "../src/types.js";
import { FEATURES, FEATURE_BY_ID } from "../src/schema.js";

/** Factors in canonical schema order; ranks deliberately differ from it. */
const FACTOR_DATA: Array<
  [string, string, number, number, FactorPayload["direction"], number]
> = [
  // id, abbr, percent, signed, direction, rank
  ["age", "AGE", 12, -12, "DECREASES", 4],
  ["sex", "SEX", 0, 0, "NEUTRAL", 8],
  ["bmi", "BMI", 17.04, 17.04, "INCREASES", 3],
  ["fasting_glucose", "GLU", 25, 25, "INCREASES", 2],
  ["systolic_bp", "BP", 8, 8, "INCREASES", 5],
  ["family_history", "FAM", 29.96, 29.96, "INCREASES", 1],
  ["physical_activity", "ACT", 5, -5, "DECREASES", 6],
  ["smoking", "SMK", 3, -3, "DECREASES", 7],
];

const COLOR_BY_DIRECTION = {
  INCREASES: "RED",
  DECREASES: "GREEN",
  NEUTRAL: "GRAY",
} as const;

export const VIEW: ViewPayload = {
  base_value: 0.1,
  margin: 0.8,
  factors: FACTOR_DATA.map(([id, abbr, percent, signed, direction, rank]) => ({
    id,
    abbr,
    shap: signed / 20,
    percent,
    signed_percent: signed,
    direction,
    color: COLOR_BY_DIRECTION[direction],
    rank,
  })),
};

export const RECORD: Record<string, number> = {
  age: 54, sex: 1, bmi: 24.7, fasting_glucose: 112,
  systolic_bp: 128, family_history: 1, physical_activity: 60, smoking: 0,
};

export const CARDS: CardPayload[] = VIEW.factors.map((factor) => ({
  feature_id: factor.id,
  contribution_percent: Math.round(factor.percent * 10) / 10,
  sentences: [
    `Sentence about ${factor.id} impact.`,
    `General context for ${factor.id}.`,
  ],
  user_value: RECORD[factor.id],
  unit: FEATURE_BY_ID[factor.id].unit,
  ideal_range: "n/a",
}));

export const EXPLAIN_RESPONSE: ExplainResponse = {
  estimate: { margin: 0.8, probability: 0.69, level: "HIGH" },
  view: VIEW,
  cards: CARDS,
  narrative_mode_used: "TEMPLATE",
};

/** After lowering bmi: bmi becomes neutral and risk drops. */
export const SIMULATED_VIEW: ViewPayload = {
  base_value: 0.1,
  margin: 0.3,
  factors: VIEW.factors.map((factor) => {
    if (factor.id === "bmi") {
      return {
        ...factor, percent: 0, signed_percent: 0,
        direction: "NEUTRAL" as const, color: "GRAY" as const, rank: 8,
      };
    }
    if (factor.id === "sex") {
      return { ...factor, rank: 7 };
    }
    const bump = factor.rank > 3 ? -1 : 0;
    return { ...factor, rank: factor.rank + bump };
  }),
};

export const SIMULATE_RESPONSE: SimulateResponse = {
  before: { margin: 0.8, probability: 0.69, level: "HIGH" },
  after: { margin: 0.3, probability: 0.574, level: "MEDIUM" },
  delta_probability: -0.116,
  after_view: SIMULATED_VIEW,
};

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface RouterLog {
  calls: Array<{ method: string; path: string; body: unknown }>;
}

/**
 * Install a fetch mock routed by pathname. Handlers get the parsed JSON
 * body (if any) and may return a Response or throw to emulate network loss.
 */
export function installFetchRouter(
  routes: Record<string, (body: unknown) => Response | Promise<Response>>,
): RouterLog {
  const log: RouterLog = { calls: [] };
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = new URL(String(input), "http://testhost");
      const method = init?.method ?? "GET";
      let body: unknown = null;
      if (init?.body) {
        body = JSON.parse(String(init.body));
      }
      log.calls.push({ method, path: url.pathname, body });
      const handler = routes[url.pathname];
      if (!handler) {
        return jsonResponse(
          { code: "not_found", message: "no route", field_path: null }, 404,
        );
      }
      return handler(body);
    }),
  );
  return log;
}

export function defaultFormValues(): Record<string, number> {
  return Object.fromEntries(FEATURES.map((f) => [f.id, f.defaultValue]));
}

export async function flush(times = 3): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
