/** Wire contracts mirrored from the service's published response schemas. */

export type Direction = "INCREASES" | "DECREASES" | "NEUTRAL";
export type FactorColor = "RED" | "GREEN" | "GRAY";
export type RiskLevelName = "LOW" | "MEDIUM" | "HIGH";
export type NarrativeModeUsed = "TEMPLATE" | "LLM" | "FALLBACK";

export interface FactorPayload {
  id: string;
  abbr: string;
  shap: number;
  percent: number;
  signed_percent: number;
  direction: Direction;
  color: FactorColor;
  rank: number;
}

export interface ViewPayload {
  base_value: number;
  margin: number;
  factors: FactorPayload[];
}

export interface EstimatePayload {
  margin: number;
  probability: number;
  level: RiskLevelName;
}

export interface CardPayload {
  feature_id: string;
  contribution_percent: number;
  sentences: string[];
  user_value: number;
  unit: string;
  ideal_range: string;
}

export interface ExplainResponse {
  estimate: EstimatePayload;
  view: ViewPayload;
  cards: CardPayload[];
  narrative_mode_used: NarrativeModeUsed;
}

export interface SimulateResponse {
  before: EstimatePayload;
  after: EstimatePayload;
  delta_probability: number;
  after_view: ViewPayload;
}

export interface HistoryPoint {
  date: string;
  probability: number;
  level: RiskLevelName;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  field_path: string | null;
}
