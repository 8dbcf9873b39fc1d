/** Client-side state: persisted chart mode and the single-request guard. */

import type { ChartMode } from "./charts.js";

const CHART_MODE_KEY = "diarisk.chartMode";

export function loadChartMode(): ChartMode {
  try {
    const stored = localStorage.getItem(CHART_MODE_KEY);
    if (stored === "PIE" || stored === "DIVERGING" || stored === "BAR") {
      return stored;
    }
  } catch {
    // storage unavailable (private mode); fall through to default
  }
  return "BAR";
}

export function saveChartMode(mode: ChartMode): void {
  try {
    localStorage.setItem(CHART_MODE_KEY, mode);
  } catch {
    // best effort only
  }
}

/** At most one in-flight request; extra submissions are dropped. */
export class InFlightGuard {
  private busy = false;

  get isBusy(): boolean {
    return this.busy;
  }

  async run<T>(task: () => Promise<T>): Promise<T | null> {
    if (this.busy) {
      return null;
    }
    this.busy = true;
    try {
      return await task();
    } finally {
      this.busy = false;
    }
  }
}
