/**
 * Application shell: assess form -> results (chart + legend + cards) ->
 * what-if panel -> history, with offline detection on a 10-second health
 * poll. One explain/simulate request is in flight at any time; chart-mode
 * toggles re-render the stored payload and never refetch.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderCards } from "./cards.js";
import { CHART_MODES, renderChart, renderLegend, type ChartMode } from "./charts.js";
import { apiBase } from "./config.js";
import { formatProbability, formatSignedProbability } from "./format.js";
import { buildForm, readForm, showEnvelope, showErrors } from "./form.js";
import { renderTrend } from "./history.js";
import {
  DEFAULT_POLL_INTERVAL_MS,
  HealthPoller,
  renderOfflineBanner,
  setBannerVisible,
} from "./offline.js";
import { buildSimulationPanel, readOverrides, resetPanel } from "./simulate.js";
import { InFlightGuard, loadChartMode, saveChartMode } from "./state.js";
import type { ExplainResponse, SimulateResponse, ViewPayload } from "./types.js";

type Screen = "assess" | "results" | "simulate" | "history";

export interface AppHandles {
  root: HTMLElement;
  client: ApiClient;
  poller: HealthPoller;
  form: HTMLFormElement;
  show(screen: Screen): void;
}

export interface AppOptions {
  pollIntervalMs?: number;
  autostartPolling?: boolean;
}

function section(name: Screen): HTMLElement {
  const el = document.createElement("section");
  el.dataset.screen = name;
  el.hidden = name !== "assess";
  return el;
}

function estimateLine(label: string, probability: number, level: string): string {
  return `${label}: ${formatProbability(probability)} (${level})`;
}

export function createApp(
  root: HTMLElement,
  client: ApiClient,
  options: AppOptions = {},
): AppHandles {
  let lastRecord: Record<string, number> | null = null;
  let lastExplain: ExplainResponse | null = null;
  let lastSimulatedView: ViewPayload | null = null;
  let chartMode: ChartMode = loadChartMode();
  const guard = new InFlightGuard();

  root.innerHTML = "";
  const banner = renderOfflineBanner();
  root.appendChild(banner);

  const nav = document.createElement("nav");
  const screens: Record<Screen, HTMLElement> = {
    assess: section("assess"),
    results: section("results"),
    simulate: section("simulate"),
    history: section("history"),
  };
  const show = (name: Screen) => {
    for (const [key, el] of Object.entries(screens)) {
      el.hidden = key !== name;
    }
    if (name === "history") {
      void refreshHistory();
    }
  };
  for (const name of ["assess", "results", "simulate", "history"] as Screen[]) {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.tab = name;
    button.textContent = name[0].toUpperCase() + name.slice(1);
    button.addEventListener("click", () => show(name));
    nav.appendChild(button);
  }
  root.appendChild(nav);
  for (const el of Object.values(screens)) {
    root.appendChild(el);
  }

  // --- assess -------------------------------------------------------------
  const form = buildForm();
  const analyze = document.createElement("button");
  analyze.type = "submit";
  analyze.textContent = "Analyze my risk";
  const save = document.createElement("button");
  save.type = "button";
  save.dataset.role = "save-log";
  save.textContent = "Save to history";
  const assessStatus = document.createElement("p");
  assessStatus.dataset.role = "assess-status";
  form.append(analyze, save, assessStatus);
  screens.assess.appendChild(form);

  const handleNetworkFailure = () => {
    void poller.poll();
  };

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const { values, errors } = readForm(form);
    showErrors(form, errors);
    if (!values) {
      return;
    }
    void guard.run(async () => {
      try {
        const response = await client.explain(values);
        lastRecord = values;
        lastExplain = response;
        lastSimulatedView = null;
        renderResults(response);
        rebuildSimulatePanel();
        show("results");
      } catch (error) {
        if (error instanceof ApiError) {
          showEnvelope(form, error);
        } else {
          handleNetworkFailure();
        }
      }
    });
  });

  save.addEventListener("click", () => {
    const { values, errors } = readForm(form);
    showErrors(form, errors);
    if (!values) {
      return;
    }
    void guard.run(async () => {
      try {
        const ack = await client.putLog("NONDAILY", values);
        assessStatus.textContent =
          `Saved. ${estimateLine("Risk on " + ack.point.date, ack.point.probability, ack.point.level)}`;
      } catch (error) {
        if (error instanceof ApiError) {
          showEnvelope(form, error);
        } else {
          handleNetworkFailure();
        }
      }
    });
  });

  // --- results --------------------------------------------------------------
  const summary = document.createElement("p");
  summary.dataset.role = "estimate-summary";
  const toggle = document.createElement("div");
  toggle.dataset.role = "chart-toggle";
  for (const mode of CHART_MODES) {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.chartMode = mode;
    button.textContent = mode === "DIVERGING" ? "Diverging" : mode[0] + mode.slice(1).toLowerCase();
    button.addEventListener("click", () => {
      chartMode = mode;
      saveChartMode(mode);
      refreshCharts();
    });
    toggle.appendChild(button);
  }
  const chartHost = document.createElement("div");
  chartHost.dataset.role = "chart";
  const legendHost = document.createElement("div");
  legendHost.dataset.role = "legend";
  const cardsHost = document.createElement("div");
  cardsHost.dataset.role = "cards";
  screens.results.append(summary, toggle, chartHost, legendHost, cardsHost);

  const markActiveMode = () => {
    for (const button of toggle.querySelectorAll<HTMLButtonElement>("[data-chart-mode]")) {
      button.classList.toggle("active", button.dataset.chartMode === chartMode);
    }
  };

  function renderResults(response: ExplainResponse): void {
    summary.textContent = estimateLine(
      "Estimated risk", response.estimate.probability, response.estimate.level,
    );
    legendHost.innerHTML = "";
    legendHost.appendChild(renderLegend(response.view));
    cardsHost.innerHTML = "";
    cardsHost.appendChild(
      renderCards(response.cards, response.view, response.narrative_mode_used),
    );
    refreshCharts();
  }

  function refreshCharts(): void {
    markActiveMode();
    if (lastExplain) {
      chartHost.innerHTML = "";
      chartHost.appendChild(renderChart(lastExplain.view, chartMode));
    }
    if (lastSimulatedView) {
      simChartHost.innerHTML = "";
      simChartHost.appendChild(renderChart(lastSimulatedView, chartMode));
    }
  }

  // --- simulate -------------------------------------------------------------
  const simIntro = document.createElement("p");
  simIntro.textContent = "Adjust the factors you can change, then apply.";
  const simPanelHost = document.createElement("div");
  simPanelHost.dataset.role = "sim-panel";
  const apply = document.createElement("button");
  apply.type = "button";
  apply.dataset.role = "apply-simulation";
  apply.textContent = "Apply changes";
  const reset = document.createElement("button");
  reset.type = "button";
  reset.dataset.role = "reset-simulation";
  reset.textContent = "Reset";
  const simResult = document.createElement("p");
  simResult.dataset.role = "sim-result";
  const simChartHost = document.createElement("div");
  simChartHost.dataset.role = "sim-chart";
  screens.simulate.append(simIntro, simPanelHost, apply, reset, simResult, simChartHost);

  function rebuildSimulatePanel(): void {
    simPanelHost.innerHTML = "";
    simResult.textContent = "";
    simChartHost.innerHTML = "";
    if (lastRecord) {
      simPanelHost.appendChild(buildSimulationPanel(lastRecord));
    }
  }

  apply.addEventListener("click", () => {
    if (!lastRecord) {
      return;
    }
    const panel = simPanelHost.firstElementChild as HTMLElement | null;
    if (!panel) {
      return;
    }
    const overrides = readOverrides(panel, lastRecord);
    void guard.run(async () => {
      try {
        const response: SimulateResponse = await client.simulate(lastRecord!, overrides);
        simResult.textContent =
          `${estimateLine("Before", response.before.probability, response.before.level)} -> ` +
          `${estimateLine("after", response.after.probability, response.after.level)} ` +
          `(${formatSignedProbability(response.delta_probability)})`;
        lastSimulatedView = response.after_view;
        refreshCharts();
      } catch (error) {
        if (error instanceof ApiError) {
          simResult.textContent = `Rejected: ${error.message}`;
        } else {
          handleNetworkFailure();
        }
      }
    });
  });

  reset.addEventListener("click", () => {
    const panel = simPanelHost.firstElementChild as HTMLElement | null;
    if (panel && lastRecord) {
      resetPanel(panel, lastRecord);
      simResult.textContent = "";
      lastSimulatedView = null;
      simChartHost.innerHTML = "";
    }
  });

  // --- history ----------------------------------------------------------------
  const trendHost = document.createElement("div");
  trendHost.dataset.role = "trend-host";
  screens.history.appendChild(trendHost);

  async function refreshHistory(): Promise<void> {
    try {
      const points = await client.history(30);
      trendHost.innerHTML = "";
      trendHost.appendChild(renderTrend(points));
    } catch (error) {
      if (!(error instanceof ApiError)) {
        handleNetworkFailure();
      }
    }
  }

  // --- connectivity ------------------------------------------------------------
  const poller = new HealthPoller(
    () => client.health(),
    (online) => setBannerVisible(banner, !online),
    options.pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS,
  );
  if (options.autostartPolling ?? true) {
    poller.start();
  }

  return { root, client, poller, form, show };
}

export function boot(root: HTMLElement): AppHandles {
  return createApp(root, new ApiClient(apiBase()));
}
