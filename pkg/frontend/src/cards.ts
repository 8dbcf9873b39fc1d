/**
 * Narrative card rendering, grouped into controllable (lifestyle) and
 * uncontrollable factors so actionable items stand out first.
 */

import { formatPercent, formatValue } from "./format.js";
import { COLOR_HEX } from "./charts.js";
import { FEATURE_BY_ID } from "./schema.js";
import type { CardPayload, NarrativeModeUsed, ViewPayload } from "./types.js";

function renderCard(card: CardPayload, view: ViewPayload): HTMLElement {
  const factor = view.factors.find((f) => f.id === card.feature_id);
  const def = FEATURE_BY_ID[card.feature_id];
  const article = document.createElement("article");
  article.className = "card";
  article.dataset.feature = card.feature_id;

  const header = document.createElement("header");
  const title = document.createElement("strong");
  title.textContent = def ? def.label : card.feature_id;
  const share = document.createElement("span");
  share.className = "share";
  share.dataset.role = "contribution";
  share.textContent = formatPercent(card.contribution_percent);
  if (factor) {
    share.style.color = COLOR_HEX[factor.color];
    share.dataset.color = factor.color;
  }
  header.append(title, " ", share);
  article.appendChild(header);

  for (const sentence of card.sentences) {
    const p = document.createElement("p");
    p.textContent = sentence;
    article.appendChild(p);
  }

  const footer = document.createElement("footer");
  const yours = document.createElement("span");
  yours.dataset.role = "user-value";
  yours.textContent = `Your value: ${formatValue(card.user_value, card.unit)}`;
  const ideal = document.createElement("span");
  ideal.dataset.role = "ideal-range";
  ideal.textContent = ` · Ideal: ${card.ideal_range}`;
  footer.append(yours, ideal);
  article.appendChild(footer);
  return article;
}

export function renderCards(
  cards: CardPayload[],
  view: ViewPayload,
  modeUsed: NarrativeModeUsed,
): HTMLElement {
  const container = document.createElement("div");
  container.className = "cards";

  if (modeUsed === "FALLBACK") {
    const badge = document.createElement("div");
    badge.className = "badge";
    badge.dataset.role = "fallback-badge";
    badge.textContent = "standard explanation";
    container.appendChild(badge);
  }

  const groups: Array<[string, (id: string) => boolean]> = [
    ["Controllable factors", (id) => FEATURE_BY_ID[id]?.controllable ?? false],
    ["Uncontrollable factors", (id) => !(FEATURE_BY_ID[id]?.controllable ?? false)],
  ];
  for (const [heading, belongs] of groups) {
    const members = cards.filter((c) => belongs(c.feature_id));
    if (!members.length) {
      continue;
    }
    const section = document.createElement("section");
    section.dataset.group = heading.startsWith("Controllable")
      ? "controllable"
      : "uncontrollable";
    const h3 = document.createElement("h3");
    h3.textContent = heading;
    section.appendChild(h3);
    for (const card of members) {
      section.appendChild(renderCard(card, view));
    }
    container.appendChild(section);
  }
  return container;
}
