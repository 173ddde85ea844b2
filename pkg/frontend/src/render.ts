// DOM rendering for the journey panel. Values are shown exactly as the
// service formatted them (display string, falling back to the decimal).

import type { FractionValue, JourneyReport } from "./api.js";

function shown(value: FractionValue): string {
  return value.display ?? value.decimal;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderMessage(panel: HTMLElement, text: string, kind: "info" | "error"): void {
  panel.replaceChildren();
  panel.appendChild(el(panel.ownerDocument, "p", `journey-message ${kind}`, text));
}

const REASON_LABELS: Record<string, string> = {
  holder_elected: "elected; surplus moved the ballot on",
  holder_excluded: "excluded; ballot moved on",
  count_ended: "counting ended",
  ballot_exhausted: "ballot exhausted",
};

export function renderJourney(panel: HTMLElement, report: JourneyReport): void {
  const doc = panel.ownerDocument;
  panel.replaceChildren();

  if (report.outcome_changed) {
    const where = report.divergence_count === null ? "" : ` (counts diverge at ${report.divergence_count})`;
    panel.appendChild(
      el(doc, "p", "outcome-banner", `This single ballot changes the outcome${where}.`),
    );
  }

  const legs = el(doc, "ol", "legs");
  for (const leg of report.legs) {
    const item = el(doc, "li", "leg");
    item.appendChild(el(doc, "span", "leg-holder", leg.holder_name));
    item.appendChild(el(doc, "span", "leg-value", ` holds it at value ${shown(leg.value)}`));
    const span =
      leg.from_count === leg.to_count
        ? `count ${leg.from_count}`
        : `counts ${leg.from_count}–${leg.to_count}`;
    item.appendChild(el(doc, "span", "leg-span", ` through ${span}`));
    item.appendChild(el(doc, "span", "leg-reason", ` (${REASON_LABELS[leg.end_reason] ?? leg.end_reason})`));
    legs.appendChild(item);
  }
  panel.appendChild(legs);

  const table = el(doc, "table", "contributions");
  const head = el(doc, "tr");
  head.appendChild(el(doc, "th", undefined, "candidate"));
  head.appendChild(el(doc, "th", undefined, "tally contribution"));
  table.appendChild(head);
  for (const row of report.contributions) {
    const hasActivity = row.final_delta.num !== 0 || Object.keys(row.per_count_delta).length > 0;
    if (!hasActivity) continue;
    const negative = row.final_delta.num < 0;
    const tr = el(doc, "tr", negative ? "contribution negative" : "contribution");
    tr.appendChild(el(doc, "td", "contribution-name", row.name));
    tr.appendChild(el(doc, "td", "contribution-delta", shown(row.final_delta)));
    table.appendChild(tr);
  }
  panel.appendChild(table);
}
