// App bootstrap: election picker, grouped ballot grid, How-to-Vote
// pre-fill, live journey panel, and deep-linkable ballot URLs.

import { ApiClient, type ElectionDetail } from "./api.js";
import { BallotGrid } from "./grid.js";
import { LiveTrace } from "./livetrace.js";
import { renderMessage } from "./render.js";
import { applyQuery, gridToQuery } from "./url.js";

function parseRank(text: string): number | null {
  const rank = Number.parseInt(text.trim(), 10);
  return Number.isFinite(rank) && rank >= 1 ? rank : null;
}

export function buildBallotScreen(
  root: HTMLElement,
  detail: ElectionDetail,
  client: ApiClient,
  initialQuery = "",
): { grid: BallotGrid; trace: LiveTrace } {
  const doc = root.ownerDocument;
  root.replaceChildren();

  const grid = new BallotGrid({
    candidateCount: detail.candidates.length,
    groupSizes: detail.groups.map((g) => g.candidates.length),
    groupMembers: detail.groups.map((g) => g.candidates),
    minPreferences: detail.rules.min_preferences,
  });

  const heading = doc.createElement("header");
  const title = doc.createElement("h1");
  title.textContent = detail.name;
  const subtitle = doc.createElement("p");
  subtitle.className = "subtitle";
  subtitle.textContent = `${detail.vacancies} vacancies · formality minimum ${detail.rules.min_preferences}`;
  heading.append(title, subtitle);
  root.appendChild(heading);

  // How to Vote cards, collapsed by default like the cards box on a flyer
  if (detail.htv.length > 0) {
    const cards = doc.createElement("details");
    cards.className = "htv";
    const summary = doc.createElement("summary");
    summary.textContent = "Party How to Vote recommendations";
    cards.appendChild(summary);
    for (const card of detail.htv) {
      const button = doc.createElement("button");
      button.type = "button";
      button.className = "htv-card";
      button.textContent = `Fill in the ${card.party} card`;
      button.addEventListener("click", () => {
        if (!grid.isEmpty && !doc.defaultView!.confirm("Replace your current ballot with this card?")) {
          return;
        }
        grid.applyCard(card.prefs);
        refreshInputs();
        onEdit();
      });
      cards.appendChild(button);
    }
    root.appendChild(cards);
  }

  const status = doc.createElement("p");
  status.className = "formality";
  root.appendChild(status);

  // the ballot itself: one column per group, plus one for ungrouped candidates
  const paper = doc.createElement("div");
  paper.className = "ballot";
  const atlInputs: HTMLInputElement[] = [];
  const btlInputs: HTMLInputElement[] = [];

  const columns: { label: string; group: number | null; members: number[] }[] = detail.groups.map(
    (group) => ({ label: group.name, group: group.id, members: group.candidates }),
  );
  const ungrouped = detail.candidates.filter((c) => c.group === null).map((c) => c.id);
  if (ungrouped.length > 0) columns.push({ label: "Ungrouped", group: null, members: ungrouped });

  for (const column of columns) {
    const section = doc.createElement("section");
    section.className = "group";
    const name = doc.createElement("h2");
    name.textContent = column.label;
    section.appendChild(name);

    if (column.group !== null) {
      const atlLabel = doc.createElement("label");
      atlLabel.className = "atl";
      atlLabel.textContent = "group rank ";
      const atlBox = doc.createElement("input");
      atlBox.type = "text";
      atlBox.inputMode = "numeric";
      atlBox.dataset.group = String(column.group);
      atlBox.addEventListener("input", () => {
        grid.setAtlRank(column.group!, parseRank(atlBox.value));
        onEdit();
      });
      atlInputs.push(atlBox);
      atlLabel.appendChild(atlBox);
      section.appendChild(atlLabel);
    }

    for (const candidateId of column.members) {
      const candidate = detail.candidates[candidateId]!;
      const row = doc.createElement("label");
      row.className = "candidate";
      const box = doc.createElement("input");
      box.type = "text";
      box.inputMode = "numeric";
      box.dataset.candidate = String(candidate.id);
      box.addEventListener("input", () => {
        grid.setRank(candidate.id, parseRank(box.value));
        onEdit();
      });
      btlInputs.push(box);
      row.appendChild(box);
      row.appendChild(doc.createTextNode(` ${candidate.name}`));
      section.appendChild(row);
    }
    paper.appendChild(section);
  }
  root.appendChild(paper);

  const panel = doc.createElement("section");
  panel.className = "journey";
  root.appendChild(panel);

  const trace = new LiveTrace(client, detail.id, panel);

  function refreshInputs(): void {
    for (const box of btlInputs) {
      const rank = grid.ranks[Number(box.dataset.candidate)];
      box.value = rank == null ? "" : String(rank);
    }
    for (const box of atlInputs) {
      const rank = grid.atlRanks[Number(box.dataset.group)];
      box.value = rank == null ? "" : String(rank);
    }
  }

  function onEdit(): void {
    const diagnostics = grid.diagnostics();
    status.textContent = diagnostics.formal
      ? "Formal ballot."
      : diagnostics.message ?? "Informal ballot.";
    status.className = diagnostics.formal ? "formality formal" : "formality informal";
    const query = gridToQuery(grid);
    const view = doc.defaultView;
    if (view && view.history && typeof view.history.replaceState === "function") {
      view.history.replaceState(null, "", query ? `?${query}` : view.location.pathname);
    }
    trace.onGridChange(diagnostics);
  }

  if (initialQuery) {
    applyQuery(grid, initialQuery);
    refreshInputs();
  }
  onEdit();
  return { grid, trace };
}

export async function boot(root: HTMLElement, client = new ApiClient()): Promise<void> {
  const doc = root.ownerDocument;
  const view = doc.defaultView!;
  try {
    const elections = await client.elections();
    if (elections.length === 0) {
      renderMessage(root, "The store has no elections.", "error");
      return;
    }
    const params = new URLSearchParams(view.location.search);
    const wanted = params.get("election") ?? elections[0]!.id;

    const picker = doc.createElement("select");
    picker.className = "election-picker";
    for (const summary of elections) {
      const option = doc.createElement("option");
      option.value = summary.id;
      option.textContent = summary.year
        ? `${summary.name} (${summary.year}${summary.region ? " " + summary.region : ""})`
        : summary.name;
      option.selected = summary.id === wanted;
      picker.appendChild(option);
    }
    picker.addEventListener("change", () => {
      view.location.search = `?election=${encodeURIComponent(picker.value)}`;
    });

    const detail = await client.election(wanted);
    const shell = doc.createElement("div");
    root.replaceChildren(picker, shell);
    buildBallotScreen(shell, detail, client, view.location.search);
  } catch (error) {
    renderMessage(root, error instanceof Error ? error.message : String(error), "error");
  }
}

declare global {
  interface Window {
    __stvtraceBooted?: boolean;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" && !window.__stvtraceBooted) {
  const root = document.getElementById("app");
  if (root) {
    window.__stvtraceBooted = true;
    void boot(root);
  }
}
