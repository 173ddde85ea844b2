// Ballot grid state: per-candidate ranks below the line, per-group ranks
// above it, and the diagnostics recomputed on every edit. Formality here is
// purely structural (the minimum comes from the service); no tally math.

import type { TraceBody } from "./api.js";

export interface ElectionShape {
  candidateCount: number;
  groupSizes: number[];
  minPreferences: number;
  /** candidate ids per group, in within-group order */
  groupMembers: number[][];
}

export type EntryMode = "empty" | "btl" | "atl" | "mixed";

export interface Diagnostics {
  mode: EntryMode;
  duplicateRanks: number[];
  gapRanks: number[];
  formal: boolean;
  /** shown in the journey panel when no trace can be requested */
  message: string | null;
  /** trace request payload; null unless the entry is formal */
  request: TraceBody | null;
}

function rankProblems(ranks: number[]): { duplicates: number[]; gaps: number[] } {
  const seen = new Map<number, number>();
  for (const rank of ranks) seen.set(rank, (seen.get(rank) ?? 0) + 1);
  const duplicates = [...seen.entries()].filter(([, n]) => n > 1).map(([r]) => r);
  const top = ranks.length === 0 ? 0 : Math.max(...ranks);
  const gaps: number[] = [];
  for (let rank = 1; rank <= top; rank++) {
    if (!seen.has(rank)) gaps.push(rank);
  }
  duplicates.sort((a, b) => a - b);
  return { duplicates, gaps };
}

export class BallotGrid {
  readonly ranks: (number | null)[];
  readonly atlRanks: (number | null)[];

  constructor(readonly shape: ElectionShape) {
    this.ranks = new Array(shape.candidateCount).fill(null);
    this.atlRanks = new Array(shape.groupSizes.length).fill(null);
  }

  setRank(candidate: number, rank: number | null): void {
    this.ranks[candidate] = rank;
  }

  setAtlRank(group: number, rank: number | null): void {
    this.atlRanks[group] = rank;
  }

  clear(): void {
    this.ranks.fill(null);
    this.atlRanks.fill(null);
  }

  get isEmpty(): boolean {
    return this.ranks.every((r) => r === null) && this.atlRanks.every((r) => r === null);
  }

  /** Fill below-the-line boxes 1..k in card order, replacing everything. */
  applyCard(prefs: number[]): void {
    this.clear();
    prefs.forEach((candidate, i) => {
      this.ranks[candidate] = i + 1;
    });
  }

  diagnostics(): Diagnostics {
    const btl = this.ranks
      .map((rank, candidate) => ({ rank, candidate }))
      .filter((e): e is { rank: number; candidate: number } => e.rank !== null);
    const atl = this.atlRanks
      .map((rank, group) => ({ rank, group }))
      .filter((e): e is { rank: number; group: number } => e.rank !== null);

    const minimum = this.shape.minPreferences;
    const informal = (
      mode: EntryMode,
      message: string,
      problems = { duplicates: [] as number[], gaps: [] as number[] },
    ): Diagnostics => ({
      mode,
      duplicateRanks: problems.duplicates,
      gapRanks: problems.gaps,
      formal: false,
      message,
      request: null,
    });

    if (btl.length > 0 && atl.length > 0) {
      return informal("mixed", "Rank either groups (above the line) or candidates (below), not both.");
    }
    if (btl.length === 0 && atl.length === 0) {
      return informal("empty", `Rank at least ${minimum} candidate${minimum === 1 ? "" : "s"} to trace a ballot.`);
    }

    if (btl.length > 0) {
      const problems = rankProblems(btl.map((e) => e.rank));
      if (problems.duplicates.length > 0) {
        return informal("btl", `Rank ${problems.duplicates[0]} is used more than once.`, problems);
      }
      if (problems.gaps.length > 0) {
        return informal("btl", `Ranks skip ${problems.gaps[0]}.`, problems);
      }
      if (btl.length < minimum) {
        return informal("btl", `Below minimum preferences: ranked ${btl.length}, need ${minimum}.`);
      }
      const prefs = btl.sort((a, b) => a.rank - b.rank).map((e) => e.candidate);
      return {
        mode: "btl",
        duplicateRanks: [],
        gapRanks: [],
        formal: true,
        message: null,
        request: { prefs },
      };
    }

    const problems = rankProblems(atl.map((e) => e.rank));
    if (problems.duplicates.length > 0) {
      return informal("atl", `Group rank ${problems.duplicates[0]} is used more than once.`, problems);
    }
    if (problems.gaps.length > 0) {
      return informal("atl", `Group ranks skip ${problems.gaps[0]}.`, problems);
    }
    const expansion = atl.reduce((total, e) => total + (this.shape.groupSizes[e.group] ?? 0), 0);
    if (expansion < minimum) {
      return informal("atl", `Below minimum preferences: ranked groups cover ${expansion}, need ${minimum}.`);
    }
    const marks: Record<string, number> = {};
    for (const entry of atl) marks[String(entry.group)] = entry.rank;
    return {
      mode: "atl",
      duplicateRanks: [],
      gapRanks: [],
      formal: true,
      message: null,
      request: { atl: marks },
    };
  }
}
