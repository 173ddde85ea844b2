// Deep-linkable ballot encoding: comma-separated per-candidate ranks
// (blank for unranked) in ?ranks=, or per-group ranks in ?atl=.

import { BallotGrid } from "./grid.js";

export function encodeRanks(ranks: readonly (number | null)[]): string {
  const parts = ranks.map((r) => (r === null ? "" : String(r)));
  while (parts.length > 0 && parts[parts.length - 1] === "") parts.pop();
  return parts.join(",");
}

export function decodeRanks(text: string, count: number): (number | null)[] {
  const out: (number | null)[] = new Array(count).fill(null);
  if (text === "") return out;
  text.split(",").forEach((part, i) => {
    if (i >= count) return;
    const rank = Number.parseInt(part, 10);
    if (Number.isFinite(rank) && rank >= 1) out[i] = rank;
  });
  return out;
}

export function gridToQuery(grid: BallotGrid): string {
  const params = new URLSearchParams();
  const btl = encodeRanks(grid.ranks);
  const atl = encodeRanks(grid.atlRanks);
  if (btl) params.set("ranks", btl);
  if (atl) params.set("atl", atl);
  return params.toString();
}

export function applyQuery(grid: BallotGrid, query: string): void {
  const params = new URLSearchParams(query);
  grid.clear();
  const btl = params.get("ranks");
  if (btl !== null) {
    decodeRanks(btl, grid.ranks.length).forEach((rank, candidate) => grid.setRank(candidate, rank));
  }
  const atl = params.get("atl");
  if (atl !== null) {
    decodeRanks(atl, grid.atlRanks.length).forEach((rank, group) => grid.setAtlRank(group, rank));
  }
}
