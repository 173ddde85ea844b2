// Typed client for the trace service. The UI does no counting arithmetic:
// every value it shows comes from these response payloads.

export interface FractionValue {
  num: number;
  den: number;
  decimal: string;
  display?: string;
}

export interface ElectionSummary {
  id: string;
  name: string;
  year: number | null;
  region: string | null;
  vacancies: number;
  candidates: number;
}

export interface CandidateInfo {
  id: number;
  name: string;
  group: number | null;
  position_in_group: number | null;
}

export interface GroupInfo {
  id: number;
  name: string;
  candidates: number[];
}

export interface HtvCard {
  party: string;
  prefs: number[];
}

export interface ElectionDetail {
  id: string;
  name: string;
  year: number | null;
  region: string | null;
  vacancies: number;
  candidates: CandidateInfo[];
  groups: GroupInfo[];
  htv: HtvCard[];
  rules: { name: string; min_preferences: number };
}

export interface JourneyLeg {
  holder: number;
  holder_name: string;
  value: FractionValue;
  from_count: number;
  to_count: number;
  end_reason: string;
}

export interface ContributionRow {
  candidate: number;
  name: string;
  per_count_delta: Record<string, FractionValue>;
  final_delta: FractionValue;
}

export interface JourneyReport {
  election: string;
  rules: string;
  legs: JourneyLeg[];
  contributions: ContributionRow[];
  outcome_changed: boolean;
  divergence_count: number | null;
}

export type TraceBody =
  | { prefs: number[]; rules?: string }
  | { atl: Record<string, number>; rules?: string };

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (response.ok) return (await response.json()) as T;
  let code = "http_error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(code, message, response.status);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  elections(): Promise<ElectionSummary[]> {
    return fetch(`${this.base}/api/elections`).then((r) => asJson<ElectionSummary[]>(r));
  }

  election(id: string): Promise<ElectionDetail> {
    return fetch(`${this.base}/api/elections/${encodeURIComponent(id)}`).then((r) =>
      asJson<ElectionDetail>(r),
    );
  }

  trace(id: string, body: TraceBody): Promise<JourneyReport> {
    return fetch(`${this.base}/api/elections/${encodeURIComponent(id)}/trace`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => asJson<JourneyReport>(r));
  }
}
