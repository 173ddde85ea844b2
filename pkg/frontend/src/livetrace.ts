// Glue between grid edits and the journey panel: debounce each edit burst,
// request at most the newest trace, drop stale responses, and never blank
// the grid on a service error.

import { ApiClient, ApiError } from "./api.js";
import { Debouncer } from "./debounce.js";
import type { Diagnostics } from "./grid.js";
import { renderJourney, renderMessage } from "./render.js";
import { LatestOnly } from "./sequence.js";

export class LiveTrace {
  readonly sequence = new LatestOnly();
  /** resolves after each settled render; tests await it */
  lastRequest: Promise<void> = Promise.resolve();

  constructor(
    readonly client: ApiClient,
    readonly electionId: string,
    readonly panel: HTMLElement,
    readonly debouncer: Debouncer = new Debouncer(300),
    readonly rules?: string,
  ) {}

  onGridChange(diagnostics: Diagnostics): void {
    if (diagnostics.request === null) {
      // informal entry: say why, and issue no request at all
      this.debouncer.cancel();
      this.sequence.next();
      renderMessage(this.panel, diagnostics.message ?? "Enter a ballot to trace it.", "info");
      return;
    }
    const body = this.rules ? { ...diagnostics.request, rules: this.rules } : diagnostics.request;
    this.debouncer.schedule(() => {
      this.lastRequest = this.fire(body);
    });
  }

  private async fire(body: Parameters<ApiClient["trace"]>[1]): Promise<void> {
    const seq = this.sequence.next();
    try {
      const report = await this.client.trace(this.electionId, body);
      if (this.sequence.isCurrent(seq)) renderJourney(this.panel, report);
    } catch (error) {
      if (!this.sequence.isCurrent(seq)) return;
      const text =
        error instanceof ApiError ? error.message : "The trace service is unreachable.";
      renderMessage(this.panel, text, "error");
    }
  }
}
