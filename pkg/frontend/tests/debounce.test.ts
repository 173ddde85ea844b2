import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Debouncer } from "../src/debounce.js";
import { LatestOnly } from "../src/sequence.js";

describe("Debouncer", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a burst into one trailing call", () => {
    const d = new Debouncer(300);
    let calls = 0;
    for (let i = 0; i < 10; i++) d.schedule(() => calls++);
    vi.advanceTimersByTime(299);
    expect(calls).toBe(0);
    vi.advanceTimersByTime(1);
    expect(calls).toBe(1);
  });

  it("cancel drops the pending call", () => {
    const d = new Debouncer(300);
    let calls = 0;
    d.schedule(() => calls++);
    expect(d.pending).toBe(true);
    d.cancel();
    vi.advanceTimersByTime(1000);
    expect(calls).toBe(0);
    expect(d.pending).toBe(false);
  });

  it("separate bursts each fire", () => {
    const d = new Debouncer(100);
    let calls = 0;
    d.schedule(() => calls++);
    vi.advanceTimersByTime(100);
    d.schedule(() => calls++);
    vi.advanceTimersByTime(100);
    expect(calls).toBe(2);
  });
});

describe("LatestOnly", () => {
  it("accepts only the newest issued sequence", () => {
    const s = new LatestOnly();
    const first = s.next();
    const second = s.next();
    expect(s.isCurrent(first)).toBe(false); // superseded before it returned
    expect(s.isCurrent(second)).toBe(true);
    const third = s.next();
    expect(s.isCurrent(second)).toBe(false);
    expect(s.isCurrent(third)).toBe(true);
  });
});
