import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { QueryScheduler } from "../src/scheduler.js";

interface Deferred {
  resolve: (v: string) => void;
  reject: (e: unknown) => void;
}

function makeHarness(debounceMs = 150) {
  const sent: number[] = [];
  const settled: Array<[number, string]> = [];
  const errors: Array<[number, unknown]> = [];
  const deferreds: Deferred[] = [];
  const scheduler = new QueryScheduler<number, string>(
    (req) => {
      sent.push(req);
      return new Promise<string>((resolve, reject) => {
        deferreds.push({ resolve, reject });
      });
    },
    (req, resp) => settled.push([req, resp]),
    (req, err) => errors.push([req, err]),
    debounceMs,
  );
  return { scheduler, sent, settled, errors, deferreds };
}

describe("latest-wins query scheduling", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces a slider drag into one request", () => {
    const h = makeHarness();
    for (let w = 2; w <= 30; w++) {
      h.scheduler.request(w);
      vi.advanceTimersByTime(40);
    }
    expect(h.sent).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(h.sent).toEqual([30]);
  });

  it("never has more than one request in flight", async () => {
    const h = makeHarness();
    h.scheduler.request(1);
    vi.advanceTimersByTime(150);
    expect(h.scheduler.inFlightCount()).toBe(1);

    // New requests while the first is on the wire: queued, not sent.
    h.scheduler.request(2);
    vi.advanceTimersByTime(150);
    h.scheduler.request(3);
    vi.advanceTimersByTime(150);
    expect(h.sent).toEqual([1]);
    expect(h.scheduler.inFlightCount()).toBe(1);

    // Settling the first sends only the newest pending request.
    h.deferreds[0].resolve("r1");
    await vi.waitFor(() => expect(h.sent).toEqual([1, 3]));
    expect(h.scheduler.inFlightCount()).toBe(1);
    h.deferreds[1].resolve("r3");
    await vi.waitFor(() => expect(h.settled).toEqual([[1, "r1"], [3, "r3"]]));
    expect(h.scheduler.inFlightCount()).toBe(0);
  });

  it("applies responses in request order", async () => {
    const h = makeHarness();
    h.scheduler.request(10);
    vi.advanceTimersByTime(150);
    h.scheduler.request(20);
    vi.advanceTimersByTime(150);
    h.deferreds[0].resolve("a");
    await vi.waitFor(() => expect(h.sent.length).toBe(2));
    h.deferreds[1].resolve("b");
    await vi.waitFor(() => expect(h.settled).toEqual([[10, "a"], [20, "b"]]));
  });

  it("keeps scheduling after an error", async () => {
    const h = makeHarness();
    h.scheduler.request(1);
    vi.advanceTimersByTime(150);
    h.deferreds[0].reject(new Error("boom"));
    await vi.waitFor(() => expect(h.errors.length).toBe(1));
    expect(h.scheduler.inFlightCount()).toBe(0);

    h.scheduler.request(2);
    vi.advanceTimersByTime(150);
    expect(h.sent).toEqual([1, 2]);
  });
});
