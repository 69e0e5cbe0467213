/** Fixation store: accumulation, first-hover stickiness, TTL, persistence. */

import { describe, expect, it } from "vitest";
import { FixationStore, INACTIVITY_TTL_MS, type StorageLike } from "../src/store.js";

function mem(): StorageLike & { map: Map<string, string> } {
  const map = new Map<string, string>();
  return {
    map,
    getItem: (k) => map.get(k) ?? null,
    setItem: (k, v) => void map.set(k, v),
    removeItem: (k) => void map.delete(k),
  };
}

function storeAt(t0: number, storage: StorageLike = mem()) {
  let now = t0;
  const store = new FixationStore({
    storage,
    clock: () => now,
    sessionIdFactory: (n) => `sess-${n}`,
  });
  return { store, tick: (ms: number) => (now += ms), at: (abs: number) => (now = abs) };
}

describe("dwell accumulation", () => {
  it("records a scripted 1000 ms hover within 100 ms", () => {
    const { store } = storeAt(10_000);
    store.addDwell("armut", "result_list", "title", 10_000, 11_000);
    const [fix] = store.snapshot();
    expect(fix!.stem).toBe("armut");
    expect(Math.abs(fix!.total_ms - 1000)).toBeLessThanOrEqual(100);
  });

  it("sums hovers on the same stem across areas, first fields stick", () => {
    const { store } = storeAt(0);
    store.addDwell("armut", "result_list", "title", 1_000, 2_200);
    store.addDwell("armut", "facets", "none", 5_000, 5_800);
    expect(store.size).toBe(1);
    const [fix] = store.snapshot();
    expect(fix!.total_ms).toBe(2_000);
    expect(fix!.first_aoi).toBe("result_list");
    expect(fix!.first_field).toBe("title");
    expect(fix!.first_ms).toBe(1_000);
    expect(fix!.last_ms).toBe(5_800);
  });

  it("ignores zero and negative dwell", () => {
    const { store } = storeAt(0);
    store.addDwell("armut", "facets", "none", 500, 500);
    store.addDwell("armut", "facets", "none", 500, 400);
    expect(store.size).toBe(0);
  });

  it("keeps entry timing consistent: total <= last, first <= last", () => {
    const { store } = storeAt(42_000);
    store.addDwell("a", "abstract", "none", 42_000, 42_150);
    store.addDwell("a", "abstract", "none", 42_200, 42_900);
    const [fix] = store.snapshot();
    expect(fix!.first_ms).toBeLessThanOrEqual(fix!.last_ms);
    expect(fix!.total_ms).toBeLessThanOrEqual(fix!.last_ms);
    expect(fix!.total_ms).toBeGreaterThanOrEqual(1);
  });

  it("orders the snapshot by first hover, then stem", () => {
    const { store } = storeAt(0);
    store.addDwell("zebra", "facets", "none", 100, 300);
    store.addDwell("ameise", "facets", "none", 500, 700);
    store.addDwell("biber", "facets", "none", 100, 250);
    expect(store.snapshot().map((f) => f.stem)).toEqual(["biber", "zebra", "ameise"]);
  });
});

describe("persistence", () => {
  it("survives a reload through storage", () => {
    const storage = mem();
    const a = storeAt(1_000, storage);
    a.store.addDwell("armut", "result_list", "title", 1_000, 2_000);
    const b = storeAt(60_000, storage);
    expect(b.store.sessionId).toBe(a.store.sessionId);
    expect(b.store.snapshot().map((f) => f.stem)).toEqual(["armut"]);
  });

  it("starts fresh on corrupt persisted state", () => {
    const storage = mem();
    storage.setItem("termfix.fixations", "{not json");
    const { store } = storeAt(5_000, storage);
    expect(store.size).toBe(0);
    expect(store.sessionId).toBe("sess-5000");
  });

  it("keeps working when storage writes throw", () => {
    const storage: StorageLike = {
      getItem: () => null,
      setItem: () => {
        throw new Error("quota");
      },
      removeItem: () => {},
    };
    const store = new FixationStore({ storage, clock: () => 0 });
    store.addDwell("armut", "facets", "none", 0, 500);
    expect(store.size).toBe(1);
  });
});

describe("12 h inactivity expiry", () => {
  it("clears the store and rotates the session id after the TTL", () => {
    const storage = mem();
    const a = storeAt(0, storage);
    a.store.addDwell("armut", "result_list", "title", 0, 1_000);
    const later = 1_000 + INACTIVITY_TTL_MS + 1;
    const b = storeAt(later, storage);
    expect(b.store.size).toBe(0);
    expect(b.store.sessionId).not.toBe(a.store.sessionId);
  });

  it("retains the store just inside the TTL", () => {
    const storage = mem();
    const a = storeAt(0, storage);
    a.store.addDwell("armut", "result_list", "title", 0, 1_000);
    const b = storeAt(1_000 + INACTIVITY_TTL_MS - 1, storage);
    expect(b.store.size).toBe(1);
    expect(b.store.sessionId).toBe(a.store.sessionId);
  });

  it("expires lazily on write, not only on load", () => {
    const { store, at } = storeAt(0);
    store.addDwell("armut", "result_list", "title", 0, 1_000);
    at(INACTIVITY_TTL_MS + 2_000);
    store.addDwell("bildung", "facets", "none", INACTIVITY_TTL_MS + 2_000, INACTIVITY_TTL_MS + 3_000);
    expect(store.snapshot().map((f) => f.stem)).toEqual(["bildung"]);
    expect(store.sessionId).toBe(`sess-${INACTIVITY_TTL_MS + 2_000}`);
  });
});
