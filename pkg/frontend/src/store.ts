/**
 * Client-side fixation store: accumulated hover dwell per stem, persisted
 * in page key-value storage, cleared after 12 hours of inactivity.
 *
 * The 12 h rule is enforced lazily: on load and before each write. Clock
 * and storage are injected so tests can script time.
 */

import type { Aoi, MetadataField, TermFixation } from "./wire.js";

export const INACTIVITY_TTL_MS = 12 * 60 * 60 * 1000;

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export type Clock = () => number;

interface StoreState {
  v: 1;
  session_id: string;
  origin_ms: number;
  last_activity_ms: number;
  fixations: Record<
    string,
    { total_ms: number; first_ms: number; last_ms: number; first_aoi: Aoi; first_field: MetadataField }
  >;
}

function freshSessionId(now: number): string {
  return `w${now.toString(36)}${Math.floor(Math.random() * 36 ** 4).toString(36)}`;
}

export interface FixationStoreOptions {
  storage: StorageLike;
  clock?: Clock;
  storageKey?: string;
  ttlMs?: number;
  sessionIdFactory?: (nowMs: number) => string;
}

export class FixationStore {
  private readonly storage: StorageLike;
  private readonly clock: Clock;
  private readonly key: string;
  private readonly ttlMs: number;
  private readonly newSessionId: (nowMs: number) => string;
  private state: StoreState;

  constructor(opts: FixationStoreOptions) {
    this.storage = opts.storage;
    this.clock = opts.clock ?? Date.now;
    this.key = opts.storageKey ?? "termfix.fixations";
    this.ttlMs = opts.ttlMs ?? INACTIVITY_TTL_MS;
    this.newSessionId = opts.sessionIdFactory ?? freshSessionId;
    this.state = this.load();
  }

  private load(): StoreState {
    const now = this.clock();
    let raw: string | null = null;
    try {
      raw = this.storage.getItem(this.key);
    } catch {
      // unreadable storage behaves like an empty one
    }
    if (raw !== null) {
      try {
        const parsed = JSON.parse(raw) as StoreState;
        if (
          parsed &&
          parsed.v === 1 &&
          typeof parsed.session_id === "string" &&
          typeof parsed.last_activity_ms === "number" &&
          now - parsed.last_activity_ms <= this.ttlMs
        ) {
          return parsed;
        }
      } catch {
        // corrupt persisted state falls through to a fresh store
      }
    }
    return {
      v: 1,
      session_id: this.newSessionId(now),
      origin_ms: now,
      last_activity_ms: now,
      fixations: {},
    };
  }

  private expireIfStale(now: number): void {
    if (now - this.state.last_activity_ms > this.ttlMs) {
      this.state = {
        v: 1,
        session_id: this.newSessionId(now),
        origin_ms: now,
        last_activity_ms: now,
        fixations: {},
      };
    }
  }

  private persist(now: number): void {
    this.state.last_activity_ms = now;
    try {
      this.storage.setItem(this.key, JSON.stringify(this.state));
    } catch {
      // quota or privacy-mode failures lose persistence, not the session
    }
  }

  get sessionId(): string {
    return this.state.session_id;
  }

  /** Milliseconds since session origin, never negative, integer. */
  relativeMs(absoluteMs: number): number {
    return Math.max(0, Math.round(absoluteMs - this.state.origin_ms));
  }

  /**
   * Record one hover interval on a stem. startMs/endMs are absolute clock
   * values; dwell adds to the stem's running total, first-hover fields are
   * set once.
   */
  addDwell(stem: string, aoi: Aoi, field: MetadataField, startMs: number, endMs: number): void {
    const dwell = Math.round(endMs - startMs);
    if (dwell <= 0) return;
    this.expireIfStale(startMs);
    const first = this.relativeMs(startMs);
    const last = Math.max(this.relativeMs(endMs), first, 1);
    const entry = this.state.fixations[stem];
    if (entry === undefined) {
      this.state.fixations[stem] = {
        // clamps only matter under a backwards clock; normally total == dwell
        total_ms: Math.max(1, Math.min(dwell, last)),
        first_ms: first,
        last_ms: last,
        first_aoi: aoi,
        first_field: field,
      };
    } else {
      entry.total_ms += dwell;
      entry.last_ms = Math.max(entry.last_ms, last);
      if (entry.total_ms > entry.last_ms) entry.last_ms = entry.total_ms;
    }
    this.persist(endMs);
  }

  /** Touch activity without recording dwell (e.g. a query submit). */
  touch(nowMs: number): void {
    this.expireIfStale(nowMs);
    this.persist(nowMs);
  }

  /** Cumulative snapshot, ordered by first hover then stem. */
  snapshot(): TermFixation[] {
    return Object.entries(this.state.fixations)
      .map(([stem, f]) => ({ stem, ...f }))
      .sort((a, b) => a.first_ms - b.first_ms || (a.stem < b.stem ? -1 : a.stem > b.stem ? 1 : 0));
  }

  get size(): number {
    return Object.keys(this.state.fixations).length;
  }
}
