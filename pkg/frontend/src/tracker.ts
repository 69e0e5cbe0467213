/**
 * Top-level tracker: wires the fixation store, the hover pipeline, and the
 * outbound queue to page events and exposes the three interaction hooks
 * (hover, query submit, document click).
 *
 * Everything runs on the page event loop; outbound delivery is async but
 * strictly ordered. Privacy handling is deliberately minimal: a one-time
 * console notice plus an opt-out flag that turns every hook into a no-op.
 */

import { DomHitTester, HoverTracker, type AoiBinding, type HitTester } from "./hover.js";
import { OutboundQueue, fetchPoster, type PostFn, type ScheduleFn } from "./queue.js";
import { FixationStore, type Clock, type StorageLike } from "./store.js";
import { type NormContext } from "./textnorm.js";
import { encodeClick, encodeQuery, type QueryEvent } from "./wire.js";

export interface TrackerProfileConfig {
  id: string;
  stemmer: string;
  stopwords: string[];
}

export interface TrackerConfig {
  serviceBaseUrl: string;
  aoiBindings: AoiBinding[];
  profiles: TrackerProfileConfig[];
  blacklist?: string[];
  minSearchTermLen?: number;
  minHoverMs?: number;
  optOut?: boolean;
  storageKey?: string;
}

export interface TrackerHooks {
  storage?: StorageLike;
  clock?: Clock;
  post?: PostFn;
  schedule?: ScheduleFn;
  hitTester?: HitTester;
  warn?: (message: string) => void;
  notice?: (message: string) => void;
}

export interface DocumentClickInput {
  docId: string;
  title?: string;
  keywords?: string[];
}

const PRIVACY_NOTICE =
  "hover tracking active: dwell times over result terms are collected for " +
  "this session to improve ranking; set optOut in the tracker config to disable";

function memoryStorage(): StorageLike {
  const m = new Map<string, string>();
  return {
    getItem: (k) => m.get(k) ?? null,
    setItem: (k, v) => void m.set(k, v),
    removeItem: (k) => void m.delete(k),
  };
}

export class Tracker {
  readonly store: FixationStore;
  readonly queue: OutboundQueue;
  private readonly hover: HoverTracker;
  private readonly hitTester: HitTester | null;
  private readonly clock: Clock;
  private readonly warn: (message: string) => void;
  private readonly optOut: boolean;
  private detach: (() => void) | null = null;

  constructor(config: TrackerConfig, norm: NormContext, hooks: TrackerHooks = {}) {
    this.optOut = config.optOut ?? false;
    this.clock = hooks.clock ?? Date.now;
    this.warn = hooks.warn ?? ((m) => console.warn(m));
    const storage =
      hooks.storage ??
      (typeof localStorage !== "undefined" ? localStorage : memoryStorage());
    this.store = new FixationStore({
      storage,
      clock: this.clock,
      ...(config.storageKey !== undefined ? { storageKey: config.storageKey } : {}),
    });
    const base = config.serviceBaseUrl.replace(/\/+$/, "");
    this.queue = new OutboundQueue({
      post: hooks.post ?? fetchPoster(`${base}/v1/events`),
      warn: this.warn,
      ...(hooks.schedule !== undefined ? { schedule: hooks.schedule } : {}),
    });
    this.hover = new HoverTracker({
      store: this.store,
      norm,
      ...(config.minHoverMs !== undefined ? { minHoverMs: config.minHoverMs } : {}),
    });
    this.hitTester = hooks.hitTester ?? null;
    if (!this.optOut) {
      (hooks.notice ?? ((m) => console.info(m)))(PRIVACY_NOTICE);
    }
  }

  /** Feed a pre-resolved hit (tests, custom hit-testers). */
  hoverHit(hit: ReturnType<HitTester["hitAt"]>, nowMs?: number): void {
    if (this.optOut) return;
    this.hover.update(hit, nowMs ?? this.clock());
  }

  /** Pointer left the tracked page area. */
  pointerLeave(nowMs?: number): void {
    if (this.optOut) return;
    this.hover.leave(nowMs ?? this.clock());
  }

  /**
   * A search was submitted. Emits one query record carrying the raw terms
   * and the cumulative fixation snapshot; an empty query emits nothing.
   */
  onQuerySubmit(rawQuery: string, nowMs?: number): void {
    if (this.optOut) return;
    const now = nowMs ?? this.clock();
    this.hover.leave(now); // close any open hover so its dwell ships too
    const rawTerms = rawQuery.split(/\s+/).filter((t) => t.length > 0);
    if (rawTerms.length === 0) {
      this.warn("empty query, no record emitted");
      return;
    }
    this.store.touch(now);
    const event: QueryEvent = {
      session_id: this.store.sessionId,
      ts_ms: this.store.relativeMs(now),
      raw_terms: rawTerms,
      fixations: this.store.snapshot(),
    };
    this.queue.enqueue(encodeQuery(event));
  }

  /** A result document was opened. */
  onDocumentClick(input: DocumentClickInput, nowMs?: number): void {
    if (this.optOut) return;
    const now = nowMs ?? this.clock();
    this.hover.leave(now);
    const docId = (input.docId ?? "").trim();
    if (docId === "") {
      this.warn("document click without doc id, no record emitted");
      return;
    }
    const title = input.title ?? "";
    const keywords = input.keywords ?? [];
    if (title === "" && keywords.length === 0) {
      // the service rejects clicks with no needle material at all
      this.warn(`document click on ${docId} has neither title nor keywords, skipped`);
      return;
    }
    this.store.touch(now);
    this.queue.enqueue(
      encodeClick({
        session_id: this.store.sessionId,
        ts_ms: this.store.relativeMs(now),
        doc_id: docId,
        title,
        keywords,
      }),
    );
  }

  /** Wire pointer events on a document; returns this for chaining. */
  attach(doc: Document, bindings: AoiBinding[]): this {
    if (this.optOut || this.detach !== null) return this;
    const tester = this.hitTester ?? new DomHitTester(doc, bindings);
    const onMove = (ev: PointerEvent | MouseEvent) => {
      this.hover.update(tester.hitAt(ev.clientX, ev.clientY), this.clock());
    };
    const onLeave = () => this.hover.leave(this.clock());
    doc.addEventListener("pointermove", onMove);
    doc.addEventListener("pointerleave", onLeave);
    this.detach = () => {
      doc.removeEventListener("pointermove", onMove);
      doc.removeEventListener("pointerleave", onLeave);
      this.detach = null;
    };
    return this;
  }

  /** Remove listeners installed by attach. */
  stop(): void {
    this.detach?.();
  }

  /** Resolves when the outbound queue has drained. */
  flush(): Promise<void> {
    return this.queue.onIdle();
  }
}
