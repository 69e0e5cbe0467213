/**
 * Word-under-cursor detection and dwell accumulation.
 *
 * The hit-testing abstraction is injected: real pages use DomHitTester
 * (caret position under the pointer, expanded to word boundaries, mapped to
 * a bound AOI); tests script a fake. HoverTracker turns a stream of hits
 * into store updates, discarding hovers shorter than the transit threshold.
 */

import { FixationStore } from "./store.js";
import { normalizeTerm, type NormContext } from "./textnorm.js";
import type { Aoi, MetadataField } from "./wire.js";

export interface WordHit {
  word: string;
  aoi: Aoi;
  field: MetadataField;
}

export interface HitTester {
  hitAt(x: number, y: number): WordHit | null;
}

export const DEFAULT_MIN_HOVER_MS = 100;

export interface HoverTrackerOptions {
  store: FixationStore;
  norm: NormContext;
  minHoverMs?: number;
}

export class HoverTracker {
  private readonly store: FixationStore;
  private readonly norm: NormContext;
  private readonly minHoverMs: number;
  private current: { hit: WordHit; sinceMs: number } | null = null;

  constructor(opts: HoverTrackerOptions) {
    this.store = opts.store;
    this.norm = opts.norm;
    this.minHoverMs = opts.minHoverMs ?? DEFAULT_MIN_HOVER_MS;
  }

  /**
   * Feed the hit under the pointer at time nowMs (null when the pointer is
   * over nothing bound). A change of word, AOI, or field closes the open
   * hover; dwell below the transit threshold is discarded.
   */
  update(hit: WordHit | null, nowMs: number): void {
    const open = this.current;
    if (open !== null) {
      const same =
        hit !== null &&
        hit.word === open.hit.word &&
        hit.aoi === open.hit.aoi &&
        hit.field === open.hit.field;
      if (same) return;
      this.close(open, nowMs);
    }
    this.current = hit === null ? null : { hit, sinceMs: nowMs };
  }

  /** Pointer left the page (or tracking stopped). */
  leave(nowMs: number): void {
    this.update(null, nowMs);
  }

  private close(open: { hit: WordHit; sinceMs: number }, nowMs: number): void {
    const dwell = nowMs - open.sinceMs;
    if (dwell < this.minHoverMs) return; // transit noise
    const stem = normalizeTerm(open.hit.word, this.norm);
    if (stem === null) return; // stopword, too short, or empty
    if (this.norm.blacklist.has(stem)) return; // interface chrome
    this.store.addDwell(stem, open.hit.aoi, open.hit.field, open.sinceMs, nowMs);
  }
}

export interface AoiBinding {
  aoi: Aoi;
  /** CSS selector for the page region. */
  selector: string;
  /** CSS selectors for result-entry fields inside the region. */
  fieldSelectors?: Partial<Record<MetadataField, string>>;
}

const WORD_CHAR = /[\p{L}\p{N}]/u;

/** Expand a character offset in text to the word around it, or null. */
export function wordAround(text: string, offset: number): string | null {
  if (offset < 0 || offset >= text.length) return null;
  if (!WORD_CHAR.test(text[offset]!)) return null;
  let start = offset;
  while (start > 0 && WORD_CHAR.test(text[start - 1]!)) start--;
  let end = offset + 1;
  while (end < text.length && WORD_CHAR.test(text[end]!)) end++;
  return text.slice(start, end);
}

interface CaretPosition {
  offsetNode: Node;
  offset: number;
}

/**
 * Hit-testing against the live DOM. Needs caretPositionFromPoint or the
 * WebKit caretRangeFromPoint, so it only works in a real browser; tests and
 * non-browser hosts inject their own HitTester instead.
 */
export class DomHitTester implements HitTester {
  constructor(
    private readonly doc: Document,
    private readonly bindings: AoiBinding[],
  ) {}

  hitAt(x: number, y: number): WordHit | null {
    const caret = this.caretAt(x, y);
    if (caret === null || caret.offsetNode.nodeType !== Node.TEXT_NODE) return null;
    const text = caret.offsetNode.textContent ?? "";
    const word = wordAround(text, Math.min(caret.offset, text.length - 1));
    if (word === null) return null;
    const element = caret.offsetNode.parentElement;
    if (element === null) return null;
    for (const binding of this.bindings) {
      const region = element.closest(binding.selector);
      if (region === null) continue;
      let field: MetadataField = "none";
      for (const [name, selector] of Object.entries(binding.fieldSelectors ?? {})) {
        if (selector !== undefined && element.closest(selector) !== null) {
          field = name as MetadataField;
          break;
        }
      }
      return { word, aoi: binding.aoi, field };
    }
    return null; // outside every bound AOI: never recorded
  }

  private caretAt(x: number, y: number): CaretPosition | null {
    const doc = this.doc as Document & {
      caretPositionFromPoint?: (x: number, y: number) => CaretPosition | null;
      caretRangeFromPoint?: (x: number, y: number) => Range | null;
    };
    if (typeof doc.caretPositionFromPoint === "function") {
      return doc.caretPositionFromPoint(x, y);
    }
    if (typeof doc.caretRangeFromPoint === "function") {
      const range = doc.caretRangeFromPoint(x, y);
      if (range !== null) {
        return { offsetNode: range.startContainer, offset: range.startOffset };
      }
    }
    return null;
  }
}
