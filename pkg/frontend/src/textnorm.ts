/**
 * Text normalization: tokenize, case-fold, stopword-filter, stem.
 *
 * This must behave identically to the server-side analysis normalizer; the
 * committed parity fixture (generated from the server implementation) is
 * run through these functions by the test suite. Any intentional change on
 * either side requires regenerating the fixture.
 */

import { stemEnglish } from "./stem/english.js";
import { stemGerman } from "./stem/german.js";

export type Stemmer = (word: string) => string;

const STEMMERS: Record<string, Stemmer> = {
  english: stemEnglish,
  german: stemGerman,
  none: (w) => w,
};

export function getStemmer(id: string): Stemmer {
  const fn = STEMMERS[id];
  if (!fn) throw new Error(`unknown stemmer: ${id}`);
  return fn;
}

export interface LanguageProfile {
  id: string;
  stemmer: string;
  stopwords: ReadonlySet<string>;
}

export interface NormContext {
  profiles: LanguageProfile[];
  minSearchTermLen: number;
  blacklist: ReadonlySet<string>;
}

// mirrors the server's [^\W_]+ exactly: letters and numbers, no marks, no
// underscore (verified against the reference tokenizer on combining marks
// and No-category digits)
const TOKEN_RE = /[\p{L}\p{N}]+/gu;

export function tokenize(text: string): string[] {
  return text.match(TOKEN_RE) ?? [];
}

export function fold(token: string): string {
  return token.toLowerCase().normalize("NFC");
}

function codePointLen(s: string): number {
  let n = 0;
  for (const _ of s) n++;
  return n;
}

function isStopword(ctx: NormContext, folded: string): boolean {
  return ctx.profiles.some((p) => p.stopwords.has(folded));
}

/** Normalize one token to a stem, or null if it is filtered out. */
export function normalizeTerm(
  token: string,
  ctx: NormContext,
  applyLenFilter = true,
): string | null {
  const folded = fold(token);
  if (!folded) return null;
  if (isStopword(ctx, folded)) return null;
  if (applyLenFilter && codePointLen(folded) < ctx.minSearchTermLen) return null;
  const stemmer = getStemmer(ctx.profiles[0]!.stemmer);
  const stemmed = stemmer(folded);
  if (!stemmed) return null;
  if (applyLenFilter && codePointLen(stemmed) < ctx.minSearchTermLen) return null;
  if (isStopword(ctx, stemmed)) return null;
  return stemmed;
}

/** Normalize all tokens of a text. Order and duplicates kept. */
export function normalizeText(
  text: string,
  ctx: NormContext,
  applyLenFilter = true,
): string[] {
  const out: string[] = [];
  for (const token of tokenize(text)) {
    const stem = normalizeTerm(token, ctx, applyLenFilter);
    if (stem !== null) out.push(stem);
  }
  return out;
}

export interface ParityFixture {
  schema_version: number;
  min_search_term_len: number;
  profiles: Array<{ id: string; stemmer: string; stopwords: string[] }>;
  blacklist: string[];
  /** Expected outputs captured from the reference implementation. */
  normalize_cases?: Array<{
    text: string;
    with_len_filter: string[];
    without_len_filter: string[];
  }>;
  stem_cases?: Record<string, Array<[string, string]>>;
}

/** Build a normalization context from the shared parity fixture object. */
export function contextFromFixture(fixture: ParityFixture): NormContext {
  if (fixture.schema_version !== 1) {
    throw new Error(`unsupported fixture schema_version ${fixture.schema_version}`);
  }
  return {
    profiles: fixture.profiles.map((p) => ({
      id: p.id,
      stemmer: p.stemmer,
      stopwords: new Set(p.stopwords),
    })),
    minSearchTermLen: fixture.min_search_term_len,
    blacklist: new Set(fixture.blacklist),
  };
}
