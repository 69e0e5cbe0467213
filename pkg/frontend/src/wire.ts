/**
 * Wire format for tracking events: single-line JSON, UTF-8, fixed key order.
 *
 * The ingest service validates every record; the encoders here emit exactly
 * the byte layout its decoder produces when re-encoding, so client records
 * are indistinguishable from server-side ones.
 */

export const AOIS = [
  "result_list",
  "term_recommender",
  "facets",
  "metadata_view",
  "abstract",
  "references",
  "citations",
  "similar_entries",
] as const;
export type Aoi = (typeof AOIS)[number];

export const METADATA_FIELDS = [
  "title",
  "person",
  "source",
  "snippet",
  "category",
  "keywords",
  "none",
] as const;
export type MetadataField = (typeof METADATA_FIELDS)[number];

export interface TermFixation {
  stem: string;
  total_ms: number;
  first_ms: number;
  last_ms: number;
  first_aoi: Aoi;
  first_field: MetadataField;
}

export interface QueryEvent {
  session_id: string;
  ts_ms: number;
  raw_terms: string[];
  fixations: TermFixation[];
}

export interface DocumentClick {
  session_id: string;
  ts_ms: number;
  doc_id: string;
  title: string;
  keywords: string[];
}

// JSON.stringify keeps insertion order for string keys, which pins the
// wire key order; all numbers here are integers so there is no float
// formatting divergence to worry about
export function encodeQuery(e: QueryEvent): string {
  return JSON.stringify({
    type: "query",
    session_id: e.session_id,
    ts_ms: e.ts_ms,
    raw_terms: e.raw_terms,
    fixations: e.fixations.map((f) => ({
      stem: f.stem,
      total_ms: f.total_ms,
      first_ms: f.first_ms,
      last_ms: f.last_ms,
      first_aoi: f.first_aoi,
      first_field: f.first_field,
    })),
  });
}

export function encodeClick(e: DocumentClick): string {
  return JSON.stringify({
    type: "click",
    session_id: e.session_id,
    ts_ms: e.ts_ms,
    doc_id: e.doc_id,
    title: e.title,
    keywords: e.keywords,
  });
}
