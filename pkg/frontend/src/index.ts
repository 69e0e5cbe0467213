export {
  AOIS,
  METADATA_FIELDS,
  encodeClick,
  encodeQuery,
  type Aoi,
  type DocumentClick,
  type MetadataField,
  type QueryEvent,
  type TermFixation,
} from "./wire.js";
export {
  contextFromFixture,
  fold,
  getStemmer,
  normalizeTerm,
  normalizeText,
  tokenize,
  type LanguageProfile,
  type NormContext,
  type ParityFixture,
} from "./textnorm.js";
export { stemEnglish } from "./stem/english.js";
export { stemGerman } from "./stem/german.js";
export { FixationStore, INACTIVITY_TTL_MS, type StorageLike } from "./store.js";
export { OutboundQueue, fetchPoster, type PostFn, type PostResult } from "./queue.js";
export {
  DomHitTester,
  HoverTracker,
  wordAround,
  type AoiBinding,
  type HitTester,
  type WordHit,
} from "./hover.js";
export {
  Tracker,
  type DocumentClickInput,
  type TrackerConfig,
  type TrackerHooks,
} from "./tracker.js";
