"""Synthetic session generator with planted ground truth.

Deterministic: one numpy PCG64 generator seeded from the config drives every
draw, so equal configs produce byte-identical event streams. The vocabulary
is built to interact exactly with in-word inclusion matching under the
default (German-primary) normalization:

- every word is 8 chars, strict consonant-vowel alternation, vowels from
  {a,i,o,u}, no 'q': such words are stem-invariant, stopword-free, and two
  distinct words can never contain one another;
- compound fixation surfaces are 'q'+3 consonants prepended to an interest
  stem, so the only vocabulary word occurring inside a compound is the
  embedded stem itself.

Interest terms dwell around interest_mean_ms, background terms around
background_mean_ms (normals clamped at 1 ms, rounded). Every interest stem
is routed into at least one needle slot (query term, title token, or
keyword; leftovers are appended to the last click's keywords), so the
found/other partition of a generated session equals the planted
interest/background split exactly. Keywords planted in k documents add
overlap_effect_ms_per_doc * (k-1) to their fixation's mean dwell.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from statistics import NormalDist

import numpy as np

from .events import (
    Aoi,
    DocumentClick,
    MetadataField,
    QueryEvent,
    SessionEvent,
    TermFixation,
    encode_event,
)
from .stem import german
from .textnorm import default_config

__all__ = [
    "SimConfig",
    "SessionTruth",
    "GroundTruth",
    "Expectations",
    "generate",
    "write_corpus",
    "load_truth",
    "analytic_expectations",
]

RNG_NAME = "pcg64"

_DEFAULT_AOI_MIX = (
    ("result_list", 0.58),
    ("metadata_view", 0.21),
    ("facets", 0.09),
    ("term_recommender", 0.06),
    ("abstract", 0.03),
    ("references", 0.01),
    ("citations", 0.01),
    ("similar_entries", 0.01),
)

_DEFAULT_FIELD_MIX = (
    ("title", 0.26),
    ("person", 0.24),
    ("snippet", 0.22),
    ("source", 0.08),
    ("keywords", 0.06),
    ("category", 0.02),
    ("none", 0.12),
)


@dataclass(frozen=True)
class SimConfig:
    seed: int = 7
    n_sessions: int = 1000
    vocab_size: int = 4000
    word_len: int = 8
    interest_terms_per_session: int = 10
    fixations_per_session_mean: float = 25.0
    queries_min: int = 1
    queries_max: int = 4
    terms_per_query_min: int = 1
    terms_per_query_max: int = 3
    clicks_min: int = 2
    clicks_max: int = 6
    keywords_per_doc: int = 5
    title_len: int = 5
    interest_mean_ms: float = 7060.0
    interest_sd_ms: float = 1000.0
    background_mean_ms: float = 4430.0
    background_sd_ms: float = 1000.0
    query_noise_share: float = 0.4
    keyword_noise_share: float = 0.3
    title_noise_share: float = 0.5
    compound_share: float = 0.15
    multi_token_keyword_share: float = 0.1
    overlap_effect_ms_per_doc: float = 0.0
    overlap_max_docs: int = 5
    aoi_mix: tuple[tuple[str, float], ...] = _DEFAULT_AOI_MIX
    field_mix: tuple[tuple[str, float], ...] = _DEFAULT_FIELD_MIX

    def __post_init__(self) -> None:
        if self.n_sessions < 1:
            raise ValueError("n_sessions must be >= 1")
        if self.interest_terms_per_session < 1:
            raise ValueError("interest_terms_per_session must be >= 1")
        if self.word_len < 4 or self.word_len % 2:
            raise ValueError("word_len must be even and >= 4")
        if not (0 < self.queries_min <= self.queries_max):
            raise ValueError("queries range invalid")
        if not (0 < self.terms_per_query_min <= self.terms_per_query_max):
            raise ValueError("terms_per_query range invalid")
        if not (0 <= self.clicks_min <= self.clicks_max):
            raise ValueError("clicks range invalid")
        for name in ("interest_sd_ms", "background_sd_ms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        for name in (
            "query_noise_share",
            "keyword_noise_share",
            "title_noise_share",
            "compound_share",
            "multi_token_keyword_share",
        ):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must be within [0, 1]")
        if self.overlap_max_docs < 2:
            raise ValueError("overlap_max_docs must be >= 2")
        for mix, enum in ((self.aoi_mix, Aoi), (self.field_mix, MetadataField)):
            values = {v.value for v in enum}
            total = 0.0
            for name, w in mix:
                if name not in values:
                    raise ValueError(f"unknown mix entry {name!r}")
                if w < 0:
                    raise ValueError(f"negative weight for {name!r}")
                total += w
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"mix weights must sum to 1, got {total}")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_sessions": self.n_sessions,
            "vocab_size": self.vocab_size,
            "word_len": self.word_len,
            "interest_terms_per_session": self.interest_terms_per_session,
            "fixations_per_session_mean": self.fixations_per_session_mean,
            "queries_min": self.queries_min,
            "queries_max": self.queries_max,
            "terms_per_query_min": self.terms_per_query_min,
            "terms_per_query_max": self.terms_per_query_max,
            "clicks_min": self.clicks_min,
            "clicks_max": self.clicks_max,
            "keywords_per_doc": self.keywords_per_doc,
            "title_len": self.title_len,
            "interest_mean_ms": self.interest_mean_ms,
            "interest_sd_ms": self.interest_sd_ms,
            "background_mean_ms": self.background_mean_ms,
            "background_sd_ms": self.background_sd_ms,
            "query_noise_share": self.query_noise_share,
            "keyword_noise_share": self.keyword_noise_share,
            "title_noise_share": self.title_noise_share,
            "compound_share": self.compound_share,
            "multi_token_keyword_share": self.multi_token_keyword_share,
            "overlap_effect_ms_per_doc": self.overlap_effect_ms_per_doc,
            "overlap_max_docs": self.overlap_max_docs,
            "aoi_mix": [list(p) for p in self.aoi_mix],
            "field_mix": [list(p) for p in self.field_mix],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SimConfig":
        kwargs = dict(raw)
        if "aoi_mix" in kwargs:
            kwargs["aoi_mix"] = tuple((str(n), float(w)) for n, w in kwargs["aoi_mix"])
        if "field_mix" in kwargs:
            kwargs["field_mix"] = tuple((str(n), float(w)) for n, w in kwargs["field_mix"])
        return cls(**kwargs)


@dataclass(frozen=True)
class SessionTruth:
    session_id: str
    interest_stems: tuple[str, ...]
    interest_fixation_stems: tuple[str, ...]
    hot_keywords: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class GroundTruth:
    config: SimConfig
    sessions: tuple[SessionTruth, ...]

    def fixation_truth(self) -> dict[str, tuple[str, ...]]:
        """Mapping session -> interest fixation stems (extraction target)."""
        return {s.session_id: s.interest_fixation_stems for s in self.sessions}


_CONSONANTS = "bcdfghjklmnprstvwxz"
_VOWELS = "aiou"


def _make_vocab(rng: np.random.Generator, cfg: SimConfig) -> list[str]:
    stop_union: set[str] = set()
    for profile in default_config().profiles:
        stop_union.update(profile.stopwords)
    words: list[str] = []
    seen: set[str] = set()
    while len(words) < cfg.vocab_size:
        chars = []
        for pos in range(cfg.word_len):
            pool = _CONSONANTS if pos % 2 == 0 else _VOWELS
            chars.append(pool[int(rng.integers(len(pool)))])
        w = "".join(chars)
        if w in seen or w in stop_union or german.stem(w) != w:
            continue
        seen.add(w)
        words.append(w)
    return words


@dataclass(frozen=True)
class _Pools:
    interest: list[str]
    background: list[str]
    query_noise: list[str]
    keyword_noise: list[str]
    title_filler: list[str]


def _split_pools(vocab: list[str]) -> _Pools:
    n = len(vocab)
    a = int(n * 0.375)
    b = int(n * 0.75)
    c = int(n * 0.85)
    d = int(n * 0.925)
    return _Pools(
        interest=vocab[:a],
        background=vocab[a:b],
        query_noise=vocab[b:c],
        keyword_noise=vocab[c:d],
        title_filler=vocab[d:],
    )


def _pick(rng: np.random.Generator, pool: list[str]) -> str:
    return pool[int(rng.integers(len(pool)))]


def _mix_sampler(mix: tuple[tuple[str, float], ...]):
    names = [n for n, _ in mix]
    weights = np.array([w for _, w in mix], dtype=float)
    weights = weights / weights.sum()
    cumulative = np.cumsum(weights)

    def sample(rng: np.random.Generator) -> str:
        u = rng.random()
        idx = int(np.searchsorted(cumulative, u, side="right"))
        return names[min(idx, len(names) - 1)]

    return sample


def _dwell(rng: np.random.Generator, mean: float, sd: float) -> int:
    return max(1, round(float(rng.normal(mean, sd))))


def generate(cfg: SimConfig) -> tuple[list[SessionEvent], GroundTruth]:
    """Generate the full event stream (globally ts-ordered) plus ground truth."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    vocab = _make_vocab(rng, cfg)
    pools = _split_pools(vocab)
    if len(pools.interest) < cfg.interest_terms_per_session:
        raise ValueError("vocab too small for interest_terms_per_session")
    sample_aoi = _mix_sampler(cfg.aoi_mix)
    sample_field = _mix_sampler(cfg.field_mix)

    stream: list[tuple[int, str, int, SessionEvent]] = []
    truths: list[SessionTruth] = []
    width = max(5, len(str(cfg.n_sessions)))

    for s_idx in range(cfg.n_sessions):
        sid = f"s{s_idx:0{width}d}"
        q = int(rng.integers(cfg.queries_min, cfg.queries_max + 1))
        c = int(rng.integers(cfg.clicks_min, cfg.clicks_max + 1))

        interest_idx = rng.choice(len(pools.interest), size=cfg.interest_terms_per_session, replace=False)
        interest = [pools.interest[int(i)] for i in interest_idx]
        bg_lambda = max(0.0, cfg.fixations_per_session_mean - cfg.interest_terms_per_session)
        bg_count = min(int(rng.poisson(bg_lambda)), len(pools.background))
        bg_idx = rng.choice(len(pools.background), size=bg_count, replace=False)
        background = [pools.background[int(i)] for i in bg_idx]

        # hot keywords: multiplicities 2..min(overlap_max_docs, clicks)
        k_max = min(cfg.overlap_max_docs, c)
        h = max(0, min(k_max - 1, cfg.interest_terms_per_session - 1))
        hot = [(interest[j], j + 2) for j in range(h)]  # stem -> doc multiplicity
        non_hot = interest[h:]

        # fixation surfaces: some non-hot interest stems become compounds
        hot_stems = {stem for stem, _ in hot}
        surface: dict[str, str] = {}
        for stem in interest:
            if stem in hot_stems:
                surface[stem] = stem
            elif rng.random() < cfg.compound_share:
                prefix = "q" + "".join(
                    _CONSONANTS[int(rng.integers(len(_CONSONANTS)))] for _ in range(3)
                )
                surface[stem] = prefix + stem
            else:
                surface[stem] = stem

        # dwell per fixation
        effect = cfg.overlap_effect_ms_per_doc
        dwell: dict[str, int] = {}
        for stem, mult in hot:
            dwell[surface[stem]] = _dwell(
                rng, cfg.interest_mean_ms + effect * (mult - 1), cfg.interest_sd_ms
            )
        for stem in non_hot:
            dwell[surface[stem]] = _dwell(rng, cfg.interest_mean_ms, cfg.interest_sd_ms)
        for stem in background:
            dwell[stem] = _dwell(rng, cfg.background_mean_ms, cfg.background_sd_ms)

        fixation_stems = [surface[s] for s in interest] + list(background)
        aoi_of = {s: sample_aoi(rng) for s in fixation_stems}
        field_of = {s: sample_field(rng) for s in fixation_stems}
        first_of = {s: int(rng.integers(0, 30_000)) for s in fixation_stems}
        appears_at = {s: int(rng.integers(0, q)) for s in fixation_stems}

        # needle slots; the coverage queue routes every non-hot interest stem
        # into at least one needle
        queue = list(non_hot)

        def next_interest() -> str:
            if queue:
                return queue.pop(0)
            pool = non_hot if non_hot else interest
            return pool[int(rng.integers(len(pool)))]

        query_terms: list[list[str]] = []
        for _ in range(q):
            t = int(rng.integers(cfg.terms_per_query_min, cfg.terms_per_query_max + 1))
            terms = []
            for _ in range(t):
                if rng.random() < cfg.query_noise_share:
                    terms.append(_pick(rng, pools.query_noise))
                else:
                    terms.append(next_interest())
            query_terms.append(terms)

        titles: list[str] = []
        doc_keywords: list[list[str]] = []
        for _ in range(c):
            words = []
            for _ in range(cfg.title_len):
                if rng.random() < cfg.title_noise_share:
                    words.append(_pick(rng, pools.title_filler))
                else:
                    words.append(next_interest())
            if rng.random() < 0.3:
                words.insert(int(rng.integers(len(words) + 1)), "und")
            titles.append(" ".join(words).capitalize())

            kws = []
            for _ in range(cfg.keywords_per_doc):
                if rng.random() < cfg.keyword_noise_share:
                    kws.append(_pick(rng, pools.keyword_noise))
                else:
                    first = next_interest()
                    if (
                        rng.random() < cfg.multi_token_keyword_share
                        and len(non_hot) >= 2
                    ):
                        kws.append(first + " " + next_interest())
                    else:
                        kws.append(first)
            doc_keywords.append(kws)

        for stem, mult in hot:
            for doc in rng.choice(c, size=mult, replace=False):
                doc_keywords[int(doc)].append(stem)

        if queue:  # any interest stems not yet routed into a needle
            if doc_keywords:
                doc_keywords[-1].extend(queue)
            else:
                query_terms[-1].extend(queue)
            queue.clear()

        # timeline: queries at 10k spacing, clicks offset so ts never collide
        query_ts = [10_000 * (i + 1) + int(rng.integers(0, 1_000)) for i in range(q)]
        click_ts = [15_000 + 8_000 * j + int(rng.integers(0, 1_000)) for j in range(c)]

        events: list[SessionEvent] = []
        for i in range(q):
            snapshot = []
            for s in fixation_stems:
                if appears_at[s] > i:
                    continue
                steps = q - appears_at[s]
                pos = i - appears_at[s] + 1
                running = dwell[s] if pos == steps else max(1, round(dwell[s] * pos / steps))
                snapshot.append(
                    TermFixation(
                        stem=s,
                        total_ms=running,
                        first_ms=first_of[s],
                        last_ms=first_of[s] + running,
                        first_aoi=Aoi(aoi_of[s]),
                        first_field=MetadataField(field_of[s]),
                    )
                )
            events.append(
                QueryEvent(
                    session_id=sid,
                    ts_ms=query_ts[i],
                    raw_terms=tuple(query_terms[i]),
                    fixations=tuple(snapshot),
                )
            )
        for j in range(c):
            events.append(
                DocumentClick(
                    session_id=sid,
                    ts_ms=click_ts[j],
                    doc_id=f"{sid}-d{j + 1}",
                    title=titles[j],
                    keywords=tuple(doc_keywords[j]),
                )
            )

        for seq, ev in enumerate(events):
            stream.append((ev.ts_ms, sid, seq, ev))

        truths.append(
            SessionTruth(
                session_id=sid,
                interest_stems=tuple(interest),
                interest_fixation_stems=tuple(surface[s] for s in interest),
                hot_keywords=tuple(hot),
            )
        )

    stream.sort(key=lambda item: (item[0], item[1], item[2]))
    ordered = [item[3] for item in stream]
    return ordered, GroundTruth(config=cfg, sessions=tuple(truths))


def write_corpus(cfg: SimConfig, out_dir: Path | str) -> tuple[Path, Path]:
    """Write events.jsonl (with an rng header comment) and truth.json."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    events, truth = generate(cfg)
    events_path = out_dir / "events.jsonl"
    truth_path = out_dir / "truth.json"
    with events_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# rng={RNG_NAME} seed={cfg.seed}\n")
        for ev in events:
            fh.write(encode_event(ev) + "\n")
    truth_obj = {
        "schema_version": 1,
        "rng": RNG_NAME,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "sessions": {
            t.session_id: {
                "interest_stems": list(t.interest_stems),
                "interest_fixation_stems": list(t.interest_fixation_stems),
                "hot_keywords": {stem: count for stem, count in t.hot_keywords},
            }
            for t in truth.sessions
        },
    }
    truth_path.write_text(
        json.dumps(truth_obj, ensure_ascii=False, separators=(",", ":")) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return events_path, truth_path


def load_truth(path: Path | str) -> dict:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("schema_version") != 1:
        raise ValueError(f"unsupported truth schema: {raw.get('schema_version')!r}")
    return raw


@dataclass(frozen=True)
class Expectations:
    """Closed-form anchors for the generated corpus."""

    found_mean_ms: float
    other_mean_ms: float
    pct_sessions_with_any_found: float
    query_slot_found_rate: float
    interest_miss_rate: float | None
    background_hit_rate: float | None


def analytic_expectations(
    cfg: SimConfig, threshold_ms: float | None = None
) -> Expectations:
    """Expected values implied by the config.

    found_mean_ms averages the hot-keyword overlap bonus over the click-count
    distribution; with overlap_effect_ms_per_doc == 0 it equals the interest
    mean. Coverage routing makes pct_sessions_with_any_found exactly 1.
    """
    n_click_values = list(range(cfg.clicks_min, cfg.clicks_max + 1))
    total_bonus = 0.0
    for c in n_click_values:
        k_max = min(cfg.overlap_max_docs, c)
        h = max(0, min(k_max - 1, cfg.interest_terms_per_session - 1))
        # multiplicities 2..h+1 add effect*(m-1) each
        total_bonus += cfg.overlap_effect_ms_per_doc * (h * (h + 1) / 2)
    mean_bonus_per_term = (
        total_bonus / len(n_click_values) / cfg.interest_terms_per_session
    )
    interest_miss = background_hit = None
    if threshold_ms is not None:
        interest_miss = NormalDist(cfg.interest_mean_ms, cfg.interest_sd_ms).cdf(threshold_ms)
        background_hit = 1.0 - NormalDist(cfg.background_mean_ms, cfg.background_sd_ms).cdf(threshold_ms)
    return Expectations(
        found_mean_ms=cfg.interest_mean_ms + mean_bonus_per_term,
        other_mean_ms=cfg.background_mean_ms,
        pct_sessions_with_any_found=1.0,
        query_slot_found_rate=1.0 - cfg.query_noise_share,
        interest_miss_rate=interest_miss,
        background_hit_rate=background_hit,
    )
