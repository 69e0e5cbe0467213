"""Matching needles (search terms, title terms, keywords) against fixations.

A needle matches a fixation stem when the needle is a contiguous substring
of the stem (in-word inclusion, so "wissenschaft" finds fixations on German
compounds like "sozialwissenschaft"). Comparison happens on normalized
stems; the direction is strictly needle-inside-fixation. Needles shorter
than MIN_NEEDLE_LEN after normalization are not searched at all.

Multi-token keywords count as found only when every surviving token matches
at least one fixation stem; a partially matched keyword contributes no hits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .events import Aoi, DocumentClick, MetadataField
from .sessions import Corpus, Session
from .textnorm import NormalizationConfig, apply_blacklist, normalize_text

__all__ = [
    "MIN_NEEDLE_LEN",
    "MatchKind",
    "MatchHit",
    "KindStats",
    "MatchReport",
    "DocMatchResult",
    "EmptyInput",
    "cleaned_fixation_stems",
    "title_needles",
    "keyword_needles",
    "match_search_terms",
    "match_document",
    "combined_report",
    "keyword_overlap",
    "found_source_distribution",
]

# needles shorter than this (after stemming) match too promiscuously
MIN_NEEDLE_LEN = 3


class EmptyInput(ValueError):
    pass


class MatchKind(Enum):
    SEARCH_TERM = "search_term"
    TITLE_TERM = "title_term"
    KEYWORD = "keyword"


@dataclass(frozen=True)
class MatchHit:
    """One needle found inside one fixation stem."""

    needle: str
    fixation_stem: str
    kind: MatchKind
    doc_id: str | None = None

    def __post_init__(self) -> None:
        if self.needle not in self.fixation_stem:
            raise ValueError(
                f"hit invariant: {self.needle!r} not inside {self.fixation_stem!r}"
            )


@dataclass(frozen=True)
class KindStats:
    """Distinct needles of one kind: how many searched, how many found."""

    searched: int
    found: int


@dataclass(frozen=True)
class MatchReport:
    """Found/other partition of a session's cleaned fixation stems."""

    session_id: str
    hits: tuple[MatchHit, ...]
    found: frozenset[str]
    other: frozenset[str]
    per_kind: Mapping[MatchKind, KindStats]


@dataclass(frozen=True)
class DocMatchResult:
    """Per-document coverage: how much of a clicked doc was fixated."""

    doc_id: str
    title_terms: int
    title_found: int
    keywords: int
    keywords_found: int


def cleaned_fixation_stems(session: Session, cfg: NormalizationConfig) -> list[str]:
    """Session fixation stems with interface-chrome terms removed."""
    return apply_blacklist(list(session.fixations.keys()), cfg)


def _find_stems(needle: str, stems: list[str], stem_set: set[str]) -> list[str]:
    """All fixation stems the needle occurs in. Equality fast path, then scan."""
    out = []
    exact = needle in stem_set
    for s in stems:
        if len(s) > len(needle):
            if needle in s:
                out.append(s)
        elif exact and s == needle:
            out.append(s)
    return out


def title_needles(click: DocumentClick, cfg: NormalizationConfig) -> list[str]:
    """Distinct normalized title terms of one document, eligible lengths only."""
    seen = []
    for stem in normalize_text(click.title, cfg, apply_len_filter=False):
        if len(stem) >= MIN_NEEDLE_LEN and stem not in seen:
            seen.append(stem)
    return seen


def keyword_needles(
    click: DocumentClick, cfg: NormalizationConfig
) -> list[tuple[str, ...]]:
    """Distinct normalized keywords as token tuples.

    Tokens that normalize away or end up shorter than MIN_NEEDLE_LEN are
    dropped; a keyword with no surviving tokens is skipped entirely.
    """
    seen: list[tuple[str, ...]] = []
    for raw in click.keywords:
        tokens = tuple(
            t
            for t in normalize_text(raw, cfg, apply_len_filter=False)
            if len(t) >= MIN_NEEDLE_LEN
        )
        if tokens and tokens not in seen:
            seen.append(tokens)
    return seen


def _search_needles(session: Session, cfg: NormalizationConfig) -> list[str]:
    return sorted(s for s in session.distinct_search_stems if len(s) >= MIN_NEEDLE_LEN)


def match_search_terms(session: Session, cfg: NormalizationConfig) -> MatchReport:
    """Match the session's distinct search stems against its fixations."""
    stems = cleaned_fixation_stems(session, cfg)
    stem_set = set(stems)
    hits: list[MatchHit] = []
    needles = _search_needles(session, cfg)
    found_needles = 0
    for needle in needles:
        matched = _find_stems(needle, stems, stem_set)
        if matched:
            found_needles += 1
        for m in matched:
            hits.append(MatchHit(needle=needle, fixation_stem=m, kind=MatchKind.SEARCH_TERM))
    found = frozenset(h.fixation_stem for h in hits)
    return MatchReport(
        session_id=session.session_id,
        hits=tuple(hits),
        found=found,
        other=frozenset(stem_set) - found,
        per_kind={MatchKind.SEARCH_TERM: KindStats(len(needles), found_needles)},
    )


def match_document(
    session: Session, click: DocumentClick, cfg: NormalizationConfig
) -> tuple[DocMatchResult, tuple[MatchHit, ...]]:
    """Match one clicked document's title terms and keywords."""
    stems = cleaned_fixation_stems(session, cfg)
    stem_set = set(stems)
    hits: list[MatchHit] = []

    titles = title_needles(click, cfg)
    title_found = 0
    for needle in titles:
        matched = _find_stems(needle, stems, stem_set)
        if matched:
            title_found += 1
        for m in matched:
            hits.append(
                MatchHit(needle=needle, fixation_stem=m, kind=MatchKind.TITLE_TERM, doc_id=click.doc_id)
            )

    keywords = keyword_needles(click, cfg)
    kw_found = 0
    for tokens in keywords:
        per_token = [_find_stems(t, stems, stem_set) for t in tokens]
        if all(per_token):  # every surviving token matched somewhere
            kw_found += 1
            for t, matched in zip(tokens, per_token):
                for m in matched:
                    hits.append(
                        MatchHit(needle=t, fixation_stem=m, kind=MatchKind.KEYWORD, doc_id=click.doc_id)
                    )

    result = DocMatchResult(
        doc_id=click.doc_id,
        title_terms=len(titles),
        title_found=title_found,
        keywords=len(keywords),
        keywords_found=kw_found,
    )
    return result, tuple(hits)


def combined_report(
    session: Session, cfg: NormalizationConfig
) -> tuple[MatchReport, tuple[DocMatchResult, ...]]:
    """Search terms plus all clicked documents, one found/other partition.

    per_kind counts distinct needles at session level: search stems, distinct
    title terms across clicks, distinct keyword token tuples across clicks.
    """
    stems = cleaned_fixation_stems(session, cfg)
    stem_set = set(stems)
    search = match_search_terms(session, cfg)
    hits = list(search.hits)
    doc_results = []
    for click in session.clicks:
        result, doc_hits = match_document(session, click, cfg)
        doc_results.append(result)
        hits.extend(doc_hits)

    title_all: list[str] = []
    kw_all: list[tuple[str, ...]] = []
    for click in session.clicks:
        for t in title_needles(click, cfg):
            if t not in title_all:
                title_all.append(t)
        for kw in keyword_needles(click, cfg):
            if kw not in kw_all:
                kw_all.append(kw)
    title_found = sum(1 for t in title_all if _find_stems(t, stems, stem_set))
    kw_found = sum(
        1
        for kw in kw_all
        if all(_find_stems(t, stems, stem_set) for t in kw)
    )

    found = frozenset(h.fixation_stem for h in hits)
    report = MatchReport(
        session_id=session.session_id,
        hits=tuple(hits),
        found=found,
        other=frozenset(stem_set) - found,
        per_kind={
            MatchKind.SEARCH_TERM: search.per_kind[MatchKind.SEARCH_TERM],
            MatchKind.TITLE_TERM: KindStats(len(title_all), title_found),
            MatchKind.KEYWORD: KindStats(len(kw_all), kw_found),
        },
    )
    return report, tuple(doc_results)


def keyword_overlap(
    session: Session, cfg: NormalizationConfig
) -> dict[tuple[str, ...], int]:
    """For each normalized keyword, the number of distinct clicked documents
    listing it. Repeat clicks on the same doc_id count once."""
    per_doc: dict[str, set[tuple[str, ...]]] = {}
    for click in session.clicks:
        bag = per_doc.setdefault(click.doc_id, set())
        bag.update(keyword_needles(click, cfg))
    counts: dict[tuple[str, ...], int] = {}
    for doc_id in sorted(per_doc):
        for kw in sorted(per_doc[doc_id]):
            counts[kw] = counts.get(kw, 0) + 1
    return counts


def found_source_distribution(
    pairs: Iterable[tuple[Session, MatchReport]],
) -> tuple[dict[Aoi, float], dict[MetadataField, float]]:
    """First-hover area/field fractions over all found fixation stems."""
    aoi_counts = {a: 0 for a in Aoi}
    field_counts = {f: 0 for f in MetadataField}
    total = 0
    for session, report in pairs:
        for stem in sorted(report.found):
            fx = session.fixations[stem]
            aoi_counts[fx.first_aoi] += 1
            field_counts[fx.first_field] += 1
            total += 1
    if total == 0:
        raise EmptyInput("no found fixations")
    return (
        {a: c / total for a, c in aoi_counts.items()},
        {f: c / total for f, c in field_counts.items()},
    )
