"""Session reconstruction from event streams.

Events are grouped by session_id and ordered by ts_ms (arrival order breaks
ties). Query events carry cumulative fixation snapshots, so the merged value
per stem is last-write-wins on the latest snapshot, while the first-hover
fields stay sticky on the earliest observation. Sessions without at least
one query event are not admitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .events import (
    Aoi,
    DocumentClick,
    MetadataField,
    QueryEvent,
    SessionEvent,
    TermFixation,
)
from .textnorm import NormalizationConfig, normalize_term

__all__ = [
    "Session",
    "Corpus",
    "EmptyCorpus",
    "build_sessions",
    "first_fixation_distribution",
]


class EmptyCorpus(ValueError):
    pass


@dataclass(frozen=True)
class Session:
    """One reconstructed search session."""

    session_id: str
    queries: tuple[QueryEvent, ...]
    clicks: tuple[DocumentClick, ...]
    fixations: Mapping[str, TermFixation]
    distinct_search_stems: frozenset[str]


@dataclass(frozen=True)
class Corpus:
    sessions: tuple[Session, ...]
    session_count: int
    search_count: int
    click_count: int

    def by_id(self, session_id: str) -> Session | None:
        for s in self.sessions:
            if s.session_id == session_id:
                return s
        return None


def _merge_fixations(queries: list[QueryEvent]) -> dict[str, TermFixation]:
    merged: dict[str, TermFixation] = {}
    for ev in queries:  # already ts-sorted; later events overwrite totals
        for fx in ev.fixations:
            prev = merged.get(fx.stem)
            if prev is None:
                merged[fx.stem] = fx
                continue
            if fx.first_ms < prev.first_ms:
                first_ms, first_aoi, first_field = fx.first_ms, fx.first_aoi, fx.first_field
            else:
                first_ms, first_aoi, first_field = prev.first_ms, prev.first_aoi, prev.first_field
            merged[fx.stem] = TermFixation(
                stem=fx.stem,
                total_ms=fx.total_ms,
                first_ms=first_ms,
                last_ms=fx.last_ms,
                first_aoi=first_aoi,
                first_field=first_field,
            )
    return merged


def build_sessions(
    events: Iterable[SessionEvent], cfg: NormalizationConfig
) -> Corpus:
    """Group, order, and merge events into admitted sessions.

    Session order follows first appearance in the stream; within a session,
    events sort by ts_ms with arrival order breaking ties (stable sort), so
    any ts-order-preserving permutation of the stream yields the same corpus.
    """
    grouped: dict[str, list[SessionEvent]] = {}
    order: list[str] = []
    for ev in events:
        if ev.session_id not in grouped:
            grouped[ev.session_id] = []
            order.append(ev.session_id)
        grouped[ev.session_id].append(ev)

    sessions: list[Session] = []
    search_count = 0
    click_count = 0
    for sid in order:
        evs = sorted(grouped[sid], key=lambda e: e.ts_ms)
        queries = [e for e in evs if isinstance(e, QueryEvent)]
        if not queries:
            continue  # click-only traffic is not a session
        clicks = [e for e in evs if isinstance(e, DocumentClick)]
        stems = set()
        for q in queries:
            for term in q.raw_terms:
                stem = normalize_term(term, cfg, apply_len_filter=True)
                if stem is not None:
                    stems.add(stem)
        sessions.append(
            Session(
                session_id=sid,
                queries=tuple(queries),
                clicks=tuple(clicks),
                fixations=_merge_fixations(queries),
                distinct_search_stems=frozenset(stems),
            )
        )
        search_count += len(queries)
        click_count += len(clicks)

    return Corpus(
        sessions=tuple(sessions),
        session_count=len(sessions),
        search_count=search_count,
        click_count=click_count,
    )


def first_fixation_distribution(
    corpus: Corpus,
) -> tuple[dict[Aoi, float], dict[MetadataField, float]]:
    """Fractions of first-hover areas and fields over all merged fixations."""
    aoi_counts = {a: 0 for a in Aoi}
    field_counts = {f: 0 for f in MetadataField}
    total = 0
    for s in corpus.sessions:
        for fx in s.fixations.values():
            aoi_counts[fx.first_aoi] += 1
            field_counts[fx.first_field] += 1
            total += 1
    if total == 0:
        raise EmptyCorpus("no fixations in corpus")
    return (
        {a: c / total for a, c in aoi_counts.items()},
        {f: c / total for f, c in field_counts.items()},
    )
