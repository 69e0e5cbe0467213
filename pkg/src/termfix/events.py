"""Wire format for hover-dwell tracking events.

Events travel as single-line JSON (JSONL batches, UTF-8, LF). Two event
types exist: "query" carries the raw search terms plus a cumulative snapshot
of the session's term fixations; "click" records an opened document with its
title and keywords. Decoding tolerates unknown keys so the format can grow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator, Union

from .textnorm import fold

__all__ = [
    "Aoi",
    "MetadataField",
    "TermFixation",
    "QueryEvent",
    "DocumentClick",
    "SessionEvent",
    "EventDecodeError",
    "MalformedJson",
    "UnknownType",
    "InvariantViolation",
    "encode_event",
    "decode_event",
    "read_events_file",
]


class Aoi(Enum):
    """Interface areas a fixation can start in. Closed set."""

    RESULT_LIST = "result_list"
    TERM_RECOMMENDER = "term_recommender"
    FACETS = "facets"
    METADATA_VIEW = "metadata_view"
    ABSTRACT = "abstract"
    REFERENCES = "references"
    CITATIONS = "citations"
    SIMILAR_ENTRIES = "similar_entries"


class MetadataField(Enum):
    """Result-entry field a fixation started on; NONE outside result entries."""

    TITLE = "title"
    PERSON = "person"
    SOURCE = "source"
    SNIPPET = "snippet"
    CATEGORY = "category"
    KEYWORDS = "keywords"
    NONE = "none"


class EventDecodeError(ValueError):
    """Base class for wire-format rejects."""


class MalformedJson(EventDecodeError):
    pass


class UnknownType(EventDecodeError):
    pass


class InvariantViolation(EventDecodeError):
    """A field failed validation; .field names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _check_str(value, field: str, allow_space: bool = True) -> str:
    if not isinstance(value, str) or not value:
        raise InvariantViolation(field, "must be a nonempty string")
    if not allow_space and any(c.isspace() for c in value):
        raise InvariantViolation(field, "must not contain whitespace")
    return value


def _check_int(value, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvariantViolation(field, "must be an integer")
    if value < minimum:
        raise InvariantViolation(field, f"must be >= {minimum}")
    return value


@dataclass(frozen=True)
class TermFixation:
    """Accumulated hover dwell for one stem within a session.

    total_ms is the accumulated dwell, first_ms/last_ms the session-relative
    timestamps of the first and latest hover, first_aoi/first_field where the
    first hover happened. Weak bounds: 0 < total_ms <= last_ms and
    first_ms <= last_ms (dwell cannot precede its own onset).
    """

    stem: str
    total_ms: int
    first_ms: int
    last_ms: int
    first_aoi: Aoi
    first_field: MetadataField

    def __post_init__(self) -> None:
        _check_str(self.stem, "stem", allow_space=False)
        if self.stem != fold(self.stem):
            raise InvariantViolation("stem", "must be case-folded and NFC-normalized")
        _check_int(self.total_ms, "total_ms", minimum=1)
        _check_int(self.first_ms, "first_ms")
        _check_int(self.last_ms, "last_ms")
        if self.first_ms > self.last_ms:
            raise InvariantViolation("first_ms", "must be <= last_ms")
        if self.total_ms > self.last_ms:
            raise InvariantViolation("total_ms", "must be <= last_ms")
        if not isinstance(self.first_aoi, Aoi):
            raise InvariantViolation("first_aoi", "must be a known interface area")
        if not isinstance(self.first_field, MetadataField):
            raise InvariantViolation("first_field", "must be a known metadata field")


@dataclass(frozen=True)
class QueryEvent:
    """A submitted search with the cumulative fixation snapshot at that time."""

    session_id: str
    ts_ms: int
    raw_terms: tuple[str, ...]
    fixations: tuple[TermFixation, ...]

    def __post_init__(self) -> None:
        _check_str(self.session_id, "session_id", allow_space=False)
        _check_int(self.ts_ms, "ts_ms")
        if not self.raw_terms:
            raise InvariantViolation("raw_terms", "a submit carries at least one term")
        for t in self.raw_terms:
            _check_str(t, "raw_terms")
        stems = [f.stem for f in self.fixations]
        if len(stems) != len(set(stems)):
            raise InvariantViolation("fixations", "stems must be unique within an event")


@dataclass(frozen=True)
class DocumentClick:
    """An opened result document with its display title and keyword list."""

    session_id: str
    ts_ms: int
    doc_id: str
    title: str
    keywords: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_str(self.session_id, "session_id", allow_space=False)
        _check_int(self.ts_ms, "ts_ms")
        _check_str(self.doc_id, "doc_id", allow_space=False)
        if not isinstance(self.title, str):
            raise InvariantViolation("title", "must be a string")
        if not self.title and not self.keywords:
            raise InvariantViolation("title", "may be empty only if keywords nonempty")
        for kw in self.keywords:
            _check_str(kw, "keywords")


SessionEvent = Union[QueryEvent, DocumentClick]


def _fixation_dict(f: TermFixation) -> dict:
    return {
        "stem": f.stem,
        "total_ms": f.total_ms,
        "first_ms": f.first_ms,
        "last_ms": f.last_ms,
        "first_aoi": f.first_aoi.value,
        "first_field": f.first_field.value,
    }


def encode_event(event: SessionEvent) -> str:
    """Serialize to a single JSON line (no trailing newline), fixed key order."""
    if isinstance(event, QueryEvent):
        obj = {
            "type": "query",
            "session_id": event.session_id,
            "ts_ms": event.ts_ms,
            "raw_terms": list(event.raw_terms),
            "fixations": [_fixation_dict(f) for f in event.fixations],
        }
    elif isinstance(event, DocumentClick):
        obj = {
            "type": "click",
            "session_id": event.session_id,
            "ts_ms": event.ts_ms,
            "doc_id": event.doc_id,
            "title": event.title,
            "keywords": list(event.keywords),
        }
    else:
        raise TypeError(f"not a session event: {type(event).__name__}")
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _decode_fixation(obj, index: int) -> TermFixation:
    if not isinstance(obj, dict):
        raise InvariantViolation("fixations", f"entry {index} must be an object")
    try:
        aoi = Aoi(obj.get("first_aoi"))
    except ValueError:
        raise InvariantViolation("first_aoi", f"unknown area {obj.get('first_aoi')!r}") from None
    try:
        field = MetadataField(obj.get("first_field"))
    except ValueError:
        raise InvariantViolation(
            "first_field", f"unknown field {obj.get('first_field')!r}"
        ) from None
    return TermFixation(
        stem=obj.get("stem"),
        total_ms=obj.get("total_ms"),
        first_ms=obj.get("first_ms"),
        last_ms=obj.get("last_ms"),
        first_aoi=aoi,
        first_field=field,
    )


def _check_str_list(value, field: str) -> tuple[str, ...]:
    if not isinstance(value, list):
        raise InvariantViolation(field, "must be a list")
    return tuple(value)


def decode_event(line: str) -> SessionEvent:
    """Parse one JSON line into an event. Unknown keys are ignored."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise MalformedJson(str(e)) from None
    if not isinstance(obj, dict):
        raise MalformedJson("event must be a JSON object")
    etype = obj.get("type")
    if etype == "query":
        fixations_raw = obj.get("fixations")
        if not isinstance(fixations_raw, list):
            raise InvariantViolation("fixations", "must be a list")
        return QueryEvent(
            session_id=obj.get("session_id"),
            ts_ms=obj.get("ts_ms"),
            raw_terms=_check_str_list(obj.get("raw_terms"), "raw_terms"),
            fixations=tuple(
                _decode_fixation(f, i) for i, f in enumerate(fixations_raw)
            ),
        )
    if etype == "click":
        return DocumentClick(
            session_id=obj.get("session_id"),
            ts_ms=obj.get("ts_ms"),
            doc_id=obj.get("doc_id"),
            title=obj.get("title") if obj.get("title") is not None else "",
            keywords=_check_str_list(obj.get("keywords"), "keywords"),
        )
    raise UnknownType(f"unknown event type {etype!r}")


def read_events_file(path: Path | str) -> Iterator[SessionEvent]:
    """Stream events from a JSONL file, skipping blank and '#'-comment lines.

    Raises EventDecodeError with the file position prepended on a bad line.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                yield decode_event(line)
            except EventDecodeError as e:
                e.args = (f"{path}:{lineno}: {e}",)
                raise
