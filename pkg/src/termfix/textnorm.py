"""Term normalization shared by every pipeline stage.

A term goes through: tokenize -> fold (NFC + casefold) -> stopword filter
-> length filter -> stem -> length filter -> stopword filter. Stopwords are
checked against the union of all configured language profiles; stemming uses
the first (primary) profile. The post-stem stopword check keeps stems that
collapse onto a stopword surface form (e.g. "anden" -> "and") out of the
analysis.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .stem import get_stemmer

logger = logging.getLogger(__name__)

__all__ = [
    "LanguageProfile",
    "NormalizationConfig",
    "tokenize",
    "fold",
    "normalize_term",
    "normalize_terms",
    "normalize_text",
    "apply_blacklist",
    "load_wordlist",
    "load_config",
    "default_config",
]

# unicode letters and digits; underscores and punctuation split tokens
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Split text into word tokens at punctuation, symbols, and whitespace."""
    return _TOKEN_RE.findall(text)


def fold(token: str) -> str:
    """Case-fold and NFC-normalize a token. Idempotent."""
    return unicodedata.normalize("NFC", token.lower())


@dataclass(frozen=True)
class LanguageProfile:
    """One language: its stopword list and the stemmer to apply."""

    id: str
    stopwords: frozenset[str]
    stemmer_id: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("profile id must be nonempty")
        if not self.stopwords:
            raise ValueError(f"profile {self.id!r}: stopword list must be nonempty")
        get_stemmer(self.stemmer_id)
        for w in self.stopwords:
            if w != fold(w):
                raise ValueError(
                    f"profile {self.id!r}: stopword {w!r} is not case-folded"
                )


@dataclass(frozen=True)
class NormalizationConfig:
    """Profiles plus the search-term length filter and the UI blacklist.

    Profile order matters: the first profile's stemmer is the one applied.
    Blacklist entries must be in normalized (folded, stemmed) form; they are
    compared against fixation stems.
    """

    profiles: tuple[LanguageProfile, ...]
    min_search_term_len: int = 3
    blacklist: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("at least one language profile required")
        if self.min_search_term_len < 1:
            raise ValueError("min_search_term_len must be >= 1")
        for entry in self.blacklist:
            if not entry or entry != fold(entry):
                raise ValueError(f"blacklist entry {entry!r} is not in folded form")

    @property
    def stemmer(self):
        return get_stemmer(self.profiles[0].stemmer_id)

    def is_stopword(self, folded: str) -> bool:
        return any(folded in p.stopwords for p in self.profiles)


def normalize_term(
    token: str, cfg: NormalizationConfig, apply_len_filter: bool = True
) -> str | None:
    """Normalize one token to a stem, or None if it is filtered out.

    With apply_len_filter the minimum length is enforced both on the folded
    token and on the resulting stem, so short stems of long words ("ads" ->
    "ad") are filtered like short inputs.
    """
    folded = fold(token)
    if not folded:
        return None
    if cfg.is_stopword(folded):
        return None
    if apply_len_filter and len(folded) < cfg.min_search_term_len:
        return None
    stemmed = cfg.stemmer(folded)
    if not stemmed:
        return None
    if apply_len_filter and len(stemmed) < cfg.min_search_term_len:
        return None
    if cfg.is_stopword(stemmed):
        return None
    return stemmed


def normalize_terms(
    tokens: list[str], cfg: NormalizationConfig, apply_len_filter: bool = True
) -> list[str]:
    """Normalize tokens, dropping filtered ones. Order and duplicates kept."""
    out = []
    for t in tokens:
        stem = normalize_term(t, cfg, apply_len_filter)
        if stem is not None:
            out.append(stem)
    return out


def normalize_text(
    text: str, cfg: NormalizationConfig, apply_len_filter: bool = True
) -> list[str]:
    return normalize_terms(tokenize(text), cfg, apply_len_filter)


def apply_blacklist(stems, cfg: NormalizationConfig) -> list[str]:
    """Drop interface-chrome stems. Order preserved."""
    return [s for s in stems if s not in cfg.blacklist]


def load_wordlist(path: Path | str) -> frozenset[str]:
    """Read a plain-text word list: one entry per line, UTF-8, '#' comments.

    Entries must already be case-folded; anything else is a config error.
    """
    path = Path(path)
    words = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line != fold(line):
            raise ValueError(f"{path}:{lineno}: entry {line!r} is not case-folded")
        words.add(line)
    return frozenset(words)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("termfix").joinpath("data", name)))


_DEFAULT: NormalizationConfig | None = None


def default_config() -> NormalizationConfig:
    """Shipped defaults: German primary + English profile, UI blacklist."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = NormalizationConfig(
            profiles=(
                LanguageProfile(
                    id="de",
                    stopwords=load_wordlist(_data_path("stopwords_de.txt")),
                    stemmer_id="german",
                ),
                LanguageProfile(
                    id="en",
                    stopwords=load_wordlist(_data_path("stopwords_en.txt")),
                    stemmer_id="english",
                ),
            ),
            min_search_term_len=3,
            blacklist=load_wordlist(_data_path("ui_blacklist.txt")),
        )
    return _DEFAULT


def load_config(path: Path | str) -> NormalizationConfig:
    """Load a normalization config from JSON.

    Schema: {"min_search_term_len": int, "blacklist": "words.txt"?,
    "profiles": [{"id": str, "stemmer": str, "stopwords": "words.txt"}, ...]}.
    Word-list paths are resolved relative to the JSON file.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: invalid JSON: {e}") from e
    if not isinstance(raw, dict) or not isinstance(raw.get("profiles"), list):
        raise ValueError(f"{path}: expected an object with a 'profiles' list")
    base = path.parent
    profiles = []
    for p in raw["profiles"]:
        profiles.append(
            LanguageProfile(
                id=p["id"],
                stopwords=load_wordlist(base / p["stopwords"]),
                stemmer_id=p["stemmer"],
            )
        )
    blacklist: frozenset[str] = frozenset()
    if raw.get("blacklist"):
        blacklist = load_wordlist(base / raw["blacklist"])
    cfg = NormalizationConfig(
        profiles=tuple(profiles),
        min_search_term_len=int(raw.get("min_search_term_len", 3)),
        blacklist=blacklist,
    )
    logger.info("loaded normalization config from %s (%d profiles)", path, len(profiles))
    return cfg
