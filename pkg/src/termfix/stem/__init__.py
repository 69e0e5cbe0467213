"""Stemmer registry.

Stems are plain lowercase strings. Each stemmer is a pure function
str -> str and must be applied to already case-folded input.
"""

from __future__ import annotations

from typing import Callable

from . import english, german

__all__ = ["get_stemmer", "STEMMER_IDS"]

_STEMMERS: dict[str, Callable[[str], str]] = {
    "english": english.stem,
    "german": german.stem,
    "none": lambda w: w,
}

STEMMER_IDS = tuple(sorted(_STEMMERS))


def get_stemmer(stemmer_id: str) -> Callable[[str], str]:
    try:
        return _STEMMERS[stemmer_id]
    except KeyError:
        raise KeyError(
            f"unknown stemmer {stemmer_id!r}; available: {', '.join(STEMMER_IDS)}"
        ) from None
