"""Snowball stemmer for German.

Implemented from the published algorithm description. R1/R2 are index
positions; R1 is moved right so that at least 3 characters precede it.
"""

from __future__ import annotations

_VOWELS = "aeiouy\xe4\xf6\xfc"
_S_ENDING = "bdfghklmnrt"
_ST_ENDING = "bdfghklmnt"


def _region_after(word: str, start: int) -> int:
    for i in range(start + 1, len(word)):
        if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
            return i + 1
    return len(word)


def stem(word: str) -> str:
    word = word.lower().replace("\xdf", "ss")
    if len(word) <= 1:
        return word

    # u/y between vowels are consonantal; mark them uppercase for the steps
    chars = list(word)
    for i in range(1, len(chars) - 1):
        if chars[i] in "uy" and chars[i - 1] in _VOWELS and chars[i + 1] in _VOWELS:
            chars[i] = chars[i].upper()
    word = "".join(chars)

    p1_raw = _region_after(word, 0)
    p2 = _region_after(word, p1_raw)
    p1 = max(3, p1_raw)

    # step 1
    for suffix in ("ern", "em", "er", "en", "es", "e", "s"):
        if word.endswith(suffix):
            if suffix == "s":
                if len(word) - 1 >= p1 and len(word) >= 2 and word[-2] in _S_ENDING:
                    word = word[:-1]
            elif len(word) - len(suffix) >= p1:
                word = word[: -len(suffix)]
                if suffix in ("en", "es", "e") and word.endswith("niss"):
                    word = word[:-1]
            break

    # step 2
    for suffix in ("est", "en", "er", "st"):
        if word.endswith(suffix):
            if suffix == "st":
                if (
                    len(word) - 2 >= p1
                    and len(word) >= 6
                    and word[-3] in _ST_ENDING
                ):
                    word = word[:-2]
            elif len(word) - len(suffix) >= p1:
                word = word[: -len(suffix)]
            break

    # step 3 (d-suffixes, conditions on R2)
    for suffix in ("isch", "lich", "heit", "keit", "end", "ung", "ig", "ik"):
        if word.endswith(suffix):
            n = len(word) - len(suffix)
            if suffix in ("end", "ung"):
                if n >= p2:
                    word = word[:n]
                    if (
                        word.endswith("ig")
                        and len(word) - 2 >= p2
                        and not (len(word) >= 3 and word[-3] == "e")
                    ):
                        word = word[:-2]
            elif suffix in ("ig", "ik", "isch"):
                if n >= p2 and not (n >= 1 and word[n - 1] == "e"):
                    word = word[:n]
            elif suffix in ("lich", "heit"):
                if n >= p2:
                    word = word[:n]
                    if word.endswith(("er", "en")) and len(word) - 2 >= p1:
                        word = word[:-2]
            else:  # keit
                if n >= p2:
                    word = word[:n]
                    if word.endswith("lich") and len(word) - 4 >= p2:
                        word = word[:-4]
                    elif word.endswith("ig") and len(word) - 2 >= p2:
                        word = word[:-2]
            break

    table = str.maketrans({"U": "u", "Y": "y", "\xe4": "a", "\xf6": "o", "\xfc": "u"})
    return word.translate(table)
