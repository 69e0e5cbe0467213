"""Snowball stemmer for English (Porter2).

Implemented from the published algorithm description. R1/R2 are kept as
index positions into the word; every step only rewrites the tail, so the
region starts stay valid without recomputation.
"""

from __future__ import annotations

_VOWELS = "aeiouy"
# marked 'Y' counts as a consonant everywhere
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDING = "cdeghkmnrt"

_EXCEPTION1 = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}

# checked after step 1a, so plural/inflected forms fall through naturally
_EXCEPTION2 = frozenset(
    ["inning", "outing", "canning", "herring", "earring",
     "proceed", "exceed", "succeed"]
)

# longest-match tables; a longer suffix containing a shorter one must come first
_STEP2 = (
    ("ization", "ize"), ("ational", "ate"), ("fulness", "ful"),
    ("ousness", "ous"), ("iveness", "ive"),
    ("tional", "tion"), ("biliti", "ble"), ("lessli", "less"),
    ("entli", "ent"), ("ation", "ate"), ("alism", "al"), ("aliti", "al"),
    ("ousli", "ous"), ("iviti", "ive"), ("fulli", "ful"),
    ("enci", "ence"), ("anci", "ance"), ("abli", "able"), ("izer", "ize"),
    ("ator", "ate"), ("alli", "al"),
    ("bli", "ble"), ("ogi", None), ("li", None),
)

_STEP3 = (
    ("ational", "ate"), ("tional", "tion"), ("alize", "al"),
    ("icate", "ic"), ("iciti", "ic"), ("ative", None), ("ical", "ic"),
    ("ness", ""), ("ful", ""),
)

_STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment",
    "ant", "ent", "ism", "ate", "iti", "ous", "ive", "ize", "ion",
    "al", "er", "ic",
)


def _region_after(word: str, start: int) -> int:
    """Index after the first non-vowel following a vowel, at or past start."""
    for i in range(start + 1, len(word)):
        if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
            return i + 1
    return len(word)


def _mark_regions(word: str) -> tuple[int, int]:
    p1 = len(word)
    for prefix in ("gener", "commun", "arsen"):
        if word.startswith(prefix):
            p1 = len(prefix)
            break
    else:
        p1 = _region_after(word, 0)
    p2 = _region_after(word, p1)
    return p1, p2


def _ends_short_syllable(word: str) -> bool:
    if len(word) >= 3:
        c3, c2, c1 = word[-3], word[-2], word[-1]
        if c1 not in _VOWELS and c1 not in "wxY" and c2 in _VOWELS and c3 not in _VOWELS:
            return True
    if len(word) == 2 and word[0] in _VOWELS and word[1] not in _VOWELS:
        return True
    return False


def _is_short(word: str, p1: int) -> bool:
    return p1 >= len(word) and _ends_short_syllable(word)


def stem(word: str) -> str:
    word = word.lower().replace("’", "'").replace("‘", "'").replace("‛", "'")
    if word in _EXCEPTION1:
        return _EXCEPTION1[word]
    if len(word) <= 2:
        return word

    # prelude: strip one leading apostrophe, mark consonant y as Y
    if word.startswith("'"):
        word = word[1:]
    chars = list(word)
    if chars and chars[0] == "y":
        chars[0] = "Y"
    for i in range(1, len(chars)):
        if chars[i] == "y" and chars[i - 1] in _VOWELS:
            chars[i] = "Y"
    word = "".join(chars)

    p1, p2 = _mark_regions(word)

    # step 0
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            word = word[: -len(suffix)]
            break

    # step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith(("ied", "ies")):
        word = word[:-2] if len(word) > 4 else word[:-1]
    elif word.endswith(("us", "ss")):
        pass
    elif word.endswith("s"):
        if any(c in _VOWELS for c in word[:-2]):
            word = word[:-1]

    if word in _EXCEPTION2:
        return word

    # step 1b
    for suffix in ("eedly", "ingly", "edly", "eed", "ing", "ed"):
        if word.endswith(suffix):
            if suffix in ("eed", "eedly"):
                if len(word) - len(suffix) >= p1:
                    word = word[: -len(suffix)] + "ee"
            else:
                preceding = word[: -len(suffix)]
                if any(c in _VOWELS for c in preceding):
                    word = preceding
                    if word.endswith(("at", "bl", "iz")):
                        word += "e"
                    elif word.endswith(_DOUBLES):
                        word = word[:-1]
                    elif _is_short(word, p1):
                        word += "e"
            break

    # step 1c
    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _VOWELS:
        word = word[:-1] + "i"

    # step 2: longest suffix decides the branch; a failed condition ends the step
    for suffix, repl in _STEP2:
        if word.endswith(suffix):
            if len(word) - len(suffix) >= p1:
                if suffix == "ogi":
                    if len(word) >= 4 and word[-4] == "l":
                        word = word[:-1]
                elif suffix == "li":
                    if len(word) >= 3 and word[-3] in _LI_ENDING:
                        word = word[:-2]
                else:
                    word = word[: -len(suffix)] + repl
            break

    # step 3
    for suffix, repl in _STEP3:
        if word.endswith(suffix):
            if len(word) - len(suffix) >= p1:
                if suffix == "ative":
                    if len(word) - 5 >= p2:
                        word = word[:-5]
                else:
                    word = word[: -len(suffix)] + repl
            break

    # step 4
    for suffix in _STEP4:
        if word.endswith(suffix):
            if len(word) - len(suffix) >= p2:
                if suffix == "ion":
                    if len(word) >= 4 and word[-4] in "st":
                        word = word[:-3]
                else:
                    word = word[: -len(suffix)]
            break

    # step 5
    if word.endswith("e"):
        if len(word) - 1 >= p2:
            word = word[:-1]
        elif len(word) - 1 >= p1 and not _ends_short_syllable(word[:-1]):
            word = word[:-1]
    elif word.endswith("ll") and len(word) - 1 >= p2:
        word = word[:-1]

    return word.replace("Y", "y")
