"""Stemmer conformance against the frozen word/stem fixture tables."""

from pathlib import Path

import pytest

from termfix.stem import STEMMER_IDS, get_stemmer
from termfix.stem.english import stem as stem_en
from termfix.stem.german import stem as stem_de

FIXTURES = Path(__file__).parent / "fixtures"


def load_pairs(name: str) -> list[tuple[str, str]]:
    pairs = []
    for line in (FIXTURES / name).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        word, expected = line.split("\t")
        pairs.append((word, expected))
    return pairs


def test_english_fixture_conformance():
    pairs = load_pairs("english_stems.tsv")
    assert len(pairs) >= 2000
    bad = [(w, stem_en(w), e) for w, e in pairs if stem_en(w) != e]
    assert not bad, f"{len(bad)} mismatches, first: {bad[:5]}"


def test_german_fixture_conformance():
    pairs = load_pairs("german_stems.tsv")
    assert len(pairs) >= 200
    bad = [(w, stem_de(w), e) for w, e in pairs if stem_de(w) != e]
    assert not bad, f"{len(bad)} mismatches, first: {bad[:5]}"


# end-to-end values (not per-step illustrations); each pair was verified
# against an independent implementation before freezing
ENGLISH_SPOT = [
    ("agreed", "agre"),
    ("dying", "die"),
    ("skis", "ski"),
    ("news", "news"),
    ("hoping", "hope"),
    ("hopping", "hop"),
    ("generate", "generat"),
    ("generic", "generic"),
    ("cement", "cement"),
    ("innings", "inning"),
    ("proceeds", "proceed"),
    ("ackers", "acker"),
]

GERMAN_SPOT = [
    ("bedürfnissen", "bedurfnis"),
    ("schränke", "schrank"),
    ("sozialwissenschaften", "sozialwissenschaft"),
    ("keinen", "kein"),
    ("derbsten", "derb"),
]


@pytest.mark.parametrize("word,expected", ENGLISH_SPOT)
def test_english_spot(word, expected):
    assert stem_en(word) == expected


@pytest.mark.parametrize("word,expected", GERMAN_SPOT)
def test_german_spot(word, expected):
    assert stem_de(word) == expected


def test_english_uppercase_folds():
    assert stem_en("Agreed") == "agre"


def test_german_eszett():
    # ß folds to ss before suffix handling
    assert stem_de("straße") == stem_de("strasse")


def test_registry():
    assert set(STEMMER_IDS) == {"english", "german", "none"}
    assert get_stemmer("none")("Wört") == "Wört"
    with pytest.raises(KeyError):
        get_stemmer("klingon")


def test_stemmers_never_grow_words():
    for word, _ in load_pairs("english_stems.tsv"):
        assert len(stem_en(word)) <= len(word) + 1  # step 1b can restore an 'e'
    for word, _ in load_pairs("german_stems.tsv"):
        assert len(stem_de(word)) <= len(word) + 1  # ß folds to ss
