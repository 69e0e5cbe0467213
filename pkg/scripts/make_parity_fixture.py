#!/usr/bin/env python3
"""Emit the normalization parity fixture consumed by the browser tracker.

The tracker normalizes hovered words client-side and must produce exactly
the stems this package produces, or online matching diverges from offline
analysis. This script freezes the contract into one JSON file: the shipped
stopword lists and blacklist, the length filter, input/output cases for the
full normalize pipeline, and stem pairs sampled from the conformance TSVs.

Regenerate after any change to the shipped wordlists or normalizer and
commit the result next to the tracker's tests.

Usage:
    python3 scripts/make_parity_fixture.py --out frontend/tests/fixtures/normalization_parity.json
"""

import argparse
import json
import random
import sys
from pathlib import Path

from termfix.textnorm import default_config, normalize_text

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# chosen to hit every normalizer behavior: case folding, umlaut and eszett
# handling inside the stemmers, stopwords of both profiles (pre- and
# post-stem), the dual length filter, compounds, digits, punctuation
# boundaries, and empty results
PROBES = [
    "Armut und soziale Ungleichheit",
    "Die Bedürfnisse der Kinder",
    "SOZIALWISSENSCHAFTEN heute",
    "Fußball-Statistik 2024",
    "poverty and inequality",
    "hoping to generate news",
    "ags ads on keinen",
    "Ök oK o.k.",
    "straße STRASSE Strasse",
    "bildungsforschung, bildung; forschung.",
    "a an und der die das",
    "x1 y22 z333 1990er",
    "don't can't l'été",
    "  \t\n  ",
    "ein_underscore_wort",
    "Wörter über Gefühle",
]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--stem-sample", type=int, default=400, help="pairs per language")
    args = p.parse_args(argv)

    cfg = default_config()
    cases = [
        {
            "text": text,
            "with_len_filter": normalize_text(text, cfg),
            "without_len_filter": normalize_text(text, cfg, apply_len_filter=False),
        }
        for text in PROBES
    ]

    stem_cases = {}
    for lang, name in (("english", "english_stems.tsv"), ("german", "german_stems.tsv")):
        pairs = []
        for line in (FIXTURES / name).read_text(encoding="utf-8").splitlines():
            if line and not line.startswith("#"):
                word, expected = line.split("\t")
                pairs.append([word, expected])
        k = min(args.stem_sample, len(pairs))
        stem_cases[lang] = sorted(random.Random(0).sample(pairs, k))

    fixture = {
        "schema_version": 1,
        "min_search_term_len": cfg.min_search_term_len,
        "profiles": [
            {"id": prof.id, "stemmer": prof.stemmer_id, "stopwords": sorted(prof.stopwords)}
            for prof in cfg.profiles
        ],
        "blacklist": sorted(cfg.blacklist),
        "normalize_cases": cases,
        "stem_cases": stem_cases,
    }
    text = json.dumps(fixture, ensure_ascii=False, indent=1) + "\n"
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        print(f"wrote {out} ({len(text)} bytes)", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
