#!/usr/bin/env python3
"""Check the committed stemmer fixtures against the current implementation.

The TSVs under tests/fixtures/ are the conformance oracle: their expected
column was frozen after cross-validation against an independent port and a
hand audit of every disagreement. This script re-stems the word column and
reports drift.

Default mode only reports and exits nonzero on any mismatch. --write
rewrites the expected column from the current implementation; do that only
when deliberately extending the fixture or after adjudicating a stemmer
change by hand, because --write makes the fixture agree with whatever the
code currently does, bugs included.

Usage:
    python3 scripts/refresh_stem_fixtures.py
    python3 scripts/refresh_stem_fixtures.py --write
"""

import argparse
import sys
from pathlib import Path

from termfix.stem import get_stemmer

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
FILES = {
    "english": FIXTURES / "english_stems.tsv",
    "german": FIXTURES / "german_stems.tsv",
}


def check_file(path: Path, stem, write: bool) -> int:
    lines = path.read_text(encoding="utf-8").splitlines()
    drift = 0
    out_lines = []
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            out_lines.append(line)
            continue
        word, expected = line.split("\t")
        got = stem(word)
        if got != expected:
            drift += 1
            print(f"{path.name}:{lineno}: {word} -> {got} (fixture says {expected})")
        out_lines.append(f"{word}\t{got}" if write else line)
    if write and drift:
        path.write_text("\n".join(out_lines) + "\n", encoding="utf-8")
        print(f"{path.name}: rewrote {drift} entries; re-audit before committing")
    return drift


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--write", action="store_true", help="rewrite drifted expected values")
    args = p.parse_args(argv)

    total = 0
    for lang, path in FILES.items():
        drift = check_file(path, get_stemmer(lang), args.write)
        n = sum(1 for x in path.read_text(encoding="utf-8").splitlines() if x and not x.startswith("#"))
        status = "ok" if drift == 0 else f"{drift} drifted"
        print(f"{lang}: {n} entries, {status}")
        total += drift
    return 1 if (total and not args.write) else 0


if __name__ == "__main__":
    sys.exit(main())
