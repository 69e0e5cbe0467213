#!/usr/bin/env python3
"""False-positive check: equal planted means must stay non-significant.

Generates many small corpora whose interest and background dwell means are
identical, runs the found-vs-other comparison on each, and reports how often
it comes out significant. At alpha the long-run significant rate should sit
near alpha itself; a materially higher rate means the comparison is biased
by the pipeline (for example a selection effect in the found partition).

Usage:
    python3 scripts/null_calibration.py
    python3 scripts/null_calibration.py --seeds 500 --sessions 80 --alpha 0.05
"""

import argparse
import sys

from termfix.matching import combined_report
from termfix.sessions import build_sessions
from termfix.simulator import SimConfig, generate
from termfix.stats import pooled_timing
from termfix.textnorm import default_config


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=100, help="number of corpora")
    p.add_argument("--sessions", type=int, default=40, help="sessions per corpus")
    p.add_argument("--mean", type=float, default=5000.0, help="shared dwell mean [ms]")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--seed0", type=int, default=1000, help="first seed")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    norm = default_config()
    significant = 0
    skipped = 0
    for i in range(args.seeds):
        cfg = SimConfig(
            seed=args.seed0 + i,
            n_sessions=args.sessions,
            interest_mean_ms=args.mean,
            background_mean_ms=args.mean,
        )
        events, _ = generate(cfg)
        corpus = build_sessions(events, norm)
        found_obs, other_obs = [], []
        for session in corpus.sessions:
            rep, _ = combined_report(session, norm)
            for stem, fx in session.fixations.items():
                if stem in rep.found:
                    found_obs.append(fx.total_ms)
                elif stem in rep.other:
                    other_obs.append(fx.total_ms)
        tc = pooled_timing(found_obs, other_obs, alpha=args.alpha)
        if tc.skipped is not None:
            skipped += 1
        elif tc.significant:
            significant += 1

    tested = args.seeds - skipped
    rate = significant / tested if tested else float("nan")
    print(
        f"seeds={args.seeds} sessions={args.sessions} mean={args.mean:.0f}ms "
        f"alpha={args.alpha}"
    )
    print(
        f"significant: {significant}/{tested} ({rate:.1%}); skipped: {skipped}; "
        f"expected rate ~{args.alpha:.0%}"
    )
    # generous bound: 3x alpha plus two absolute to absorb binomial noise
    # on small runs
    return 0 if significant <= 3 * args.alpha * tested + 2 else 1


if __name__ == "__main__":
    sys.exit(main())
