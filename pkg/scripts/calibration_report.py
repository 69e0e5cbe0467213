#!/usr/bin/env python3
"""Generate a synthetic corpus and report how well the analysis recovers it.

Runs the generator, builds sessions, prints the corpus analysis table, and
compares the measured dwell means against the values the config planted
(plus the analytic expectations implied by the config). A recovery error
above a few percent on the default config means something regressed in the
pipeline, not in the generator.

Usage:
    python3 scripts/calibration_report.py
    python3 scripts/calibration_report.py --config my_sim.json --seed 99
    python3 scripts/calibration_report.py --json > corpus_report.json
"""

import argparse
import json
import sys

from termfix.reports import corpus_report_json, render_corpus_table
from termfix.sessions import build_sessions
from termfix.simulator import SimConfig, analytic_expectations, generate
from termfix.stats import corpus_report
from termfix.textnorm import default_config


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", help="generator config JSON (defaults built in)")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument(
        "--json", action="store_true", help="emit the corpus report JSON instead of tables"
    )
    return p.parse_args(argv)


def rel_err(measured, target):
    return abs(measured - target) / target


def main(argv=None):
    args = parse_args(argv)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = SimConfig.from_dict(json.load(fh))
    else:
        cfg = SimConfig()
    if args.seed is not None:
        cfg = SimConfig.from_dict({**cfg.to_dict(), "seed": args.seed})

    events, truth = generate(cfg)
    corpus = build_sessions(events, default_config())
    report = corpus_report(corpus, default_config(), alpha=args.alpha)

    if args.json:
        print(corpus_report_json(report))
        return 0

    print(render_corpus_table(report))
    print()

    expect = analytic_expectations(cfg)
    combined = report.timing["combined"]
    rows = [
        ("found mean [ms]", combined.found.mean_ms, expect.found_mean_ms),
        ("other mean [ms]", combined.other.mean_ms, expect.other_mean_ms),
    ]
    print(f"recovery vs config (seed={cfg.seed}, sessions={cfg.n_sessions})")
    for label, measured, target in rows:
        err = rel_err(measured, target)
        print(f"  {label:<18} measured={measured:9.1f}  planted={target:9.1f}  err={err:6.2%}")
    anova = combined.anova
    verdict = "significant" if combined.significant else "NOT significant"
    print(f"  anova              F={anova.f_stat:.2f}  alpha={anova.alpha}  -> {verdict}")

    truth_ids = {t.session_id for t in truth.sessions}
    print(f"  sessions           generated={len(truth_ids)}  admitted={report.session_count}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
