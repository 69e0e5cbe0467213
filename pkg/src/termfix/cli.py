"""Command-line entry point.

Subcommands: serve (HTTP ingest + reports), simulate (synthetic corpus with
ground truth), analyze (corpus or single-session reports from a JSONL log),
extract (interest terms for one session), evaluate (extraction quality
against ground truth).

Exit codes: 0 ok, 2 unreadable input or bad config, 3 empty corpus,
4 session not found. JSON goes to standard output exactly as serialized by
the report builders; human tables derive from the same in-memory objects.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .events import EventDecodeError, read_events_file
from .extraction import (
    ThresholdPolicy,
    UnknownSession,
    default_policy,
    evaluate_extraction,
    extract_interest,
)
from .reports import (
    SCHEMA_VERSION,
    corpus_report_json,
    dumps_stable,
    render_corpus_table,
    session_report_json,
)
from .sessions import EmptyCorpus, build_sessions
from .simulator import SimConfig, analytic_expectations, write_corpus
from .stats import DEFAULT_ALPHA, corpus_report
from .textnorm import NormalizationConfig, default_config, load_config

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_NOT_FOUND = 4


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _load_norm_config(path: str | None) -> NormalizationConfig:
    if path is None:
        return default_config()
    return load_config(path)


def _policy_from_args(args: argparse.Namespace) -> ThresholdPolicy:
    if args.policy is None:
        return default_policy()
    kwargs: dict = {"kind": args.policy}
    if args.floor_ms is not None:
        kwargs["floor_ms"] = args.floor_ms
    if args.policy == "absolute":
        if args.absolute_ms is None:
            raise ValueError("--policy absolute requires --absolute-ms")
        kwargs["absolute_ms"] = args.absolute_ms
    elif args.policy == "median_factor":
        kwargs["factor"] = args.factor if args.factor is not None else 1.1
    elif args.policy == "top_k":
        if args.k is None:
            raise ValueError("--policy top_k requires --k")
        kwargs["k"] = args.k
    return ThresholdPolicy(**kwargs)


def _read_corpus(path: str, cfg: NormalizationConfig):
    events = list(read_events_file(path))
    return build_sessions(events, cfg)


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--policy", choices=("absolute", "median_factor", "top_k"))
    p.add_argument("--absolute-ms", type=int)
    p.add_argument("--factor", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--floor-ms", type=int)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceSettings, create_app

    try:
        cfg = _load_norm_config(args.config)
    except (OSError, ValueError, KeyError) as e:
        return _fail(f"config error: {e}", EXIT_INPUT)
    settings = ServiceSettings(
        log_path=Path(args.log),
        max_batch_bytes=args.max_batch_bytes,
        alpha=args.alpha,
        cors_origins=tuple(args.cors_origin) if args.cors_origin else ("*",),
        token=args.token,
    )
    app = create_app(settings, cfg)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.sim_config is None:
        cfg = SimConfig()
    else:
        try:
            raw = json.loads(Path(args.sim_config).read_text(encoding="utf-8"))
            cfg = SimConfig.from_dict(raw)
        except (OSError, ValueError, TypeError) as e:
            return _fail(f"invalid simulator config: {e}", EXIT_INPUT)
    if args.seed is not None:
        cfg = SimConfig.from_dict({**cfg.to_dict(), "seed": args.seed})
    events_path, truth_path = write_corpus(cfg, args.out_dir)
    exp = analytic_expectations(cfg)
    print(f"wrote {events_path}")
    print(f"wrote {truth_path}")
    print(
        "expected dwell means: "
        f"interest {exp.found_mean_ms / 1000.0:.2f}s, "
        f"background {exp.other_mean_ms / 1000.0:.2f}s"
    )
    print(
        f"expected sessions with a found term: "
        f"{100.0 * exp.pct_sessions_with_any_found:.2f}%"
    )
    print(f"expected interest share per query slot: {exp.query_slot_found_rate:.2f}")
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        cfg = _load_norm_config(args.config)
    except (OSError, ValueError, KeyError) as e:
        return _fail(f"config error: {e}", EXIT_INPUT)
    try:
        corpus = _read_corpus(args.input, cfg)
    except OSError as e:
        return _fail(f"cannot read input: {e}", EXIT_INPUT)
    except EventDecodeError as e:
        return _fail(f"undecodable input: {e}", EXIT_INPUT)

    if args.session is not None:
        session = corpus.by_id(args.session)
        if session is None:
            return _fail(f"session not found: {args.session}", EXIT_NOT_FOUND)
        print(session_report_json(session, cfg, alpha=args.alpha))
        return EXIT_OK

    try:
        report = corpus_report(corpus, cfg, alpha=args.alpha)
    except EmptyCorpus as e:
        return _fail(f"empty corpus: {e}", EXIT_EMPTY)
    if args.out is not None:
        Path(args.out).write_text(
            corpus_report_json(report) + "\n", encoding="utf-8", newline="\n"
        )
    print(render_corpus_table(report))
    return EXIT_OK


def _cmd_extract(args: argparse.Namespace) -> int:
    try:
        cfg = _load_norm_config(args.config)
        policy = _policy_from_args(args)
    except (OSError, ValueError, KeyError) as e:
        return _fail(f"config error: {e}", EXIT_INPUT)
    try:
        corpus = _read_corpus(args.input, cfg)
    except OSError as e:
        return _fail(f"cannot read input: {e}", EXIT_INPUT)
    except EventDecodeError as e:
        return _fail(f"undecodable input: {e}", EXIT_INPUT)
    session = corpus.by_id(args.session)
    if session is None:
        return _fail(f"session not found: {args.session}", EXIT_NOT_FOUND)
    terms = extract_interest(session, cfg, policy)
    obj = {
        "schema_version": SCHEMA_VERSION,
        "session_id": session.session_id,
        "policy": policy.to_dict(),
        "terms": [
            {"stem": t.stem, "total_ms": t.total_ms, "rank": t.rank} for t in terms
        ],
    }
    print(dumps_stable(obj))
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        cfg = _load_norm_config(args.config)
        policy = _policy_from_args(args)
    except (OSError, ValueError, KeyError) as e:
        return _fail(f"config error: {e}", EXIT_INPUT)
    try:
        corpus = _read_corpus(args.input, cfg)
    except OSError as e:
        return _fail(f"cannot read input: {e}", EXIT_INPUT)
    except EventDecodeError as e:
        return _fail(f"undecodable input: {e}", EXIT_INPUT)
    try:
        raw = json.loads(Path(args.truth).read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        return _fail(f"cannot read truth: {e}", EXIT_INPUT)
    truth: dict[str, list[str]] = {}
    sessions_obj = raw.get("sessions", raw) if isinstance(raw, dict) else None
    if not isinstance(sessions_obj, dict):
        return _fail("truth file has no sessions object", EXIT_INPUT)
    for sid, entry in sessions_obj.items():
        if isinstance(entry, dict):
            stems = entry.get("interest_fixation_stems")
            if stems is None:
                return _fail(
                    f"truth entry for {sid!r} lacks interest_fixation_stems",
                    EXIT_INPUT,
                )
            truth[sid] = list(stems)
        else:
            truth[sid] = list(entry)
    try:
        result = evaluate_extraction(corpus, truth, cfg, policy)
    except UnknownSession as e:
        return _fail(f"truth does not match corpus: {e.args[0]}", EXIT_INPUT)
    except ValueError as e:
        return _fail(str(e), EXIT_EMPTY)

    if args.json:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "policy": policy.to_dict(),
            "macro_precision": result.macro_precision,
            "macro_recall": result.macro_recall,
            "macro_f1": result.macro_f1,
            "sessions": [
                {
                    "session_id": e.session_id,
                    "precision": e.precision,
                    "recall": e.recall,
                    "f1": e.f1,
                    "tp": e.tp,
                    "fp": e.fp,
                    "fn": e.fn,
                    "empty_truth": e.empty_truth,
                }
                for e in result.sessions
            ],
        }
        print(dumps_stable(obj))
        return EXIT_OK

    print(
        f"macro over {len(result.sessions)} sessions: "
        f"precision={result.macro_precision:.4f} "
        f"recall={result.macro_recall:.4f} f1={result.macro_f1:.4f}"
    )
    for e in result.sessions:
        flag = " (empty truth)" if e.empty_truth else ""
        print(
            f"  {e.session_id}: p={e.precision:.2f} r={e.recall:.2f} "
            f"f1={e.f1:.2f} tp={e.tp} fp={e.fp} fn={e.fn}{flag}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termfix",
        description="Mouse-hover dwell analysis over search-session terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the ingest + report HTTP service")
    p.add_argument("--log", required=True, help="JSONL event log path")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--max-batch-bytes", type=int, default=1 << 20)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument(
        "--cors-origin",
        action="append",
        help="allowed origin (repeatable, default '*')",
    )
    p.add_argument("--token", help="require 'Authorization: Bearer <token>'")
    p.add_argument("--config", help="normalization config JSON")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("simulate", help="generate a synthetic corpus + truth")
    p.add_argument("--config", dest="sim_config", help="simulator config JSON")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analyze", help="corpus report (or one session's JSON)")
    p.add_argument("--input", required=True, help="JSONL event log")
    p.add_argument("--out", help="write corpus report JSON here")
    p.add_argument("--session", help="print this session's analysis JSON instead")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--config", help="normalization config JSON")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("extract", help="interest terms for one session")
    p.add_argument("--input", required=True)
    p.add_argument("--session", required=True)
    p.add_argument("--config", help="normalization config JSON")
    _add_policy_flags(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("evaluate", help="extraction quality against ground truth")
    p.add_argument("--input", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--config", help="normalization config JSON")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    _add_policy_flags(p)
    p.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the pipe; exit quietly
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 141


if __name__ == "__main__":
    sys.exit(main())
