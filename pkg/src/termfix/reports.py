"""Report assembly and serialization.

One builder produces the per-session analysis dict; the HTTP endpoint and
the CLI both serialize it with dumps_stable, so the two paths are
byte-identical by construction. JSON is compact (no spaces), ensure_ascii
off, insertion-ordered keys, schema_version 1 at the top level. An infinite
F statistic serializes as the string "inf"; degenerate analyses carry a
skipped marker instead of numbers, never NaN.
"""

from __future__ import annotations

import json
import math
from typing import Mapping

from .extraction import ThresholdPolicy, default_policy, extract_interest
from .matching import MatchKind, combined_report
from .sessions import Session
from .stats import (
    DEFAULT_ALPHA,
    AnovaResult,
    CorpusReport,
    GroupTiming,
    TimingComparison,
    timing_comparison,
)
from .textnorm import NormalizationConfig

__all__ = [
    "SCHEMA_VERSION",
    "dumps_stable",
    "session_report",
    "session_report_json",
    "corpus_report_obj",
    "corpus_report_json",
    "render_corpus_table",
    "render_session_table",
]

SCHEMA_VERSION = 1

_KIND_KEY = {
    MatchKind.SEARCH_TERM: "search_term",
    MatchKind.TITLE_TERM: "title_term",
    MatchKind.KEYWORD: "keyword",
}


def dumps_stable(obj) -> str:
    """Compact deterministic JSON; dict insertion order is the schema order."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def _f_value(x: float):
    if math.isinf(x):
        return "inf"
    return x


def _anova_obj(a: AnovaResult | None):
    if a is None:
        return None
    return {
        "f_stat": _f_value(a.f_stat),
        "df_between": a.df_between,
        "df_within": a.df_within,
        "ss_between": a.ss_between,
        "ss_within": a.ss_within,
        "alpha": a.alpha,
        "f_critical": a.f_critical,
        "significant": a.significant,
    }


def _group_obj(g: GroupTiming):
    return {"label": g.label, "n": g.n, "mean_ms": g.mean_ms}


def _timing_obj(tc: TimingComparison):
    return {
        "found": _group_obj(tc.found),
        "other": _group_obj(tc.other),
        "anova": _anova_obj(tc.anova),
        "skipped": tc.skipped,
    }


def session_report(
    session: Session,
    cfg: NormalizationConfig,
    alpha: float = DEFAULT_ALPHA,
    policy: ThresholdPolicy | None = None,
) -> dict:
    """Per-session analysis: match summary, timing comparison, interest terms."""
    if policy is None:
        policy = default_policy()
    report, _docs = combined_report(session, cfg)
    eligible = [s for s in session.fixations if s in report.found or s in report.other]
    timing = timing_comparison(report.found, session.fixations, alpha, eligible=eligible)
    terms = extract_interest(session, cfg, policy)
    return {
        "schema_version": SCHEMA_VERSION,
        "session_id": session.session_id,
        "search_count": len(session.queries),
        "click_count": len(session.clicks),
        "fixation_count": len(session.fixations),
        "distinct_search_stems": sorted(session.distinct_search_stems),
        "match": {
            "found": sorted(report.found),
            "other": sorted(report.other),
            "per_kind": {
                _KIND_KEY[kind]: {"searched": ks.searched, "found": ks.found}
                for kind, ks in report.per_kind.items()
            },
        },
        "timing": _timing_obj(timing),
        "interest": {
            "policy": policy.to_dict(),
            "terms": [
                {"stem": t.stem, "total_ms": t.total_ms, "rank": t.rank}
                for t in terms
            ],
        },
    }


def session_report_json(
    session: Session,
    cfg: NormalizationConfig,
    alpha: float = DEFAULT_ALPHA,
    policy: ThresholdPolicy | None = None,
) -> str:
    return dumps_stable(session_report(session, cfg, alpha=alpha, policy=policy))


def corpus_report_obj(report: CorpusReport) -> dict:
    rates = {
        key: {
            "searched": r.searched,
            "found": r.found,
            "term_weighted": r.term_weighted,
            "session_weighted": r.session_weighted,
        }
        for key, r in report.found_rates.items()
    }
    overlap = {}
    for k, tc in report.overlap.items():
        if tc.found.n == 0:
            overlap[str(k)] = {"empty": True}
        else:
            overlap[str(k)] = _timing_obj(tc)
    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": report.alpha,
        "session_count": report.session_count,
        "search_count": report.search_count,
        "click_count": report.click_count,
        "fixation_count": report.fixation_count,
        "pct_sessions_with_any_found": report.pct_sessions_with_any_found,
        "mean_found_terms_per_session": report.mean_found_terms_per_session,
        "found_rates": rates,
        "timing": {key: _timing_obj(tc) for key, tc in report.timing.items()},
        "first_fixation": {
            "aoi": dict(report.first_fixation_aoi),
            "field": dict(report.first_fixation_field),
        },
        "found_source": {
            "aoi": dict(report.found_source_aoi),
            "field": dict(report.found_source_field),
        },
        "overlap_timing": overlap,
    }


def corpus_report_json(report: CorpusReport) -> str:
    return dumps_stable(corpus_report_obj(report))


def _fmt_seconds(ms: float | None) -> str:
    return "-" if ms is None else f"{ms / 1000.0:.2f}s"


def _fmt_pct(fraction: float | None) -> str:
    return "-" if fraction is None else f"{100.0 * fraction:.2f}%"


def _fmt_anova(tc: TimingComparison) -> str:
    if tc.anova is None:
        return f"skipped ({tc.skipped})"
    a = tc.anova
    f_text = "inf" if math.isinf(a.f_stat) else f"{a.f_stat:.2f}"
    verdict = "significant" if a.significant else "not significant"
    return (
        f"F={f_text} df=({a.df_between},{a.df_within}) "
        f"alpha={a.alpha:g} -> {verdict}"
    )


def _timing_lines(label: str, tc: TimingComparison) -> list[str]:
    return [
        f"  {label:<12} found  n={tc.found.n:<6} mean={_fmt_seconds(tc.found.mean_ms)}",
        f"  {'':<12} other  n={tc.other.n:<6} mean={_fmt_seconds(tc.other.mean_ms)}",
        f"  {'':<12} {_fmt_anova(tc)}",
    ]


def _distribution_lines(title: str, dist: Mapping[str, float]) -> list[str]:
    lines = [title]
    for name, frac in dist.items():
        lines.append(f"  {name:<18} {_fmt_pct(frac)}")
    if not dist:
        lines.append("  (none)")
    return lines


def render_corpus_table(report: CorpusReport) -> str:
    """Human-readable summary; derives from the same CorpusReport as the JSON."""
    lines = [
        "corpus summary",
        f"  sessions={report.session_count} searches={report.search_count} "
        f"clicks={report.click_count} fixations={report.fixation_count}",
        f"  sessions with any found term: {report.pct_sessions_with_any_found:.2f}%",
        f"  mean found terms per session (where any): "
        f"{report.mean_found_terms_per_session:.2f}",
        "",
        "found rates",
    ]
    for key, r in report.found_rates.items():
        lines.append(
            f"  {key:<12} searched={r.searched:<7} found={r.found:<7} "
            f"term-weighted={_fmt_pct(r.term_weighted)} "
            f"session-weighted={_fmt_pct(r.session_weighted)}"
        )
    lines.append("")
    lines.append("fixation timing (found vs other)")
    for key, tc in report.timing.items():
        lines.extend(_timing_lines(key, tc))
    lines.append("")
    lines.extend(_distribution_lines("first fixation by area", report.first_fixation_aoi))
    lines.append("")
    lines.extend(
        _distribution_lines("first fixation by metadata field", report.first_fixation_field)
    )
    lines.append("")
    lines.extend(_distribution_lines("found-term source area", report.found_source_aoi))
    lines.append("")
    lines.extend(
        _distribution_lines("found-term source field", report.found_source_field)
    )
    lines.append("")
    lines.append("keyword overlap timing (dwell by shared-document count)")
    for k, tc in report.overlap.items():
        if tc.found.n == 0:
            lines.append(f"  {k} docs: empty bucket")
        else:
            lines.append(
                f"  {k} docs: n={tc.found.n} mean={_fmt_seconds(tc.found.mean_ms)} "
                f"vs other mean={_fmt_seconds(tc.other.mean_ms)} ({_fmt_anova(tc)})"
            )
    return "\n".join(lines)


def render_session_table(obj: dict) -> str:
    """Short human summary of a session_report dict."""
    timing = obj["timing"]
    lines = [
        f"session {obj['session_id']}",
        f"  searches={obj['search_count']} clicks={obj['click_count']} "
        f"fixations={obj['fixation_count']}",
        f"  found terms: {len(obj['match']['found'])} "
        f"(of {len(obj['match']['found']) + len(obj['match']['other'])} fixated)",
    ]
    found_g = timing["found"]
    other_g = timing["other"]
    lines.append(
        f"  dwell found [n={found_g['n']}] mean={_fmt_seconds(found_g['mean_ms'])} "
        f"vs other [n={other_g['n']}] mean={_fmt_seconds(other_g['mean_ms'])}"
    )
    if timing["anova"] is not None:
        a = timing["anova"]
        f_raw = a["f_stat"]
        f_text = "inf" if f_raw == "inf" else f"{f_raw:.2f}"
        verdict = "significant" if a["significant"] else "not significant"
        lines.append(f"  F={f_text} alpha={a['alpha']:g} -> {verdict}")
    else:
        lines.append(f"  anova skipped ({timing['skipped']})")
    lines.append("  interest terms:")
    for t in obj["interest"]["terms"]:
        lines.append(f"    {t['rank']:>2}. {t['stem']} {_fmt_seconds(t['total_ms'])}")
    if not obj["interest"]["terms"]:
        lines.append("    (none)")
    return "\n".join(lines)
