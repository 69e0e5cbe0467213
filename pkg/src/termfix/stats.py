"""Dwell-time group comparison: one-way ANOVA over found/other partitions.

Observations are per (session, stem): the merged fixation's total dwell.
F = (SS_between/df_between) / (SS_within/df_within); significance compares
against the F critical value at the configured alpha (default 0.01).
Degenerate inputs surface as typed errors or skip markers, never NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from scipy import stats as _scipy_stats

from .events import TermFixation
from .matching import (
    EmptyInput,
    MatchKind,
    combined_report,
    found_source_distribution,
    keyword_overlap,
)
from .sessions import Corpus
from .textnorm import NormalizationConfig

__all__ = [
    "AnovaResult",
    "AnovaError",
    "TooFewGroups",
    "DegenerateDf",
    "ZeroWithinVariance",
    "InsufficientData",
    "GroupTiming",
    "TimingComparison",
    "FoundRate",
    "CorpusReport",
    "one_way_anova",
    "f_critical",
    "timing_comparison",
    "pooled_timing",
    "overlap_timing",
    "corpus_report",
]

DEFAULT_ALPHA = 0.01


class AnovaError(ValueError):
    pass


class TooFewGroups(AnovaError):
    pass


class DegenerateDf(AnovaError):
    pass


class ZeroWithinVariance(AnovaError):
    """All groups have zero spread and equal means: F is 0/0."""


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class AnovaResult:
    f_stat: float
    df_between: int
    df_within: int
    ss_between: float
    ss_within: float
    alpha: float
    f_critical: float
    significant: bool


def f_critical(alpha: float, df_between: int, df_within: int) -> float:
    return float(_scipy_stats.f.ppf(1.0 - alpha, df_between, df_within))


def one_way_anova(
    groups: Sequence[Sequence[float]], alpha: float = DEFAULT_ALPHA
) -> AnovaResult:
    """Definitional one-way ANOVA over two or more nonempty groups.

    ss_within == 0 with differing means yields F = inf (significant);
    with equal means it raises ZeroWithinVariance.
    """
    if len(groups) < 2:
        raise TooFewGroups(f"need >= 2 groups, got {len(groups)}")
    for i, g in enumerate(groups):
        if len(g) == 0:
            raise InsufficientData(f"group {i} is empty")
    n_total = sum(len(g) for g in groups)
    k = len(groups)
    df_between = k - 1
    df_within = n_total - k
    if df_within <= 0:
        raise DegenerateDf(f"{n_total} observations in {k} groups leaves no df")

    grand = sum(sum(g) for g in groups) / n_total
    ss_between = 0.0
    ss_within = 0.0
    for g in groups:
        mean = sum(g) / len(g)
        ss_between += len(g) * (mean - grand) ** 2
        ss_within += sum((x - mean) ** 2 for x in g)

    crit = f_critical(alpha, df_between, df_within)
    if ss_within == 0.0:
        if ss_between == 0.0:
            raise ZeroWithinVariance("all observations identical")
        f = math.inf
    else:
        f = (ss_between / df_between) / (ss_within / df_within)
    return AnovaResult(
        f_stat=f,
        df_between=df_between,
        df_within=df_within,
        ss_between=ss_between,
        ss_within=ss_within,
        alpha=alpha,
        f_critical=crit,
        significant=f > crit,
    )


@dataclass(frozen=True)
class GroupTiming:
    label: str
    n: int
    mean_ms: float | None
    observations: tuple[int, ...]


@dataclass(frozen=True)
class TimingComparison:
    """Found-vs-other dwell comparison; skipped is set when no test ran."""

    found: GroupTiming
    other: GroupTiming
    anova: AnovaResult | None
    skipped: str | None = None

    @property
    def significant(self) -> bool:
        return self.anova is not None and self.anova.significant


def _group(label: str, obs: Sequence[int]) -> GroupTiming:
    n = len(obs)
    mean = sum(obs) / n if n else None
    return GroupTiming(label=label, n=n, mean_ms=mean, observations=tuple(obs))


def pooled_timing(
    found_obs: Sequence[int],
    other_obs: Sequence[int],
    alpha: float = DEFAULT_ALPHA,
    labels: tuple[str, str] = ("found", "other"),
) -> TimingComparison:
    """Compare two observation pools; degenerate cases become skip markers."""
    found = _group(labels[0], found_obs)
    other = _group(labels[1], other_obs)
    if found.n == 0 or other.n == 0:
        return TimingComparison(found, other, None, skipped="insufficient_data")
    try:
        anova = one_way_anova([found_obs, other_obs], alpha=alpha)
    except ZeroWithinVariance:
        # F is 0/0 with equal means: by contract a non-significant degenerate
        return TimingComparison(found, other, None, skipped="not_significant_degenerate")
    except DegenerateDf:
        return TimingComparison(found, other, None, skipped="degenerate_df")
    return TimingComparison(found, other, anova)


def timing_comparison(
    found_stems,
    fixations: Mapping[str, TermFixation],
    alpha: float = DEFAULT_ALPHA,
    eligible: Sequence[str] | None = None,
) -> TimingComparison:
    """Session-level found/other comparison over (optionally restricted) stems."""
    stems = list(eligible) if eligible is not None else list(fixations.keys())
    found_set = set(found_stems)
    found_obs = [fixations[s].total_ms for s in stems if s in found_set]
    other_obs = [fixations[s].total_ms for s in stems if s not in found_set]
    return pooled_timing(found_obs, other_obs, alpha=alpha)


def overlap_timing(
    corpus: Corpus,
    cfg: NormalizationConfig,
    alpha: float = DEFAULT_ALPHA,
    max_docs: int = 5,
) -> dict[int, TimingComparison]:
    """Dwell by keyword document-overlap count.

    A fixation stem is attributed to the highest document count among the
    found keywords matching it (all-tokens policy). Bucket k pools, across
    the corpus, fixations attributed to exactly k docs against all remaining
    fixations of the same sessions; k runs from 2 to max_docs. Buckets with
    no observations keep an insufficient_data marker.
    """
    bucket_obs: dict[int, list[int]] = {k: [] for k in range(2, max_docs + 1)}
    rest_obs: dict[int, list[int]] = {k: [] for k in range(2, max_docs + 1)}

    for session in corpus.sessions:
        report, _ = combined_report(session, cfg)
        overlap = keyword_overlap(session, cfg)
        # doc-count per keyword token, token -> max over keywords containing it
        token_count: dict[str, int] = {}
        kw_hits = [h for h in report.hits if h.kind is MatchKind.KEYWORD]
        hit_tokens = {h.needle for h in kw_hits}
        for kw, count in overlap.items():
            if all(t in hit_tokens for t in kw):  # keyword actually found
                for t in kw:
                    token_count[t] = max(token_count.get(t, 0), count)
        # attribute each fixation stem via the tokens that hit it
        attributed: dict[str, int] = {}
        for h in kw_hits:
            c = token_count.get(h.needle, 0)
            if c > attributed.get(h.fixation_stem, 0):
                attributed[h.fixation_stem] = c

        for stem in session.fixations:
            if stem not in report.found and stem not in report.other:
                continue  # blacklisted
            total = session.fixations[stem].total_ms
            k = attributed.get(stem, 0)
            for bucket in bucket_obs:
                if k == bucket:
                    bucket_obs[bucket].append(total)
                else:
                    rest_obs[bucket].append(total)

    out: dict[int, TimingComparison] = {}
    for k in sorted(bucket_obs):
        out[k] = pooled_timing(
            bucket_obs[k],
            rest_obs[k],
            alpha=alpha,
            labels=(f"overlap_{k}_docs", "other"),
        )
    return out


@dataclass(frozen=True)
class FoundRate:
    """How many needles of one kind were searched for and found, corpus-wide.

    term_weighted divides the corpus totals; session_weighted averages the
    per-session rates over sessions that searched at least one needle of the
    kind (None when no session did).
    """

    searched: int
    found: int
    term_weighted: float | None
    session_weighted: float | None


@dataclass(frozen=True)
class CorpusReport:
    session_count: int
    search_count: int
    click_count: int
    fixation_count: int
    alpha: float
    pct_sessions_with_any_found: float
    mean_found_terms_per_session: float
    found_rates: Mapping[str, FoundRate]
    timing: Mapping[str, TimingComparison]
    first_fixation_aoi: Mapping[str, float]
    first_fixation_field: Mapping[str, float]
    found_source_aoi: Mapping[str, float]
    found_source_field: Mapping[str, float]
    overlap: Mapping[int, TimingComparison]


_KIND_KEYS = ("search_term", "title_term", "keyword")


def corpus_report(
    corpus: Corpus, cfg: NormalizationConfig, alpha: float = DEFAULT_ALPHA
) -> CorpusReport:
    """Corpus-wide analysis: found rates, timing pairs, distributions, overlap.

    Observations pool term-level dwell across sessions in corpus order, so
    equal corpora yield identical reports. Timing pairs exist for the
    combined found set and per match kind; found_source distributions cover
    stems found by any kind.
    """
    from .sessions import EmptyCorpus, first_fixation_distribution

    if corpus.session_count == 0:
        raise EmptyCorpus("no admitted sessions")

    kind_of = {
        "search_term": MatchKind.SEARCH_TERM,
        "title_term": MatchKind.TITLE_TERM,
        "keyword": MatchKind.KEYWORD,
    }
    found_obs: dict[str, list[int]] = {k: [] for k in ("combined", *_KIND_KEYS)}
    other_obs: dict[str, list[int]] = {k: [] for k in ("combined", *_KIND_KEYS)}
    rate_totals = {k: [0, 0] for k in _KIND_KEYS}  # searched, found
    rate_session: dict[str, list[float]] = {k: [] for k in _KIND_KEYS}
    sessions_with_found = 0
    found_counts: list[int] = []
    fixation_count = 0
    found_pairs = []  # (session, report) for found_source_distribution

    for session in corpus.sessions:
        fixation_count += len(session.fixations)
        report, _ = combined_report(session, cfg)
        found_pairs.append((session, report))
        if report.found:
            sessions_with_found += 1
            found_counts.append(len(report.found))
        per_kind_found = {k: set() for k in _KIND_KEYS}
        for key, kind in kind_of.items():
            stems = {h.fixation_stem for h in report.hits if h.kind is kind}
            per_kind_found[key] = stems
        eligible = report.found | report.other
        for stem in session.fixations:
            if stem not in eligible:
                continue  # blacklisted
            total = session.fixations[stem].total_ms
            side = found_obs if stem in report.found else other_obs
            side["combined"].append(total)
            for key in _KIND_KEYS:
                (found_obs if stem in per_kind_found[key] else other_obs)[key].append(total)
        for key in _KIND_KEYS:
            stats = report.per_kind[kind_of[key]]
            rate_totals[key][0] += stats.searched
            rate_totals[key][1] += stats.found
            if stats.searched:
                rate_session[key].append(stats.found / stats.searched)

    found_rates = {}
    for key in _KIND_KEYS:
        searched, found = rate_totals[key]
        found_rates[key] = FoundRate(
            searched=searched,
            found=found,
            term_weighted=(found / searched) if searched else None,
            session_weighted=(
                sum(rate_session[key]) / len(rate_session[key])
                if rate_session[key]
                else None
            ),
        )

    timing = {
        key: pooled_timing(found_obs[key], other_obs[key], alpha=alpha)
        for key in ("combined", *_KIND_KEYS)
    }

    try:
        aoi_dist, field_dist = first_fixation_distribution(corpus)
        first_aoi = {a.value: frac for a, frac in aoi_dist.items()}
        first_field = {m.value: frac for m, frac in field_dist.items()}
    except EmptyCorpus:
        first_aoi, first_field = {}, {}

    try:
        src_aoi_dist, src_field_dist = found_source_distribution(found_pairs)
        src_aoi = {a.value: frac for a, frac in src_aoi_dist.items()}
        src_field = {m.value: frac for m, frac in src_field_dist.items()}
    except EmptyInput:
        src_aoi, src_field = {}, {}

    return CorpusReport(
        session_count=corpus.session_count,
        search_count=corpus.search_count,
        click_count=corpus.click_count,
        fixation_count=fixation_count,
        alpha=alpha,
        pct_sessions_with_any_found=100.0 * sessions_with_found / corpus.session_count,
        mean_found_terms_per_session=(
            sum(found_counts) / len(found_counts) if found_counts else 0.0
        ),
        found_rates=found_rates,
        timing=timing,
        first_fixation_aoi=first_aoi,
        first_fixation_field=first_field,
        found_source_aoi=src_aoi,
        found_source_field=src_field,
        overlap=overlap_timing(corpus, cfg, alpha=alpha),
    )
