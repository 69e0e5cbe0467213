"""Needle-in-fixation matching, compared against a naive quadratic oracle."""

import pytest

from _oracles import naive_partition
from termfix.events import (
    Aoi,
    DocumentClick,
    MetadataField,
    QueryEvent,
    TermFixation,
)
from termfix.matching import (
    MIN_NEEDLE_LEN,
    EmptyInput,
    KindStats,
    MatchHit,
    MatchKind,
    cleaned_fixation_stems,
    combined_report,
    found_source_distribution,
    keyword_needles,
    keyword_overlap,
    match_document,
    match_search_terms,
    title_needles,
)
from termfix.sessions import build_sessions
from termfix.textnorm import LanguageProfile, NormalizationConfig


def fix(stem, total=100, first=10, last=200, aoi=Aoi.RESULT_LIST, field=MetadataField.TITLE):
    return TermFixation(stem, total, first, last, aoi, field)


def make_session(norm_cfg, terms=("Armut",), fixation_stems=(), clicks=()):
    fxs = tuple(fix(s) for s in fixation_stems)
    events = [QueryEvent("s1", 10, tuple(terms), fxs)]
    events.extend(clicks)
    return build_sessions(events, norm_cfg).sessions[0]


def click(ts=20, doc="d1", title="T", keywords=()):
    return DocumentClick("s1", ts, doc, title, tuple(keywords))


def test_min_needle_len_is_three():
    assert MIN_NEEDLE_LEN == 3


def test_hit_invariant_enforced():
    with pytest.raises(ValueError):
        MatchHit(needle="armut", fixation_stem="bildung", kind=MatchKind.SEARCH_TERM)


def test_search_term_exact_and_inclusion(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Armut", "Wissenschaft"],
        fixation_stems=["armut", "sozialwissenschaft", "kind"],
    )
    report = match_search_terms(s, norm_cfg)
    assert report.found == frozenset({"armut", "sozialwissenschaft"})
    assert report.other == frozenset({"kind"})
    assert report.per_kind[MatchKind.SEARCH_TERM] == KindStats(searched=2, found=2)


def test_needle_direction_is_strict(norm_cfg):
    # fixation stem shorter than the needle is never a match
    s = make_session(
        norm_cfg,
        terms=["Sozialwissenschaft"],
        fixation_stems=["sozial"],
    )
    report = match_search_terms(s, norm_cfg)
    assert report.found == frozenset()
    assert report.other == frozenset({"sozial"})


def test_short_needles_not_searched():
    cfg = NormalizationConfig(
        profiles=(
            LanguageProfile(id="x", stopwords=frozenset({"zzstop"}), stemmer_id="none"),
        ),
        min_search_term_len=1,
    )
    s = make_session(cfg, terms=["ab", "abc"], fixation_stems=["ab", "abc"])
    assert s.distinct_search_stems == frozenset({"ab", "abc"})
    report = match_search_terms(s, cfg)
    # the 2-char stem is neither searched nor findable
    assert report.per_kind[MatchKind.SEARCH_TERM] == KindStats(searched=1, found=1)
    assert report.found == frozenset({"abc"})
    assert report.other == frozenset({"ab"})


def test_blacklist_removes_stem_entirely(norm_cfg):
    s = make_session(norm_cfg, terms=["Login"], fixation_stems=["login", "armut"])
    assert cleaned_fixation_stems(s, norm_cfg) == ["armut"]
    report = match_search_terms(s, norm_cfg)
    assert "login" not in report.found and "login" not in report.other


def test_title_needles_normalized_distinct(norm_cfg):
    c = click(title="Armut und die ökonomische Armut ab")
    assert title_needles(c, norm_cfg) == ["armut", "okonom"]


def test_keyword_needles_token_tuples(norm_cfg):
    c = click(keywords=["soziale Ungleichheit", "Statistik", "soziale Ungleichheit", "und"])
    assert keyword_needles(c, norm_cfg) == [("sozial", "ungleich"), ("statist",)]


def test_multi_token_keyword_all_or_nothing(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Kind"],
        fixation_stems=["sozial", "armut"],
        clicks=[click(keywords=["soziale Ungleichheit"])],
    )
    report, docs = combined_report(s, norm_cfg)
    # "sozial" alone matched, "ungleich" did not: keyword contributes nothing
    assert report.per_kind[MatchKind.KEYWORD] == KindStats(searched=1, found=0)
    assert "sozial" in report.other
    assert docs[0].keywords == 1 and docs[0].keywords_found == 0


def test_multi_token_keyword_found_when_all_match(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Kind"],
        fixation_stems=["sozialpolitik", "ungleich"],
        clicks=[click(keywords=["soziale Ungleichheit"])],
    )
    report, docs = combined_report(s, norm_cfg)
    assert report.per_kind[MatchKind.KEYWORD] == KindStats(searched=1, found=1)
    assert report.found == frozenset({"sozialpolitik", "ungleich"})
    assert docs[0].keywords_found == 1


def test_match_document_counts(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Kind"],
        fixation_stems=["armut", "bildung"],
    )
    result, hits = match_document(
        s, click(title="Armut und Gesellschaft", keywords=["Bildung", "Chancen"]), norm_cfg
    )
    assert result.title_terms == 2 and result.title_found == 1
    assert result.keywords == 2 and result.keywords_found == 1
    assert {(h.needle, h.fixation_stem, h.kind) for h in hits} == {
        ("armut", "armut", MatchKind.TITLE_TERM),
        ("bildung", "bildung", MatchKind.KEYWORD),
    }
    assert all(h.doc_id == "d1" for h in hits)


def test_per_kind_distinct_across_clicks(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Kind"],
        fixation_stems=["armut"],
        clicks=[
            click(ts=20, doc="d1", title="Armut heute", keywords=["Armut"]),
            click(ts=30, doc="d2", title="Armut morgen", keywords=["Armut"]),
        ],
    )
    report, _ = combined_report(s, norm_cfg)
    # "armut" title term and keyword each counted once despite two docs
    assert report.per_kind[MatchKind.TITLE_TERM] == KindStats(searched=3, found=1)
    assert report.per_kind[MatchKind.KEYWORD] == KindStats(searched=1, found=1)


def test_per_kind_insertion_order(norm_cfg):
    s = make_session(norm_cfg, terms=["Armut"], fixation_stems=["armut"])
    report, _ = combined_report(s, norm_cfg)
    assert list(report.per_kind) == [
        MatchKind.SEARCH_TERM,
        MatchKind.TITLE_TERM,
        MatchKind.KEYWORD,
    ]


def test_partition_property(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Armut", "Bildung"],
        fixation_stems=["armut", "kind", "login", "statist"],
        clicks=[click(keywords=["Statistik"])],
    )
    report, _ = combined_report(s, norm_cfg)
    cleaned = set(cleaned_fixation_stems(s, norm_cfg))
    assert report.found | report.other == cleaned
    assert report.found & report.other == frozenset()
    for h in report.hits:
        assert h.needle in h.fixation_stem
        assert h.fixation_stem in report.found


def test_golden_session_partition(golden_session, norm_cfg):
    report, docs = combined_report(golden_session, norm_cfg)
    assert report.found == frozenset(
        {"armut", "bildung", "sozialwissenschaft", "statist"}
    )
    assert report.other == frozenset({"kind"})
    assert report.per_kind[MatchKind.SEARCH_TERM] == KindStats(3, 3)
    assert report.per_kind[MatchKind.TITLE_TERM] == KindStats(3, 2)
    assert report.per_kind[MatchKind.KEYWORD] == KindStats(3, 1)
    assert len(docs) == 1
    assert docs[0].title_terms == 3 and docs[0].title_found == 2
    assert docs[0].keywords == 3 and docs[0].keywords_found == 1
    # compound inclusion: both needles land inside sozialwissenschaft
    sozi_needles = {h.needle for h in report.hits if h.fixation_stem == "sozialwissenschaft"}
    assert sozi_needles == {"wissenschaft", "sozial"}
    # partial keyword ("soziale Ungleichheit") contributed no KEYWORD hits
    kw_hits = {h.needle for h in report.hits if h.kind == MatchKind.KEYWORD}
    assert kw_hits == {"statist"}


def test_oracle_agreement_small_corpus(small_sim, norm_cfg):
    _, _, _, corpus = small_sim
    for session in corpus.sessions:
        report, _ = combined_report(session, norm_cfg)
        found, other, per_kind = naive_partition(session, norm_cfg)
        assert report.found == found, session.session_id
        assert report.other == other, session.session_id
        got = {
            kind.value: (stats.searched, stats.found)
            for kind, stats in report.per_kind.items()
        }
        assert got == per_kind, session.session_id


def test_keyword_overlap_counts(norm_cfg):
    s = make_session(
        norm_cfg,
        terms=["Kind"],
        clicks=[
            click(ts=20, doc="d1", keywords=["Armut", "Bildung"]),
            click(ts=30, doc="d2", keywords=["Armut"]),
            click(ts=40, doc="d1", keywords=["Armut"]),  # repeat click, same doc
        ],
    )
    counts = keyword_overlap(s, norm_cfg)
    assert counts[("armut",)] == 2
    assert counts[("bildung",)] == 1
    assert max(counts.values()) <= len({c.doc_id for c in s.clicks})


def test_keyword_overlap_empty(norm_cfg):
    s = make_session(norm_cfg, terms=["Kind"])
    assert keyword_overlap(s, norm_cfg) == {}


def test_found_source_distribution(norm_cfg):
    events = [
        QueryEvent(
            "s1",
            10,
            ("Armut", "Kind"),
            (
                fix("armut", aoi=Aoi.RESULT_LIST, field=MetadataField.TITLE),
                fix("kind", aoi=Aoi.FACETS, field=MetadataField.NONE),
                fix("unmatched", aoi=Aoi.ABSTRACT, field=MetadataField.NONE),
            ),
        )
    ]
    corpus = build_sessions(events, norm_cfg)
    pairs = [(s, combined_report(s, norm_cfg)[0]) for s in corpus.sessions]
    aoi_dist, field_dist = found_source_distribution(pairs)
    # only the two found stems contribute
    assert aoi_dist[Aoi.RESULT_LIST] == 0.5
    assert aoi_dist[Aoi.FACETS] == 0.5
    assert aoi_dist[Aoi.ABSTRACT] == 0.0
    assert field_dist[MetadataField.TITLE] == 0.5
    assert field_dist[MetadataField.NONE] == 0.5


def test_found_source_distribution_empty(norm_cfg):
    s = make_session(norm_cfg, terms=["Kind"], fixation_stems=["armut"])
    report, _ = combined_report(s, norm_cfg)
    assert report.found == frozenset()
    with pytest.raises(EmptyInput):
        found_source_distribution([(s, report)])
