"""Interest-term extraction: which fixated terms held the user's attention.

Candidates are a session's blacklist-cleaned fixations ranked by dwell
(total_ms descending, first_ms ascending, then stem). A threshold policy
selects the interest terms; every policy also applies floor_ms as a hard
minimum dwell.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from typing import Collection, Mapping, Sequence

from .matching import cleaned_fixation_stems
from .sessions import Corpus, Session
from .textnorm import NormalizationConfig

__all__ = [
    "ThresholdPolicy",
    "InterestTerm",
    "SessionEval",
    "EvalReport",
    "UnknownSession",
    "default_policy",
    "threshold_for",
    "extract_interest",
    "evaluate_extraction",
]

POLICY_KINDS = ("absolute", "median_factor", "top_k")


@dataclass(frozen=True)
class ThresholdPolicy:
    """How the dwell threshold is chosen.

    absolute: fixed threshold at absolute_ms.
    median_factor: factor times the median dwell of the session's candidates.
    top_k: the k longest-dwelled candidates.
    floor_ms applies to all kinds as a hard minimum dwell.
    """

    kind: str
    absolute_ms: int | None = None
    factor: float | None = None
    k: int | None = None
    floor_ms: int = 5000

    def __post_init__(self) -> None:
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind == "absolute" and (self.absolute_ms is None or self.absolute_ms < 0):
            raise ValueError("absolute policy needs absolute_ms >= 0")
        if self.kind == "median_factor" and (self.factor is None or self.factor <= 0):
            raise ValueError("median_factor policy needs factor > 0")
        if self.kind == "top_k" and (self.k is None or self.k < 1):
            raise ValueError("top_k policy needs k >= 1")
        if self.floor_ms < 0:
            raise ValueError("floor_ms must be >= 0")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "absolute":
            d["absolute_ms"] = self.absolute_ms
        elif self.kind == "median_factor":
            d["factor"] = self.factor
        else:
            d["k"] = self.k
        d["floor_ms"] = self.floor_ms
        return d


def default_policy() -> ThresholdPolicy:
    return ThresholdPolicy(kind="median_factor", factor=1.1, floor_ms=5000)


class UnknownSession(KeyError):
    """Ground truth references a session the corpus does not contain."""


@dataclass(frozen=True)
class InterestTerm:
    stem: str
    total_ms: int
    rank: int
    # equals total_ms today; a named field so composite scores (e.g.
    # overlap-count boosts) can land without a schema change
    score: float


def threshold_for(policy: ThresholdPolicy, dwell_ms: Sequence[int]) -> float | None:
    """Effective dwell threshold for a candidate set; None for top_k."""
    if policy.kind == "absolute":
        return float(max(policy.absolute_ms, policy.floor_ms))
    if policy.kind == "median_factor":
        if not dwell_ms:
            return None
        return max(policy.factor * median(dwell_ms), float(policy.floor_ms))
    return None


def extract_interest(
    session: Session,
    cfg: NormalizationConfig,
    policy: ThresholdPolicy | None = None,
) -> list[InterestTerm]:
    """Ranked interest terms of one session under the given policy."""
    if policy is None:
        policy = default_policy()
    stems = cleaned_fixation_stems(session, cfg)
    candidates = sorted(
        stems,
        key=lambda s: (
            -session.fixations[s].total_ms,
            session.fixations[s].first_ms,
            s,
        ),
    )
    if policy.kind == "top_k":
        picked = [
            s
            for s in candidates[: policy.k]
            if session.fixations[s].total_ms >= policy.floor_ms
        ]
    else:
        threshold = threshold_for(
            policy, [session.fixations[s].total_ms for s in candidates]
        )
        if threshold is None:
            picked = []
        else:
            picked = [
                s for s in candidates if session.fixations[s].total_ms >= threshold
            ]
    return [
        InterestTerm(
            stem=s,
            total_ms=session.fixations[s].total_ms,
            rank=i + 1,
            score=float(session.fixations[s].total_ms),
        )
        for i, s in enumerate(picked)
    ]


@dataclass(frozen=True)
class SessionEval:
    session_id: str
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int
    empty_truth: bool


@dataclass(frozen=True)
class EvalReport:
    sessions: tuple[SessionEval, ...]
    macro_precision: float
    macro_recall: float
    macro_f1: float


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    # empty extraction -> precision 1; empty truth -> recall 1
    precision = tp / (tp + fp) if (tp + fp) else 1.0
    recall = tp / (tp + fn) if (tp + fn) else 1.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return precision, recall, f1


def evaluate_extraction(
    corpus: Corpus,
    truth: Mapping[str, Collection[str]],
    cfg: NormalizationConfig,
    policy: ThresholdPolicy | None = None,
) -> EvalReport:
    """Precision/recall/F1 per session plus unweighted macro averages.

    Evaluates exactly the sessions named in truth; raises UnknownSession if
    truth references a session the corpus lacks. Sessions with empty truth
    still count toward the macros (their recall is 1 by convention) and
    carry the empty_truth flag.
    """
    if policy is None:
        policy = default_policy()
    by_id = {s.session_id: s for s in corpus.sessions}
    evals = []
    for session_id in truth:
        session = by_id.get(session_id)
        if session is None:
            raise UnknownSession(f"truth references unknown session {session_id!r}")
        expected = set(truth[session_id])
        got = {t.stem for t in extract_interest(session, cfg, policy)}
        tp = len(got & expected)
        fp = len(got - expected)
        fn = len(expected - got)
        precision, recall, f1 = _prf(tp, fp, fn)
        evals.append(
            SessionEval(
                session_id=session.session_id,
                precision=precision,
                recall=recall,
                f1=f1,
                tp=tp,
                fp=fp,
                fn=fn,
                empty_truth=not expected,
            )
        )
    if not evals:
        raise ValueError("empty truth: nothing to evaluate")
    n = len(evals)
    return EvalReport(
        sessions=tuple(evals),
        macro_precision=sum(e.precision for e in evals) / n,
        macro_recall=sum(e.recall for e in evals) / n,
        macro_f1=sum(e.f1 for e in evals) / n,
    )
