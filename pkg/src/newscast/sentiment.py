"""Article filtering, sentiment scores, and classification metrics.

Labels are the 3-way scheme -1 (prices expected to fall), 0 (neutral),
+1 (prices expected to rise). Probability vectors over these labels are
turned into scalar scores either by taking the most probable label
(argmax) or the expectation of the label (polarity).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .base import ParamMixin
from .errors import ConfigError, DataError, InvalidProbabilityError
from .timeseries import MonthKey

LABELS = (-1, 0, 1)

#: Phrases an article must mention to count as inflation-related.
DEFAULT_LEXICON = (
    "Inflation",
    "Gasoline prices",
    "Food prices",
    "Deflation",
    "Consumer price index",
    "CPI",
    "Core CPI",
)

PROB_SUM_TOL = 1e-6

_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class SentimentProbs:
    """Probabilities for the labels (-1, 0, +1), in that order."""

    p_down: float
    p_neutral: float
    p_up: float

    def __post_init__(self):
        for name, p in (
            ("p_down", self.p_down),
            ("p_neutral", self.p_neutral),
            ("p_up", self.p_up),
        ):
            if not 0.0 <= p <= 1.0:
                raise InvalidProbabilityError(f"{name}={p} outside [0, 1]")
        total = self.p_down + self.p_neutral + self.p_up
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise InvalidProbabilityError(
                f"probabilities sum to {total}, not 1 within {PROB_SUM_TOL}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p_down, self.p_neutral, self.p_up)


@dataclass(frozen=True)
class Article:
    """A dated news item, before scoring.

    Either text or a probability vector (or both) may be present,
    depending on which input file produced it. day is the day of
    month when known.
    """

    id: str
    date: MonthKey
    day: int | None = None
    text: str | None = None
    probs: SentimentProbs | None = None

    def __post_init__(self):
        if self.day is not None and not 1 <= self.day <= 31:
            raise DataError(f"day of month must be in 1..31, got {self.day}")


@dataclass(frozen=True)
class ScoredArticle(Article):
    """An article with its scalar sentiment score in [-1, 1]."""

    score: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if not -1.0 <= self.score <= 1.0:
            raise DataError(f"score {self.score} outside [-1, 1]")


@dataclass(frozen=True)
class LabeledArticle:
    id: str
    date: MonthKey
    gold_label: int
    day: int | None = None
    text: str | None = None

    def __post_init__(self):
        if self.gold_label not in LABELS:
            raise DataError(f"gold label must be one of {LABELS}")


def normalize_whitespace(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def lexicon_filter(text: str, lexicon: Iterable[str] = DEFAULT_LEXICON) -> bool:
    """True iff any lexicon phrase occurs in the text.

    Matching is case-insensitive, phrase-level substring on
    whitespace-normalized text, so multi-word phrases match across
    line breaks and extra spaces.
    """
    phrases = [normalize_whitespace(p).lower() for p in lexicon]
    phrases = [p for p in phrases if p]
    if not phrases:
        raise ConfigError("lexicon must contain at least one phrase")
    haystack = normalize_whitespace(text).lower()
    if not haystack:
        return False
    return any(p in haystack for p in phrases)


def polarity_score(probs: SentimentProbs) -> float:
    """Expected label under the probability vector: p_up - p_down."""
    return probs.p_up - probs.p_down


def argmax_score(probs: SentimentProbs) -> int:
    """Label of the strictly largest probability.

    Tie rule: any tie involving the neutral label resolves to neutral,
    and a down/up tie also resolves to 0, so a directional label wins
    only when strictly most probable.
    """
    if probs.p_up > probs.p_down and probs.p_up > probs.p_neutral:
        return 1
    if probs.p_down > probs.p_up and probs.p_down > probs.p_neutral:
        return -1
    return 0


#: Word lists and constants for the deterministic keyword baseline.
#: These are a transparent stand-in so the pipeline runs end to end
#: without an external classifier, not a claim about accuracy.
DEFAULT_UP_LEXICON = (
    "rise", "rises", "rose", "risen", "rising",
    "surge", "surges", "surged",
    "soar", "soars", "soared",
    "jump", "jumps", "jumped",
    "climb", "climbs", "climbed",
    "accelerate", "accelerates", "accelerated",
    "spike", "spikes", "spiked",
    "record high", "higher", "hot",
)
DEFAULT_DOWN_LEXICON = (
    "fall", "falls", "fell", "fallen", "falling",
    "drop", "drops", "dropped",
    "decline", "declines", "declined",
    "ease", "eases", "eased", "easing",
    "cool", "cools", "cooled", "cooling",
    "slow", "slows", "slowed", "slowing",
    "deflation", "lower",
)
DEFAULT_BASELINE_GAIN = 1.0
DEFAULT_BASELINE_CAP = 8


def baseline_classify(
    text: str,
    *,
    up_lexicon: Iterable[str] = DEFAULT_UP_LEXICON,
    down_lexicon: Iterable[str] = DEFAULT_DOWN_LEXICON,
    gain: float = DEFAULT_BASELINE_GAIN,
    cap: int = DEFAULT_BASELINE_CAP,
) -> SentimentProbs:
    """Deterministic keyword-polarity heuristic.

    Counts distinct up- and down-lexicon phrases present in the text
    (same matching rule as lexicon_filter) and maps the two counts
    through a bounded odds transform: with u and d the capped counts,

        (p_down, p_neutral, p_up) = (gain*d, 1, gain*u) / (1 + gain*u + gain*d)

    No evidence yields exactly (0, 1, 0); probabilities never reach 1.
    """
    if gain <= 0:
        raise ConfigError(f"baseline gain must be positive, got {gain}")
    if cap < 1:
        raise ConfigError(f"baseline cap must be >= 1, got {cap}")
    haystack = normalize_whitespace(text).lower()

    def hits(lexicon: Iterable[str]) -> int:
        phrases = {normalize_whitespace(p).lower() for p in lexicon}
        phrases.discard("")
        if not haystack:
            return 0
        return sum(1 for p in phrases if p in haystack)

    up = min(hits(up_lexicon), cap)
    down = min(hits(down_lexicon), cap)
    odds_up = gain * up
    odds_down = gain * down
    z = 1.0 + odds_up + odds_down
    return SentimentProbs(p_down=odds_down / z, p_neutral=1.0 / z, p_up=odds_up / z)


@dataclass(frozen=True)
class ClassificationReport:
    """Per-class and support-weighted F1 for the 3-way labels."""

    per_class_f1: dict[int, float]
    support: dict[int, int]
    weighted_f1: float


def classification_report(
    predictions: Sequence[int], gold: Sequence[int]
) -> ClassificationReport:
    """F1 per class plus the support-weighted average.

    Zero-division convention: precision, recall, or F1 with an empty
    denominator is 0. A class absent from both predictions and gold has
    support 0 and therefore no weight in the average.
    """
    if len(predictions) != len(gold):
        raise DataError(
            f"length mismatch: {len(predictions)} predictions vs {len(gold)} gold"
        )
    if not gold:
        raise DataError("classification_report needs at least one pair")
    for value in list(predictions) + list(gold):
        if value not in LABELS:
            raise DataError(f"label {value!r} not in {LABELS}")
    per_class_f1: dict[int, float] = {}
    support: dict[int, int] = {}
    for label in LABELS:
        tp = sum(1 for p, g in zip(predictions, gold) if p == label and g == label)
        fp = sum(1 for p, g in zip(predictions, gold) if p == label and g != label)
        fn = sum(1 for p, g in zip(predictions, gold) if p != label and g == label)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = (
            2.0 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        per_class_f1[label] = f1
        support[label] = tp + fn
    total = sum(support.values())
    weighted = sum(per_class_f1[c] * support[c] for c in LABELS) / total
    return ClassificationReport(
        per_class_f1=per_class_f1, support=support, weighted_f1=weighted
    )


class SentimentScorer(ParamMixin):
    """Stateless transformer from probability vectors to scalar scores.

    Parameters
    ----------
    score : str
        "polarity" (expected label, default) or "argmax" (most
        probable label).
    """

    def __init__(self, score: str = "polarity"):
        self.score = score

    def _score_fn(self):
        if self.score == "polarity":
            return polarity_score
        if self.score == "argmax":
            return lambda probs: float(argmax_score(probs))
        raise ConfigError(f"score must be 'polarity' or 'argmax', got {self.score!r}")

    def fit(self, X=None, y=None) -> "SentimentScorer":
        self._score_fn()
        return self

    def score_probs(self, probs: SentimentProbs) -> float:
        return self._score_fn()(probs)

    def transform(self, articles: Iterable[Article]) -> list[ScoredArticle]:
        fn = self._score_fn()
        scored = []
        for a in articles:
            if a.probs is None:
                raise DataError(f"article {a.id!r} has no probabilities to score")
            scored.append(
                ScoredArticle(
                    id=a.id,
                    date=a.date,
                    day=a.day,
                    text=a.text,
                    probs=a.probs,
                    score=fn(a.probs),
                )
            )
        return scored

    def fit_transform(self, articles: Iterable[Article], y=None) -> list[ScoredArticle]:
        return self.fit().transform(articles)


def rescore(article: ScoredArticle, score: float) -> ScoredArticle:
    """Copy of an article with a replaced score (test and scaling aid)."""
    return replace(article, score=score)
