"""Monthly aggregation of article scores and the cumulative NEWS index.

The index level for month t is the running sum of monthly mean article
scores up to and including t (a prefix sum, so its first differences
recover the monthly means). Months without articles carry the previous
level forward and are flagged, never interpolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .base import ParamMixin, check_is_fitted
from .errors import ConfigError, DataError, ZeroDenominatorError
from .sentiment import ScoredArticle
from .timeseries import (
    INDEX_LEVEL,
    PERCENT,
    MonthKey,
    MonthlySeries,
    month_range,
    pct_change,
)

INDEX_NAME = "NEWS"
PI_MODES = ("pct-change", "level-diff")


@dataclass(frozen=True)
class MonthlySentiment:
    """Sample-mean sentiment of one month's articles."""

    month: MonthKey
    mean_score: float
    article_count: int

    def __post_init__(self):
        if self.article_count < 1:
            raise DataError(
                f"article_count must be positive, got {self.article_count}"
            )
        if not -1.0 <= self.mean_score <= 1.0:
            raise DataError(f"mean score {self.mean_score} outside [-1, 1]")


@dataclass(frozen=True)
class NewsIndex:
    """Cumulative sentiment index plus per-month provenance.

    counts records how many articles fed each month of the series;
    gap_months lists the months that had none and therefore carry the
    previous level forward.
    """

    series: MonthlySeries
    counts: Mapping[MonthKey, int] = field(repr=False)
    gap_months: tuple[MonthKey, ...] = ()


def monthly_aggregate(
    articles: Iterable[ScoredArticle], *, day_cutoff: int | None = None
) -> list[MonthlySentiment]:
    """Group articles by month and take the sample mean of their scores.

    day_cutoff, when set, keeps only articles dated on or before that
    day of the month (the "news available by mid-month" timing). Output
    is chronological with one entry per month that has articles; means
    use exactly rounded summation, so article order never matters.
    """
    if day_cutoff is not None and not 1 <= day_cutoff <= 31:
        raise ConfigError(f"day_cutoff must be in 1..31, got {day_cutoff}")
    retained: dict[MonthKey, list[float]] = {}
    total = 0
    for article in articles:
        total += 1
        if day_cutoff is not None:
            if article.day is None:
                raise DataError(
                    f"article {article.id!r} has no day of month; cannot "
                    f"apply day_cutoff={day_cutoff}"
                )
            if article.day > day_cutoff:
                continue
        retained.setdefault(article.date, []).append(article.score)
    if total == 0:
        raise DataError("monthly_aggregate needs at least one article")
    if not retained:
        raise DataError(
            f"no articles on or before day {day_cutoff} of any month"
        )
    return [
        MonthlySentiment(
            month=month,
            mean_score=math.fsum(scores) / len(scores),
            article_count=len(scores),
        )
        for month, scores in sorted(retained.items())
    ]


def build_news_index(monthly: Sequence[MonthlySentiment]) -> NewsIndex:
    """Prefix-sum the monthly means into the cumulative index.

    Input must be chronological. Calendar months between the first and
    last entry that carry no articles get the previous level (their
    mean is treated as 0) and are flagged in gap_months, so the output
    series is contiguous.
    """
    if not monthly:
        raise DataError("build_news_index needs at least one monthly mean")
    for earlier, later in zip(monthly, monthly[1:]):
        if later.month <= earlier.month:
            raise DataError(
                f"monthly means out of order at {later.month} "
                f"(follows {earlier.month})"
            )
    by_month = {m.month: m for m in monthly}
    pairs: list[tuple[MonthKey, float]] = []
    counts: dict[MonthKey, int] = {}
    gaps: list[MonthKey] = []
    level = 0.0
    for month in month_range(monthly[0].month, monthly[-1].month):
        entry = by_month.get(month)
        if entry is None:
            gaps.append(month)
            counts[month] = 0
        else:
            level += entry.mean_score
            counts[month] = entry.article_count
        pairs.append((month, level))
    series = MonthlySeries(INDEX_NAME, pairs, INDEX_LEVEL)
    return NewsIndex(series=series, counts=counts, gap_months=tuple(gaps))


def news_pi(
    index: NewsIndex | MonthlySeries,
    window: int = 12,
    *,
    mode: str = "pct-change",
) -> MonthlySeries:
    """Percent-change transform of the NEWS index.

    The cumulative index can touch or cross zero, which makes the
    ratio-based transform meaningless for the affected months. In the
    default pct-change mode those months raise ZeroDenominatorError
    listing every offender. The level-diff mode sidesteps the ratio by
    emitting plain level differences (P_t - P_{t-window}); because mean
    scores live in [-1, 1] the differences are on a comparable small
    scale and serve as a rate proxy, labeled percent for uniformity.
    """
    series = index.series if isinstance(index, NewsIndex) else index
    if mode not in PI_MODES:
        raise ConfigError(f"mode must be one of {PI_MODES}, got {mode!r}")
    out_name = f"pi-{series.name}"
    if mode == "level-diff":
        pairs = []
        for month, value in series.items():
            base = series.get(month.shift(-window))
            if base is not None:
                pairs.append((month, value - base))
        return MonthlySeries(out_name, pairs, PERCENT)
    zero: list[MonthKey] = []
    crossing: list[MonthKey] = []
    for month, value in series.items():
        base = series.get(month.shift(-window))
        if base is None:
            continue
        if base == 0.0:
            zero.append(month)
        elif value * base < 0.0:
            crossing.append(month)
    if zero or crossing:
        parts = []
        if zero:
            parts.append(f"zero denominators at {[str(m) for m in zero]}")
        if crossing:
            parts.append(
                f"sign-crossing ratios at {[str(m) for m in crossing]}"
            )
        raise ZeroDenominatorError(
            f"pct-change of the {series.name!r} index is ill-defined: "
            + "; ".join(parts)
            + "; use level-diff mode or repair the index",
            zero + crossing,
        )
    return pct_change(series, window).with_name(out_name)


class NewsIndexBuilder(ParamMixin):
    """Estimator wrapper over aggregate -> prefix-sum -> transform.

    Parameters
    ----------
    day_cutoff : int or None
        Keep only articles on or before this day of month.
    window : int
        Percent-change window for pi_series().
    mode : str
        "pct-change" or "level-diff" transform of the index.
    """

    def __init__(
        self,
        day_cutoff: int | None = None,
        window: int = 12,
        mode: str = "pct-change",
    ):
        self.day_cutoff = day_cutoff
        self.window = window
        self.mode = mode

    def fit(self, articles: Iterable[ScoredArticle], y=None) -> "NewsIndexBuilder":
        self.monthly_ = monthly_aggregate(articles, day_cutoff=self.day_cutoff)
        self.index_ = build_news_index(self.monthly_)
        return self

    def transform(self, articles: Iterable[ScoredArticle]) -> NewsIndex:
        return build_news_index(
            monthly_aggregate(articles, day_cutoff=self.day_cutoff)
        )

    def fit_transform(self, articles: Iterable[ScoredArticle], y=None) -> NewsIndex:
        return self.fit(articles).index_

    def pi_series(self) -> MonthlySeries:
        check_is_fitted(self, "index_")
        return news_pi(self.index_, self.window, mode=self.mode)
