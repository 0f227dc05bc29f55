"""Calendar-aligned monthly series and their arithmetic transforms.

The two units a series can carry are index levels (consumer price
indices, the news sentiment index) and percent changes. Transforms are
pure functions: they emit values only on months where their inputs
exist and surface gaps explicitly instead of interpolating.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    DataError,
    DomainError,
    MissingMonthsError,
    UnitError,
    ZeroDenominatorError,
)

INDEX_LEVEL = "index-level"
PERCENT = "percent"
UNITS = (INDEX_LEVEL, PERCENT)

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class MonthKey:
    """A calendar month. Ordering is chronological."""

    year: int
    month: int

    def __post_init__(self):
        if not isinstance(self.year, int) or not isinstance(self.month, int):
            raise DataError(f"MonthKey fields must be integers, got {self!r}")
        if not 1 <= self.month <= 12:
            raise DataError(f"month must be in 1..12, got {self.month}")

    @classmethod
    def parse(cls, text: str) -> MonthKey:
        m = _MONTH_RE.match(text.strip())
        if not m:
            raise DataError(f"expected YYYY-MM month, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def from_ordinal(cls, ordinal: int) -> MonthKey:
        year, month0 = divmod(ordinal, 12)
        return cls(year, month0 + 1)

    @property
    def ordinal(self) -> int:
        """Months since year 0; adjacent months differ by exactly 1."""
        return self.year * 12 + (self.month - 1)

    def shift(self, months: int) -> MonthKey:
        return MonthKey.from_ordinal(self.ordinal + months)

    def successor(self) -> MonthKey:
        return self.shift(1)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def months_between(start: MonthKey, end: MonthKey) -> int:
    """Signed month count from start to end."""
    return end.ordinal - start.ordinal


def month_range(start: MonthKey, end: MonthKey) -> list[MonthKey]:
    """Inclusive chronological range; empty when end precedes start."""
    return [MonthKey.from_ordinal(o) for o in range(start.ordinal, end.ordinal + 1)]


class MonthlySeries:
    """Named, chronologically ordered month -> value map.

    Keys must be strictly increasing; contiguity is not required.
    Instances are immutable after construction.
    """

    __slots__ = ("_name", "_unit", "_months", "_values", "_index")

    def __init__(
        self,
        name: str,
        points: Iterable[tuple[MonthKey, float]] | Mapping[MonthKey, float],
        unit: str = INDEX_LEVEL,
    ):
        if unit not in UNITS:
            raise DataError(f"unit must be one of {UNITS}, got {unit!r}")
        if isinstance(points, Mapping):
            pairs = list(points.items())
        else:
            pairs = list(points)
        months: list[MonthKey] = []
        values: list[float] = []
        previous: MonthKey | None = None
        for month, value in pairs:
            if not isinstance(month, MonthKey):
                raise DataError(f"series keys must be MonthKey, got {month!r}")
            if previous is not None and month <= previous:
                kind = "duplicate" if month == previous else "non-monotone"
                raise DataError(f"{kind} month {month} in series {name!r}")
            previous = month
            months.append(month)
            values.append(float(value))
        self._name = str(name)
        self._unit = unit
        self._months = tuple(months)
        self._values = tuple(values)
        self._index = {m: i for i, m in enumerate(months)}

    @property
    def name(self) -> str:
        return self._name

    @property
    def unit(self) -> str:
        return self._unit

    def months(self) -> tuple[MonthKey, ...]:
        return self._months

    def values(self) -> tuple[float, ...]:
        return self._values

    def items(self) -> Iterator[tuple[MonthKey, float]]:
        return iter(zip(self._months, self._values))

    def __len__(self) -> int:
        return len(self._months)

    def __contains__(self, month: MonthKey) -> bool:
        return month in self._index

    def __getitem__(self, month: MonthKey) -> float:
        try:
            return self._values[self._index[month]]
        except KeyError:
            raise MissingMonthsError(
                f"series {self._name!r} has no value", [month]
            ) from None

    def get(self, month: MonthKey, default=None):
        i = self._index.get(month)
        return default if i is None else self._values[i]

    def first_month(self) -> MonthKey:
        if not self._months:
            raise DataError(f"series {self._name!r} is empty")
        return self._months[0]

    def last_month(self) -> MonthKey:
        if not self._months:
            raise DataError(f"series {self._name!r} is empty")
        return self._months[-1]

    def restrict(self, start: MonthKey, end: MonthKey) -> MonthlySeries:
        """Sub-series on the inclusive window [start, end]."""
        pairs = [(m, v) for m, v in self.items() if start <= m <= end]
        return MonthlySeries(self._name, pairs, self._unit)

    def missing_months(self, months: Iterable[MonthKey]) -> list[MonthKey]:
        return [m for m in months if m not in self._index]

    def with_name(self, name: str) -> MonthlySeries:
        return MonthlySeries(name, zip(self._months, self._values), self._unit)

    def __repr__(self) -> str:
        span = f"{self._months[0]}..{self._months[-1]}" if self._months else "empty"
        return (
            f"MonthlySeries({self._name!r}, {len(self)} months [{span}], "
            f"unit={self._unit!r})"
        )


def pct_change(
    series: MonthlySeries,
    window: int = 12,
    *,
    on_zero: str = "error",
) -> MonthlySeries:
    """window-month percent change: 100 * (P_t / P_{t-window} - 1).

    Output is defined exactly on months t where both P_t and
    P_{t-window} exist. Months whose denominator is zero are collected
    and raised as ZeroDenominatorError; pass on_zero="skip" to drop
    them instead.
    """
    if not isinstance(window, int) or window < 1:
        raise DataError(f"window must be a positive integer, got {window!r}")
    if on_zero not in ("error", "skip"):
        raise DataError(f"on_zero must be 'error' or 'skip', got {on_zero!r}")
    if series.unit != INDEX_LEVEL:
        raise UnitError(
            f"pct_change expects an index-level series, got {series.unit!r}"
        )
    pairs: list[tuple[MonthKey, float]] = []
    zero_months: list[MonthKey] = []
    for month, value in series.items():
        base = series.get(month.shift(-window))
        if base is None:
            continue
        if base == 0.0:
            zero_months.append(month)
            continue
        pairs.append((month, 100.0 * (value / base - 1.0)))
    if zero_months and on_zero == "error":
        raise ZeroDenominatorError(
            f"pct_change of {series.name!r} (window {window}) hit zero "
            "denominators",
            zero_months,
        )
    return MonthlySeries(series.name, pairs, PERCENT)


def annualize(pi: float) -> float:
    """Compound a period percent rate to a yearly rate:
    100 * ((pi/100 + 1)^12 - 1)."""
    growth = pi / 100.0 + 1.0
    if growth <= 0.0:
        raise DomainError(f"cannot annualize rate {pi} <= -100")
    return 100.0 * (growth**12 - 1.0)


def deannualize(pi_ann: float) -> float:
    """Inverse of annualize: 100 * ((pi_ann/100 + 1)^(1/12) - 1)."""
    growth = pi_ann / 100.0 + 1.0
    if growth <= 0.0:
        raise DomainError(f"cannot deannualize rate {pi_ann} <= -100")
    return 100.0 * (growth ** (1.0 / 12.0) - 1.0)


def moving_average_predictor(
    pi_series: MonthlySeries, t: MonthKey, lags: int = 12
) -> float:
    """Mean of the lags values preceding month t (t itself excluded).

    Used to stand in for a not-yet-released percent change. All lag
    months must be present.
    """
    if not isinstance(lags, int) or lags < 1:
        raise DataError(f"lags must be a positive integer, got {lags!r}")
    wanted = [t.shift(-k) for k in range(1, lags + 1)]
    absent = pi_series.missing_months(wanted)
    if absent:
        raise MissingMonthsError(
            f"moving average for {pi_series.name!r} at {t} lacks months",
            sorted(absent),
        )
    # fsum: exactly rounded, so the mean is order-independent.
    return math.fsum(pi_series[m] for m in wanted) / lags
