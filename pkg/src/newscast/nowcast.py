"""Inflation nowcasting models: specification, fitting, backtesting.

A model regresses the monthly CPI percent change on percent changes of
other indices over a training window. At nowcast time the regressors
that are not yet released (the price components) are imputed with the
mean of their previous 12 values; the news sentiment regressor is
observable in real time and enters with its exact value for the target
month.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .base import ParamMixin, check_is_fitted
from .errors import ConfigError, DataError, MissingMonthsError
from .ols import RegressionResult, fit_ols
from .timeseries import (
    MonthKey,
    MonthlySeries,
    annualize,
    month_range,
    months_between,
    moving_average_predictor,
)

TARGET_KEY = "cpi"
NEWS_KEY = "news"

#: Table labels for each regressor identifier.
REGRESSOR_LABELS = {
    "ccpi": "pi-CCPI",
    "fcpi": "pi-FCPI",
    "gas": "pi-Gasoline",
    "news": "pi-NEWS",
}
DEPENDENT_LABEL = "CPI"
INTERCEPT_LABEL = "const"


@dataclass(frozen=True)
class ModelSpec:
    """Named regressor set; an intercept is always included."""

    name: str
    regressors: tuple[str, ...]

    def __post_init__(self):
        if not self.regressors:
            raise ConfigError(f"model {self.name!r} needs at least one regressor")
        unknown = [r for r in self.regressors if r not in REGRESSOR_LABELS]
        if unknown:
            raise ConfigError(
                f"model {self.name!r} has unknown regressors {unknown}; "
                f"known: {sorted(REGRESSOR_LABELS)}"
            )
        if len(set(self.regressors)) != len(self.regressors):
            raise ConfigError(f"model {self.name!r} repeats a regressor")

    @property
    def coefficient_names(self) -> tuple[str, ...]:
        return (INTERCEPT_LABEL,) + tuple(
            REGRESSOR_LABELS[r] for r in self.regressors
        )


MODEL_SPECS: dict[str, ModelSpec] = {
    spec.name: spec
    for spec in (
        ModelSpec("fed", ("ccpi", "fcpi", "gas")),
        ModelSpec("news", ("news",)),
        ModelSpec("fed+news", ("ccpi", "fcpi", "gas", "news")),
        ModelSpec("fed-gas+news", ("ccpi", "fcpi", "news")),
        ModelSpec("ccpi+news", ("ccpi", "news")),
    )
}


def resolve_spec(spec: str | ModelSpec) -> ModelSpec:
    if isinstance(spec, ModelSpec):
        return spec
    try:
        return MODEL_SPECS[spec]
    except KeyError:
        raise ConfigError(
            f"unknown model spec {spec!r}; known: {sorted(MODEL_SPECS)}"
        ) from None


def _require_months(
    series: MonthlySeries, months: Sequence[MonthKey], role: str
) -> None:
    absent = series.missing_months(months)
    if absent:
        raise MissingMonthsError(
            f"{role} series {series.name!r} lacks months", sorted(absent)
        )


def _bundle_series(
    data: Mapping[str, MonthlySeries], key: str
) -> MonthlySeries:
    try:
        return data[key]
    except KeyError:
        raise DataError(
            f"series bundle has no {key!r} entry; got {sorted(data)}"
        ) from None


def fit_model(
    spec: str | ModelSpec,
    data: Mapping[str, MonthlySeries],
    train_start: MonthKey,
    train_end: MonthKey,
    *,
    robust: bool = False,
) -> RegressionResult:
    """OLS fit of the spec over [train_start, train_end] inclusive.

    data maps series identifiers (cpi, ccpi, fcpi, gas, news) to
    percent-change series; every regressor and the target must cover
    the whole window.
    """
    spec = resolve_spec(spec)
    if train_end < train_start:
        raise DataError(f"training window {train_start}..{train_end} is reversed")
    months = month_range(train_start, train_end)
    if len(months) < len(spec.regressors) + 2:
        raise DataError(
            f"window {train_start}..{train_end} has {len(months)} months; "
            f"model {spec.name!r} needs at least {len(spec.regressors) + 2}"
        )
    target = _bundle_series(data, TARGET_KEY)
    _require_months(target, months, "target")
    y = np.array([target[m] for m in months])
    columns = [np.ones(len(months))]
    for key in spec.regressors:
        series = _bundle_series(data, key)
        _require_months(series, months, "regressor")
        columns.append(np.array([series[m] for m in months]))
    X = np.column_stack(columns)
    return fit_ols(y, X, names=spec.coefficient_names, robust=robust)


def nowcast(
    spec: str | ModelSpec,
    fitted: RegressionResult,
    data: Mapping[str, MonthlySeries],
    t: MonthKey,
    *,
    lags: int = 12,
) -> float:
    """Nowcast of the target percent change for month t.

    Price regressors are imputed with the moving average of their lags
    preceding values; the news regressor uses its exact value at t.
    """
    spec = resolve_spec(spec)
    expected = spec.coefficient_names
    if fitted.names != expected:
        raise DataError(
            f"fitted coefficients {fitted.names} do not match model "
            f"{spec.name!r} ({expected})"
        )
    value = fitted.coefficient(INTERCEPT_LABEL)
    for key in spec.regressors:
        series = _bundle_series(data, key)
        if key == NEWS_KEY:
            x = series[t]
        else:
            x = moving_average_predictor(series, t, lags)
        value += fitted.coefficient(REGRESSOR_LABELS[key]) * x
    return value


@dataclass(frozen=True)
class ForecastSeries:
    """Aligned nowcasts and realizations, monthly and annualized."""

    model: str
    months: tuple[MonthKey, ...]
    nowcasts: tuple[float, ...]
    nowcasts_annualized: tuple[float, ...]
    realized: tuple[float, ...]
    realized_annualized: tuple[float, ...]

    def __post_init__(self):
        n = len(self.months)
        for name in ("nowcasts", "nowcasts_annualized", "realized",
                     "realized_annualized"):
            if len(getattr(self, name)) != n:
                raise DataError(f"{name} length differs from months")

    def __len__(self) -> int:
        return len(self.months)

    def errors(self, *, annualized: bool = True) -> np.ndarray:
        """Forecast errors, realized minus nowcast."""
        if annualized:
            return np.array(self.realized_annualized) - np.array(
                self.nowcasts_annualized
            )
        return np.array(self.realized) - np.array(self.nowcasts)


BACKTEST_SCHEMES = ("fixed", "rolling")


def backtest(
    spec: str | ModelSpec,
    data: Mapping[str, MonthlySeries],
    train_window: tuple[MonthKey, MonthKey],
    eval_window: tuple[MonthKey, MonthKey],
    scheme: str = "fixed",
    *,
    lags: int = 12,
    robust: bool = False,
) -> ForecastSeries:
    """Nowcast every month of eval_window and pair with realizations.

    fixed fits once on train_window; rolling refits for each target
    month on the trailing window of the same length (so the first
    rolling fit coincides with the fixed one when the windows abut).
    """
    spec = resolve_spec(spec)
    if scheme not in BACKTEST_SCHEMES:
        raise ConfigError(
            f"scheme must be one of {BACKTEST_SCHEMES}, got {scheme!r}"
        )
    train_start, train_end = train_window
    eval_start, eval_end = eval_window
    if train_end < train_start or eval_end < eval_start:
        raise DataError("backtest windows must be chronological")
    if train_end >= eval_start:
        raise DataError(
            f"training window {train_start}..{train_end} overlaps or "
            f"follows evaluation window {eval_start}..{eval_end}"
        )
    window_length = months_between(train_start, train_end) + 1

    fitted = None
    if scheme == "fixed":
        fitted = fit_model(spec, data, train_start, train_end, robust=robust)

    target = _bundle_series(data, TARGET_KEY)
    eval_months = month_range(eval_start, eval_end)
    _require_months(target, eval_months, "realized target")

    months, casts, casts_ann, real, real_ann = [], [], [], [], []
    for t in eval_months:
        if scheme == "rolling":
            fitted = fit_model(
                spec, data, t.shift(-window_length), t.shift(-1), robust=robust
            )
        predicted = nowcast(spec, fitted, data, t, lags=lags)
        actual = target[t]
        months.append(t)
        casts.append(predicted)
        casts_ann.append(annualize(predicted))
        real.append(actual)
        real_ann.append(annualize(actual))
    return ForecastSeries(
        model=spec.name,
        months=tuple(months),
        nowcasts=tuple(casts),
        nowcasts_annualized=tuple(casts_ann),
        realized=tuple(real),
        realized_annualized=tuple(real_ann),
    )


class InflationNowcaster(ParamMixin):
    """Estimator wrapper: fit a model spec once, then nowcast months.

    Parameters
    ----------
    spec : str
        Model name (fed, news, fed+news, fed-gas+news, ccpi+news).
    lags : int
        Moving-average length for imputed regressors.
    robust : bool
        Use HC1 standard errors in the underlying fit.
    """

    def __init__(self, spec: str = "fed+news", lags: int = 12, robust: bool = False):
        self.spec = spec
        self.lags = lags
        self.robust = robust

    def fit(
        self,
        data: Mapping[str, MonthlySeries],
        train_window: tuple[MonthKey, MonthKey],
    ) -> "InflationNowcaster":
        spec = resolve_spec(self.spec)
        self.result_ = fit_model(
            spec, data, train_window[0], train_window[1], robust=self.robust
        )
        self.spec_ = spec
        self.data_ = dict(data)
        return self

    def predict(
        self,
        months: Iterable[MonthKey],
        data: Mapping[str, MonthlySeries] | None = None,
    ) -> list[float]:
        check_is_fitted(self, "result_")
        bundle = self.data_ if data is None else data
        return [
            nowcast(self.spec_, self.result_, bundle, t, lags=self.lags)
            for t in months
        ]
