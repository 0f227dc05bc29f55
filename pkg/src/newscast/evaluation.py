"""Forecast accuracy metrics and the equal-predictive-ability test.

Losses are squared errors throughout. The Giacomini-White test works
on the loss differential d_t = e_A(t)^2 - e_B(t)^2: the unconditional
variant asks whether its mean is zero, the conditional variant whether
yesterday's differential predicts today's.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .errors import DataError, DegenerateLossError
from .nowcast import ForecastSeries
from .timeseries import MonthKey

GW_VARIANTS = ("unconditional", "conditional-lag1")
RMSE_UNITS = ("fraction", "percent")


def rmse(forecasts: Sequence[float], realized: Sequence[float]) -> float:
    """Root mean squared forecast error."""
    forecasts = np.asarray(forecasts, dtype=float)
    realized = np.asarray(realized, dtype=float)
    if forecasts.shape != realized.shape or forecasts.ndim != 1:
        raise DataError(
            f"rmse needs two equal-length vectors, got shapes "
            f"{forecasts.shape} and {realized.shape}"
        )
    if forecasts.size == 0:
        raise DataError("rmse of empty vectors is undefined")
    return float(np.sqrt(np.mean((forecasts - realized) ** 2)))


@dataclass(frozen=True)
class LossDifferential:
    """Squared-error loss differences of two models on common months."""

    months: tuple[MonthKey, ...]
    d: np.ndarray

    def __post_init__(self):
        if len(self.months) != len(self.d):
            raise DataError("months and d lengths differ")
        if len(self.d) < 2:
            raise DataError("loss differential needs at least 2 months")


def loss_differential(
    a: ForecastSeries, b: ForecastSeries, *, annualized: bool = True
) -> LossDifferential:
    """d_t = e_A(t)^2 - e_B(t)^2 on the months both series cover."""
    common = [m for m in a.months if m in set(b.months)]
    if len(common) < 2:
        raise DataError(
            f"models {a.model!r} and {b.model!r} share {len(common)} "
            "months; need at least 2"
        )
    index_a = {m: i for i, m in enumerate(a.months)}
    index_b = {m: i for i, m in enumerate(b.months)}
    ea = a.errors(annualized=annualized)
    eb = b.errors(annualized=annualized)
    d = np.array(
        [ea[index_a[m]] ** 2 - eb[index_b[m]] ** 2 for m in common]
    )
    return LossDifferential(months=tuple(common), d=d)


@dataclass(frozen=True)
class GWResult:
    statistic: float
    df: int
    p_value: float
    variant: str
    n: int
    mean_differential: float


def _bartlett_variance(d: np.ndarray, truncation_lag: int) -> float:
    """Long-run variance with Bartlett weights; lag 0 is the ML variance."""
    n = len(d)
    centered = d - d.mean()
    gamma0 = float(centered @ centered) / n
    variance = gamma0
    for j in range(1, truncation_lag + 1):
        gamma_j = float(centered[j:] @ centered[:-j]) / n
        variance += 2.0 * (1.0 - j / (truncation_lag + 1)) * gamma_j
    return variance


def giacomini_white(
    errors_a: Sequence[float],
    errors_b: Sequence[float],
    variant: str = "unconditional",
    *,
    truncation_lag: int = 0,
) -> GWResult:
    """Equal predictive ability test on two forecast-error sequences.

    unconditional: statistic = n * dbar^2 / var(d) with a Bartlett
    long-run variance (truncation_lag 0 suits one-step forecasts whose
    differential is serially uncorrelated under the null), chi-square
    with 1 df. conditional-lag1: regress d_t on (1, d_{t-1}); statistic
    is (n-1) times the uncentered R-squared, chi-square with 2 df.

    A differential with zero variance is degenerate: it means the two
    error sequences are copies (statistic 0, p 1) or differ by a
    constant, which signals duplicated inputs and raises.
    """
    if variant not in GW_VARIANTS:
        raise DataError(f"variant must be one of {GW_VARIANTS}, got {variant!r}")
    a = np.asarray(errors_a, dtype=float)
    b = np.asarray(errors_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DataError(
            f"error sequences must be equal-length vectors, got shapes "
            f"{a.shape} and {b.shape}"
        )
    n = a.size
    minimum = 8 if variant == "unconditional" else 9
    if n < minimum:
        raise DataError(f"{variant} variant needs n >= {minimum}, got {n}")
    if truncation_lag < 0 or truncation_lag >= n:
        raise DataError(
            f"truncation_lag must be in 0..{n - 1}, got {truncation_lag}"
        )
    d = a**2 - b**2
    dbar = float(d.mean())

    if np.all(d == d[0]):
        if d[0] == 0.0:
            return GWResult(0.0, 1 if variant == "unconditional" else 2,
                            1.0, variant, n, 0.0)
        raise DegenerateLossError(
            f"loss differential is the constant {d[0]}: zero variance "
            "with non-zero mean (duplicated forecasts?)"
        )

    if variant == "unconditional":
        variance = _bartlett_variance(d, truncation_lag)
        if variance <= 0.0:
            raise DegenerateLossError(
                "long-run variance of the loss differential is not positive; "
                "try a smaller truncation lag"
            )
        statistic = n * dbar**2 / variance
        df = 1
    else:
        response = d[1:]
        instruments = np.column_stack([np.ones(n - 1), d[:-1]])
        coef, *_ = np.linalg.lstsq(instruments, response, rcond=None)
        ssr = float(np.sum((response - instruments @ coef) ** 2))
        tss = float(response @ response)
        r2_uncentered = 1.0 - ssr / tss if tss > 0.0 else 0.0
        statistic = (n - 1) * r2_uncentered
        df = 2
    p_value = float(stats.chi2.sf(statistic, df))
    return GWResult(float(statistic), df, p_value, variant, n, dbar)


def gw_from_forecasts(
    a: ForecastSeries,
    b: ForecastSeries,
    variant: str = "unconditional",
    *,
    annualized: bool = True,
    unit: str = "fraction",
    truncation_lag: int = 0,
) -> GWResult:
    """giacomini_white on the aligned errors of two forecast series."""
    diff = loss_differential(a, b, annualized=annualized)
    scale = 0.01 if unit == "fraction" else 1.0
    index_a = {m: i for i, m in enumerate(a.months)}
    index_b = {m: i for i, m in enumerate(b.months)}
    ea = a.errors(annualized=annualized) * scale
    eb = b.errors(annualized=annualized) * scale
    return giacomini_white(
        [ea[index_a[m]] for m in diff.months],
        [eb[index_b[m]] for m in diff.months],
        variant,
        truncation_lag=truncation_lag,
    )


@dataclass(frozen=True)
class ModelEvaluation:
    model: str
    rmse: float
    gw: GWResult | None  # None for the baseline row


@dataclass(frozen=True)
class EvaluationReport:
    """Per-model RMSE plus each model's GW comparison to the baseline."""

    entries: tuple[ModelEvaluation, ...]
    baseline: str
    variant: str
    unit: str
    n_months: int


def evaluate_forecasts(
    forecasts: Sequence[ForecastSeries],
    *,
    variant: str = "unconditional",
    unit: str = "fraction",
    annualized: bool = True,
    truncation_lag: int = 0,
) -> EvaluationReport:
    """RMSE per model and GW tests of each model against the first.

    RMSE is computed on annualized values by default; unit "fraction"
    divides percent values by 100 (so an RMSE printed as 0.0409 means
    4.09 percentage points of annualized inflation), "percent" leaves
    them as-is.
    """
    if not forecasts:
        raise DataError("evaluate_forecasts needs at least one model")
    if unit not in RMSE_UNITS:
        raise DataError(f"unit must be one of {RMSE_UNITS}, got {unit!r}")
    names = [f.model for f in forecasts]
    if len(set(names)) != len(names):
        raise DataError(f"duplicate model names in evaluation: {names}")
    scale = 0.01 if unit == "fraction" else 1.0
    baseline = forecasts[0]
    entries = []
    for series in forecasts:
        if annualized:
            predicted = np.array(series.nowcasts_annualized) * scale
            actual = np.array(series.realized_annualized) * scale
        else:
            predicted = np.array(series.nowcasts) * scale
            actual = np.array(series.realized) * scale
        gw = None
        if series is not baseline:
            gw = gw_from_forecasts(
                baseline,
                series,
                variant,
                annualized=annualized,
                unit=unit,
                truncation_lag=truncation_lag,
            )
        entries.append(
            ModelEvaluation(model=series.model, rmse=rmse(predicted, actual), gw=gw)
        )
    return EvaluationReport(
        entries=tuple(entries),
        baseline=baseline.model,
        variant=variant,
        unit=unit,
        n_months=len(baseline),
    )
