"""Ordinary least squares with classical inference diagnostics.

Built directly on a column-pivoted QR factorization so rank problems
fail loudly with the names of the offending columns instead of
producing a silently unstable solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg, stats

from .errors import DataError, SingularDesignError

# Relative pivot-magnitude tolerance below which a column counts as
# linearly dependent on the ones before it.
RANK_TOLERANCE = 1e-10

STAR_THRESHOLDS = ((0.01, "***"), (0.05, "**"), (0.1, "*"))


def significance_stars(p_value: float) -> str:
    """Star tier for a p-value: * p<0.1, ** p<0.05, *** p<0.01."""
    if np.isnan(p_value):
        return ""
    for threshold, stars in STAR_THRESHOLDS:
        if p_value < threshold:
            return stars
    return ""


@dataclass(frozen=True)
class RegressionResult:
    """Coefficients with full inferential diagnostics.

    Arrays are aligned with names. F statistic tests all non-intercept
    coefficients jointly and is NaN for an intercept-only design.
    """

    names: tuple[str, ...]
    estimates: np.ndarray
    standard_errors: np.ndarray
    t_statistics: np.ndarray
    p_values: np.ndarray
    r_squared: float
    adjusted_r_squared: float
    residual_std_error: float
    f_statistic: float
    f_p_value: float
    n_obs: int
    df_residual: int
    robust: bool
    residuals: np.ndarray = field(repr=False)

    @property
    def stars(self) -> tuple[str, ...]:
        return tuple(significance_stars(p) for p in self.p_values)

    def coefficient(self, name: str) -> float:
        try:
            return float(self.estimates[self.names.index(name)])
        except ValueError:
            raise DataError(f"no coefficient named {name!r}; have {self.names}")


def fit_ols(
    y: Sequence[float] | np.ndarray,
    X: Sequence[Sequence[float]] | np.ndarray,
    names: Sequence[str] | None = None,
    *,
    robust: bool = False,
) -> RegressionResult:
    """Least-squares fit of y on the columns of X.

    X must already contain its intercept column; R-squared and the F
    statistic assume one is present. Standard errors are classical
    homoskedastic by default; robust=True switches to the HC1
    heteroskedasticity-consistent estimator.

    Raises SingularDesignError when a column is (numerically) a linear
    combination of the others, and DataError when observations do not
    exceed coefficients.
    """
    y = np.asarray(y, dtype=float)
    X = np.asarray(X, dtype=float)
    if y.ndim != 1:
        raise DataError(f"y must be 1-dimensional, got shape {y.shape}")
    if X.ndim != 2:
        raise DataError(f"X must be 2-dimensional, got shape {X.shape}")
    n, k = X.shape
    if n != y.shape[0]:
        raise DataError(f"X has {n} rows but y has {y.shape[0]}")
    if names is None:
        names = tuple(f"x{j}" for j in range(k))
    else:
        names = tuple(names)
        if len(names) != k:
            raise DataError(f"{len(names)} names for {k} columns")
    if n <= k:
        raise DataError(
            f"need more observations than coefficients, got n={n}, k={k}"
        )
    if not np.all(np.isfinite(y)) or not np.all(np.isfinite(X)):
        raise DataError("design and response must be finite")

    Q, R, pivot = linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0.0:
        raise SingularDesignError("design matrix is zero", list(names))
    rank = int(np.sum(diag > RANK_TOLERANCE * diag[0]))
    if rank < k:
        dependent = sorted(names[j] for j in pivot[rank:])
        raise SingularDesignError(
            f"design is rank deficient (rank {rank} of {k}); dependent columns",
            dependent,
        )

    beta_pivoted = linalg.solve_triangular(R, Q.T @ y)
    beta = np.empty(k)
    beta[pivot] = beta_pivoted

    residuals = y - X @ beta
    df_residual = n - k
    ssr = float(residuals @ residuals)
    sigma2 = ssr / df_residual

    # (X'X)^{-1} from the QR factors, undoing the column pivot.
    r_inv = linalg.solve_triangular(R, np.eye(k))
    xtx_inv_pivoted = r_inv @ r_inv.T
    xtx_inv = np.empty((k, k))
    xtx_inv[np.ix_(pivot, pivot)] = xtx_inv_pivoted

    if robust:
        # HC1: small-sample scaled sandwich estimator.
        meat = (X * residuals[:, None] ** 2).T @ X
        cov = xtx_inv @ meat @ xtx_inv * (n / df_residual)
    else:
        cov = sigma2 * xtx_inv
    std_errors = np.sqrt(np.diag(cov))

    with np.errstate(divide="ignore", invalid="ignore"):
        t_stats = beta / std_errors
    p_values = 2.0 * stats.t.sf(np.abs(t_stats), df_residual)

    sst = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - ssr / sst if sst > 0.0 else 1.0
    adjusted = 1.0 - (1.0 - r_squared) * (n - 1) / df_residual
    residual_std_error = float(np.sqrt(sigma2))

    if k > 1 and r_squared < 1.0:
        f_stat = (r_squared / (k - 1)) / ((1.0 - r_squared) / df_residual)
        f_p = float(stats.f.sf(f_stat, k - 1, df_residual))
    elif k > 1:
        f_stat, f_p = float("inf"), 0.0
    else:
        f_stat, f_p = float("nan"), float("nan")

    return RegressionResult(
        names=names,
        estimates=beta,
        standard_errors=std_errors,
        t_statistics=t_stats,
        p_values=p_values,
        r_squared=float(r_squared),
        adjusted_r_squared=float(adjusted),
        residual_std_error=residual_std_error,
        f_statistic=float(f_stat),
        f_p_value=f_p,
        n_obs=n,
        df_residual=df_residual,
        robust=robust,
        residuals=residuals,
    )
