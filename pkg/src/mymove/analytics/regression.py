"""Ordinary least squares with backward elimination.

The design matrix carries its intercept as column 0; elimination drops the
least significant remaining predictor (never the intercept) until every
survivor clears the keep threshold.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .alignment import AnalyticsError


class RankDeficient(AnalyticsError):
    pass


@dataclass(frozen=True)
class RegressionResult:
    coefficients: dict[str, float]
    standard_errors: dict[str, float]
    t_stats: dict[str, float]
    p_values: dict[str, float]
    adjusted_r2: float
    n: int
    df_resid: int

    @property
    def names(self) -> list[str]:
        return list(self.coefficients)


def _as_matrix(design) -> np.ndarray:
    X = np.asarray(design, dtype=float)
    if X.ndim != 2:
        raise ValueError("design must be two-dimensional")
    return X


def default_names(k: int) -> list[str]:
    return ["intercept"] + [f"x{i}" for i in range(1, k)]


def ols_fit(design, y, names: list[str] | None = None) -> RegressionResult:
    X = _as_matrix(design)
    yv = np.asarray(y, dtype=float).reshape(-1)
    n, k = X.shape
    if names is None:
        names = default_names(k)
    if len(names) != k:
        raise ValueError("one name per design column required")
    if n < k or np.linalg.matrix_rank(X) < k:
        raise RankDeficient("design is not full column rank")

    beta, _, _, _ = np.linalg.lstsq(X, yv, rcond=None)
    resid = yv - X @ beta
    rss = float(resid @ resid)
    df = n - k
    sigma2 = rss / df if df > 0 else 0.0
    cov = sigma2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.maximum(np.diag(cov), 0.0))

    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / np.where(se > 0, se, 1.0), np.inf * np.sign(beta))
    p = 2.0 * stats.t.sf(np.abs(t), df) if df > 0 else np.zeros(k)

    tss = float(np.sum((yv - yv.mean()) ** 2))
    if tss > 0:
        r2 = 1.0 - rss / tss
        adj = 1.0 - (1.0 - r2) * (n - 1) / df if df > 0 else 1.0
    else:
        adj = 1.0 if rss < 1e-12 else 0.0

    return RegressionResult(
        coefficients=dict(zip(names, beta.tolist())),
        standard_errors=dict(zip(names, se.tolist())),
        t_stats=dict(zip(names, [float(v) for v in t])),
        p_values=dict(zip(names, [float(v) for v in p])),
        adjusted_r2=float(adj),
        n=n,
        df_resid=df,
    )


@dataclass(frozen=True)
class EliminationStep:
    dropped: str
    p_value: float


@dataclass(frozen=True)
class EliminationOutcome:
    result: RegressionResult
    trace: tuple[EliminationStep, ...]


DEFAULT_ALPHA_KEEP = 0.15


def backward_eliminate(
    design, y, alpha_keep: float = DEFAULT_ALPHA_KEEP, names: list[str] | None = None
) -> EliminationOutcome:
    """Iteratively drop the weakest predictor with p >= alpha_keep.

    Column 0 (the intercept) is never dropped; refits continue until all
    survivors clear the threshold or only the intercept remains.
    """
    X = _as_matrix(design)
    if names is None:
        names = default_names(X.shape[1])
    cols = list(range(X.shape[1]))
    active = list(cols)
    trace: list[EliminationStep] = []

    while True:
        result = ols_fit(X[:, active], y, [names[i] for i in active])
        candidates = [
            (result.p_values[names[i]], idx)
            for idx, i in enumerate(active)
            if idx != 0
        ]
        if not candidates:
            return EliminationOutcome(result, tuple(trace))
        worst_p, worst_idx = max(candidates)
        if worst_p < alpha_keep:
            return EliminationOutcome(result, tuple(trace))
        trace.append(EliminationStep(names[active[worst_idx]], worst_p))
        del active[worst_idx]
