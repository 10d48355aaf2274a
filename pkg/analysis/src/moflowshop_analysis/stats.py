"""Normality-gated group comparison and rank aggregation for metric tables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

ALPHA = 0.05


@dataclass(frozen=True)
class GroupSummary:
    algorithm: str
    center: float
    dispersion: float
    count: int


@dataclass(frozen=True)
class ComparisonRow:
    instance: str
    metric: str
    test: str  # "anova" | "kruskal-wallis" | "degenerate"
    p_value: float | None
    significant: bool
    best: str
    groups: tuple[GroupSummary, ...]


def _validated(samples) -> list[tuple[str, np.ndarray]]:
    if len(samples) < 2:
        raise ValueError("need at least two algorithms to compare")
    pairs = []
    for name, values in samples.items():
        arr = np.asarray(list(values), dtype=float)
        if arr.size < 3:
            raise ValueError(f"algorithm {name!r} has fewer than 3 replicates")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"algorithm {name!r} has non-finite values")
        pairs.append((str(name), arr))
    return pairs


def _all_normal(groups, alpha: float) -> bool:
    for values in groups:
        if np.ptp(values) == 0.0:
            return False  # a constant sample is never treated as normal
        if sps.shapiro(values).pvalue < alpha:
            return False
    return True


def select_test_and_summarize(
    instance: str,
    metric: str,
    samples,
    alpha: float = ALPHA,
    higher_is_better: bool = True,
) -> ComparisonRow:
    """Compare per-algorithm replicate samples of one metric on one instance.

    Shapiro-Wilk gates the omnibus test: when every sample looks normal at
    `alpha` the groups go through one-way ANOVA and are summarized as
    mean/standard deviation; otherwise Kruskal-Wallis with median/IQR.
    `samples` maps algorithm name to its replicate values (insertion order
    is preserved in the output). A table where every value is identical is
    reported as "degenerate" with no significance claim.
    """
    pairs = _validated(samples)
    names = [name for name, _ in pairs]
    groups = [arr for _, arr in pairs]

    flat = np.concatenate(groups)
    if np.ptp(flat) == 0.0:
        value = float(flat[0])
        summaries = tuple(
            GroupSummary(name, value, 0.0, len(arr)) for name, arr in pairs
        )
        return ComparisonRow(
            instance, metric, "degenerate", None, False, names[0], summaries
        )

    if _all_normal(groups, alpha):
        test = "anova"
        p_value = float(sps.f_oneway(*groups).pvalue)
        summaries = tuple(
            GroupSummary(name, float(arr.mean()), float(arr.std(ddof=1)), len(arr))
            for name, arr in pairs
        )
    else:
        test = "kruskal-wallis"
        p_value = float(sps.kruskal(*groups).pvalue)
        summaries = tuple(
            GroupSummary(
                name,
                float(np.median(arr)),
                float(np.percentile(arr, 75) - np.percentile(arr, 25)),
                len(arr),
            )
            for name, arr in pairs
        )

    centers = [g.center for g in summaries]
    pick = max if higher_is_better else min
    best = summaries[centers.index(pick(centers))].algorithm
    return ComparisonRow(
        instance, metric, test, p_value, p_value < alpha, best, summaries
    )


@dataclass(frozen=True)
class FriedmanResult:
    average_ranks: tuple[float, ...]
    statistic: float
    p_value: float


def _average_ranks(values: np.ndarray) -> np.ndarray:
    # rank 1 for the smallest value; ties share the average of their positions
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    pos = 0
    while pos < len(values):
        end = pos
        while end + 1 < len(values) and values[order[end + 1]] == values[order[pos]]:
            end += 1
        ranks[order[pos : end + 1]] = (pos + end) / 2.0 + 1.0
        pos = end + 1
    return ranks


def friedman_rank(table, higher_is_better: bool = True) -> FriedmanResult:
    """Friedman test over a configurations-by-blocks score table.

    Every block (column) ranks the configurations; the result carries the
    per-configuration average ranks (1 = best) and the chi-square statistic
    12N/(k(k+1)) * sum(Rbar^2) - 3N(k+1) on k-1 degrees of freedom.
    """
    rows = [np.asarray(list(row), dtype=float) for row in table]
    if len(rows) < 2:
        raise ValueError("need at least two configurations")
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise ValueError("ragged score table")
    blocks = widths.pop()
    if blocks < 2:
        raise ValueError("need at least two blocks")
    scores = np.stack(rows)
    if not np.all(np.isfinite(scores)):
        raise ValueError("scores must be finite")

    k, n = scores.shape
    ranks = np.empty_like(scores)
    for b in range(n):
        column = -scores[:, b] if higher_is_better else scores[:, b]
        ranks[:, b] = _average_ranks(column)
    avg = ranks.mean(axis=1)
    statistic = 12.0 * n / (k * (k + 1)) * float((avg * avg).sum()) - 3.0 * n * (k + 1)
    p_value = float(sps.chi2.sf(statistic, df=k - 1))
    return FriedmanResult(tuple(float(v) for v in avg), float(statistic), p_value)
