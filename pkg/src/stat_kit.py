"""
Statistics helpers for the Monte Carlo gates.

Summaries, empirical-mean z-tests, geometric-law fitting and log-log
slope estimation.
"""
import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy import stats

from .models import GeometricFit, LogLogFit, Summary, ZTestResult


logger = logging.getLogger(__name__)

# Smallest expected count allowed in a chi-square cell
MIN_EXPECTED = 5.0


class StatisticsError(Exception):
    """Custom exception for statistics errors."""
    pass


def summarize(samples: Sequence[float]) -> Summary:
    """
    Standard sample statistics.

    The standard deviation is the unbiased (ddof=1) estimate; a single
    sample has sd = se = 0.

    Raises:
        StatisticsError: If samples is empty
    """
    values = np.asarray(samples, dtype=float)
    if values.size == 0:
        raise StatisticsError("cannot summarize an empty sample")

    count = int(values.size)
    lo, hi = float(values.min()), float(values.max())
    mean = min(max(float(values.mean()), lo), hi)
    sd = float(values.std(ddof=1)) if count > 1 else 0.0
    return Summary(count=count, mean=mean, sd=sd, se=sd / math.sqrt(count), min=lo, max=hi)


def z_compare(summary: Summary, reference: float, z_max: float = 3.0) -> ZTestResult:
    """
    Gate an empirical mean against a reference value.

    Passes iff |mean - reference| / SE <= z_max. With SE = 0 the gate
    degenerates to exact equality.
    """
    diff = summary.mean - reference
    if summary.se > 0:
        z = diff / summary.se
        passed = abs(z) <= z_max
    else:
        z = 0.0 if diff == 0 else math.copysign(math.inf, diff)
        passed = diff == 0
    return ZTestResult(
        passed=passed,
        z=z,
        mean=summary.mean,
        reference=reference,
        standard_error=summary.se,
        z_max=z_max,
    )


def _geometric_cells(count: int, p_hat: float) -> int:
    """Number K of singleton cells {1}..{K} before the pooled tail {K+1, ...}."""
    q = 1.0 - p_hat
    cells = 0
    while True:
        nxt = cells + 1
        expected = count * p_hat * q ** (nxt - 1)
        tail = count * q**nxt
        if expected < MIN_EXPECTED or tail < MIN_EXPECTED:
            return cells
        cells = nxt


def fit_geometric(counts: Sequence[int]) -> GeometricFit:
    """
    Fit a geometric law on {1, 2, ...} and test goodness of fit.

    p_hat = 1/mean is the maximum-likelihood estimate for this support.
    Values above the last cell with expected count >= 5 are pooled into a
    tail cell; the chi-square test loses one extra degree of freedom for
    the estimated parameter. With fewer than three cells there is nothing
    to test and the p-value is reported as 1.

    Args:
        counts: Positive integers, e.g. phase counts N of completed runs

    Returns:
        GeometricFit with estimate, p-value and the cell count used

    Raises:
        StatisticsError: On empty input or values below 1
    """
    values = np.asarray(counts, dtype=np.int64)
    if values.size == 0:
        raise StatisticsError("cannot fit an empty sample")
    if values.min() < 1:
        raise StatisticsError("geometric counts must be positive integers")

    count = int(values.size)
    p_hat = 1.0 / float(values.mean())
    singles = _geometric_cells(count, p_hat)
    cells = singles + 1

    if cells < 3:
        logger.debug(f"Geometric fit on {count} values has {cells} cell(s); skipping chi-square")
        return GeometricFit(p_hat=p_hat, p_value=1.0, chi_square=0.0, cells=cells, count=count)

    q = 1.0 - p_hat
    ks = np.arange(1, singles + 1)
    observed = np.append(
        np.bincount(values[values <= singles], minlength=singles + 1)[1:],
        np.count_nonzero(values > singles),
    )
    expected = np.append(count * p_hat * q ** (ks - 1), count * q**singles)
    # rescale away float drift so both totals agree for scipy
    expected *= count / expected.sum()

    result = stats.chisquare(observed, expected, ddof=1)
    return GeometricFit(
        p_hat=p_hat,
        p_value=float(result.pvalue),
        chi_square=float(result.statistic),
        cells=cells,
        count=count,
    )


def loglog_slope(points: Sequence[Tuple[float, float]]) -> LogLogFit:
    """
    Ordinary least squares through (ln n, ln t).

    Raises:
        StatisticsError: With fewer than two distinct n or nonpositive values
    """
    if len(points) < 2:
        raise StatisticsError("a slope needs at least two points")
    data = np.asarray(points, dtype=float)
    if np.any(data <= 0):
        raise StatisticsError("log-log fitting needs positive values")

    x, y = np.log(data[:, 0]), np.log(data[:, 1])
    if np.all(x == x[0]):
        raise StatisticsError("a slope needs at least two distinct n values")

    fit = stats.linregress(x, y)
    residual = float(np.sum((y - (fit.intercept + fit.slope * x)) ** 2))
    return LogLogFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        residual=residual,
        points=len(points),
    )
