"""Maximum mean discrepancy: sample estimators and exact discrete form.

Three routes to the same metric:
  * mmd_biased   -- plug-in estimator on samples, sqrt of a V-statistic;
  * mmd2_unbiased -- U-statistic estimator of the squared MMD (may be negative);
  * mmd_discrete -- exact population MMD between finite-support distributions,
    via weighted kernel double sums.
"""
from __future__ import annotations

import math

import numpy as np

from .data import Dataset, DiscretePmf, check_same_dim
from .errors import InputError
from .kernel import KernelConfig, _gram_sum_arrays, gram_matrix


def _biased_from_sums(s_xx: float, s_yy: float, s_xy: float, m: int, n: int) -> float:
    # Radicand is >= 0 in exact arithmetic; clamp float noise before the sqrt.
    v = s_xx / (m * m) + s_yy / (n * n) - 2.0 * s_xy / (m * n)
    return math.sqrt(max(v, 0.0))


def mmd_biased(cfg: KernelConfig, D: Dataset, Dp: Dataset, threads: int | None = None) -> float:
    """Biased sample estimate of MMD(D, D'); nonnegative and symmetric."""
    check_same_dim(D, Dp, "mmd_biased")
    m, n = len(D), len(Dp)
    s_xx = _gram_sum_arrays(cfg, D.points, D.points, threads)
    s_yy = _gram_sum_arrays(cfg, Dp.points, Dp.points, threads)
    s_xy = _gram_sum_arrays(cfg, D.points, Dp.points, threads)
    return _biased_from_sums(s_xx, s_yy, s_xy, m, n)


def _u_stat_from_sums(s_xx: float, s_yy: float, s_xy: float, m: int, n: int) -> float:
    # Unpaired form: within-sample sums exclude the diagonal (k(x, x) = 1 for
    # the RBF family); every cross pair is kept since x_i and y_j are independent.
    return (s_xx - m) / (m * (m - 1)) + (s_yy - n) / (n * (n - 1)) - 2.0 * s_xy / (m * n)


def mmd2_unbiased(cfg: KernelConfig, D: Dataset, Dp: Dataset, threads: int | None = None) -> float:
    """Unbiased U-statistic estimate of the squared MMD; may be negative.

    This is a genuinely different estimator from mmd_biased**2: squaring the
    biased estimator does not remove the diagonal terms. For equal sample
    sizes the paired one-sample form is used (the i-th cross pair excluded as
    well), so identical samples score exactly 0.
    """
    check_same_dim(D, Dp, "mmd2_unbiased")
    m, n = len(D), len(Dp)
    if m < 2 or n < 2:
        raise InputError("mmd2_unbiased: both samples need at least 2 points")
    s_xx = _gram_sum_arrays(cfg, D.points, D.points, threads)
    s_yy = _gram_sum_arrays(cfg, Dp.points, Dp.points, threads)
    s_xy = _gram_sum_arrays(cfg, D.points, Dp.points, threads)
    if m == n:
        diag = float(
            np.exp(((D.points - Dp.points) ** 2).sum(axis=1) / (-2.0 * cfg.sigma**2)).sum()
        )
        return (s_xx - m) / (m * (m - 1)) + (s_yy - n) / (n * (n - 1)) - 2.0 * (
            s_xy - diag
        ) / (m * (m - 1))
    return _u_stat_from_sums(s_xx, s_yy, s_xy, m, n)


def mmd_discrete(cfg: KernelConfig, P: DiscretePmf, Pp: DiscretePmf) -> float:
    """Exact population MMD between two finite-support distributions.

    d(P, P')^2 = E k(X, X') - 2 E k(X, Y) + E k(Y, Y') with X, X' ~ P and
    Y, Y' ~ P', evaluated as weighted double sums over the supports.
    """
    check_same_dim(P, Pp, "mmd_discrete")
    p, q = P.probs, Pp.probs
    g_pp = float(p @ gram_matrix(cfg, P.support, P.support) @ p)
    g_qq = float(q @ gram_matrix(cfg, Pp.support, Pp.support) @ q)
    g_pq = float(p @ gram_matrix(cfg, P.support, Pp.support) @ q)
    return math.sqrt(max(g_pp - 2.0 * g_pq + g_qq, 0.0))
