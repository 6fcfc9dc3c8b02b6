"""Densities of order statistics and judged (imperfectly ranked) order
statistics, plus the Beta(i, n-i+1) kernel they are built from.

All coefficients go through log-gamma so set sizes well beyond 170 stay
finite.  The convention 0**0 = 1 applies at the rank extremes i = 1 and
i = n (handled via xlogy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .distributions import Distribution
from .ranking_error import RankingErrorMatrix


def _check_rank(n: int, i: int) -> None:
    if n < 1:
        raise ValueError(f"set size must be >= 1, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"rank {i} out of range 1..{n}")


def log_order_coeff(n: int, i: int) -> float:
    """log of n! / ((i-1)! (n-i)!) = -log B(i, n-i+1)."""
    _check_rank(n, i)
    return -special.betaln(i, n - i + 1)


def beta_order_pdf(n: int, i: int, u):
    """Beta(i, n-i+1) density, the law of the i-th of n uniform order stats."""
    return np.exp(beta_order_log_pdf(n, i, u))


def beta_order_log_pdf(n: int, i: int, u):
    _check_rank(n, i)
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore"):
        lg = (
            log_order_coeff(n, i)
            + special.xlogy(i - 1, u)
            + special.xlogy(n - i, 1.0 - u)
        )
    return lg


@dataclass(frozen=True)
class OrderStatSpec:
    n: int
    i: int
    dist: Distribution

    def __post_init__(self):
        _check_rank(self.n, self.i)


def order_stat_pdf(spec: OrderStatSpec, x):
    """Density of the i-th order statistic of n iid draws from ``dist``."""
    return np.exp(order_stat_log_pdf(spec, x))


def order_stat_log_pdf(spec: OrderStatSpec, x):
    n, i, dist = spec.n, spec.i, spec.dist
    F = dist.cdf(x)
    S = dist.survival(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = (
            log_order_coeff(n, i)
            + special.xlogy(i - 1, F)
            + special.xlogy(n - i, S)
            + dist.log_pdf(x)
        )
    return np.where(np.isnan(lg), -np.inf, lg)


def judged_pdf(dist: Distribution, n: int, P: RankingErrorMatrix, i: int, x):
    """Density of the unit judged to have rank i: the p[i, r] mixture of the
    true order-statistic densities."""
    if P.n != n:
        raise ValueError(f"error matrix dimension {P.n} does not match n = {n}")
    _check_rank(n, i)
    weights = P.row(i)
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for r in range(1, n + 1):
        w = weights[r - 1]
        if w > 0.0:
            out = out + w * order_stat_pdf(OrderStatSpec(n, r, dist), x)
    return out


def judged_beta_mixture_pdf(n: int, P: RankingErrorMatrix, i: int, u):
    """u-space counterpart of ``judged_pdf``: sum_r p[i, r] Beta(r, n-r+1)(u)."""
    if P.n != n:
        raise ValueError(f"error matrix dimension {P.n} does not match n = {n}")
    _check_rank(n, i)
    weights = P.row(i)
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    for r in range(1, n + 1):
        w = weights[r - 1]
        if w > 0.0:
            out = out + w * beta_order_pdf(n, r, u)
    return out
