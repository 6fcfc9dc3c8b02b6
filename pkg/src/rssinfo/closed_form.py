"""Distribution-free and exponential-family closed forms.

Everything here is exact up to special-function accuracy: entropies of
uniform order statistics, the distribution-free Shannon gap k(n) (direct and
recursive), the distribution-free KL constant d_n, the alpha > 1 Renyi gap
lower bound, and the exponential set-size-2 Shannon/Renyi formulas.

The eta helper is defined normatively so that eta(0) = 1/2, which is the sign
making the imperfect-ranking entropy collapse to the perfect-RSS entropy when
ranking is perfect and to the SRS entropy when ranking is random.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .ranking_error import RankingErrorMatrix

log_gamma = special.gammaln
digamma = special.digamma
log_beta = special.betaln


def h_uniform_order(n: int, i: int) -> float:
    """Shannon entropy of the i-th order statistic of n Uniform(0,1) draws."""
    if not 1 <= i <= n:
        raise ValueError(f"rank {i} out of range 1..{n}")
    return float(
        log_beta(i, n - i + 1)
        - (i - 1) * (digamma(i) - digamma(n + 1))
        - (n - i) * (digamma(n - i + 1) - digamma(n + 1))
    )


def k_direct(n: int) -> float:
    """Distribution-free Shannon gap H(RSS) - H(SRS) for set size n.

    Equals sum_j (n - 2j) log j - n log n - 2 sum_i (i-1) psi(i)
    + n(n-1) psi(n+1), i.e. the sum of the uniform order-statistic entropies.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(1, n)
    i = np.arange(1, n + 1)
    return float(
        np.sum((n - 2 * j) * np.log(j))
        - n * math.log(n)
        - 2.0 * np.sum((i - 1) * digamma(i))
        + n * (n - 1) * digamma(n + 1)
    )


def k_recursive(n: int) -> float:
    """Same gap via the recursion k(m+1) = k(m) + m + log Gamma(m+1) - (m+1) log(m+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 0.0  # single draw: RSS is SRS
    for m in range(1, n):
        k = k + m + float(log_gamma(m + 1)) - (m + 1) * math.log(m + 1)
    return k


def d_n(n: int) -> float:
    """Distribution-free KL divergence K(SRS, RSS) = -sum log(i*C(n,i)) + n(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    i = np.arange(1, n + 1)
    log_binom = log_gamma(n + 1) - log_gamma(i + 1) - log_gamma(n - i + 1)
    return float(-np.sum(np.log(i) + log_binom) + n * (n - 1))


def psi_bound(alpha: float, n: int) -> float:
    """Lower bound on the alpha > 1 Renyi gap H_a(RSS) - H_a(SRS).

    Built from the modes of the Beta(i, n-i+1) kernels, with 0**0 = 1 at the
    rank extremes.  Lies in [n*a/(1-a) log n, 0) and is nonincreasing in n.
    """
    if alpha <= 1.0:
        raise ValueError(f"psi_bound requires alpha > 1, got {alpha}")
    if n < 2:
        raise ValueError("psi_bound requires n >= 2")
    i = np.arange(1, n + 1)
    log_binom = log_gamma(n) - log_gamma(i) - log_gamma(n - i + 1)
    terms = (
        math.log(n)
        + log_binom
        + special.xlogy(i - 1, (i - 1) / (n - 1))
        + special.xlogy(n - i, (n - i) / (n - 1))
    )
    return float(alpha / (1.0 - alpha) * np.sum(terms))


def eta(a: float) -> float:
    """eta(a) = 1/2 + [a^2 log a - (1-a)^2 log(1-a)] / (1-2a), eta(1/2) = log 2.

    Equals -(2/(1-2a)) * int_a^{1-a} u log u du; symmetric about a = 1/2.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"eta argument must lie in [0, 1], got {a}")
    d = 1.0 - 2.0 * a
    if abs(d) < 1e-4:
        # removable singularity; series about a = 1/2
        return math.log(2.0) - d * d / 6.0
    num = special.xlogy(a * a, a) - special.xlogy((1.0 - a) ** 2, 1.0 - a)
    return float(0.5 + num / d)


def exp_shannon(kind: str, lam: float, P: RankingErrorMatrix | None = None, n: int = 2) -> float:
    """Shannon entropy of an exponential(lam) sample of set size 2.

    ``kind`` is 'srs', 'rss' or 'irss'; the imperfect case needs the 2x2
    ranking error matrix (whose double stochasticity makes p22 = p11, so the
    (p22 - p11) term of the printed formula vanishes).
    """
    if n != 2:
        raise ValueError("closed-form exponential Shannon entropy only covers n = 2")
    if not lam > 0:
        raise ValueError("rate must be positive")
    if kind == "srs":
        return 2.0 - 2.0 * math.log(lam)
    if kind == "rss":
        return 3.0 - 2.0 * math.log(2.0 * lam)
    if kind == "irss":
        if P is None or P.n != 2:
            raise ValueError("imperfect case needs a 2x2 ranking error matrix")
        p11 = float(P.entries[0, 0])
        p22 = float(P.entries[1, 1])
        return 2.0 - 2.0 * math.log(2.0 * lam) + (p22 - p11) + eta(p11) + eta(p22)
    raise ValueError(f"unknown design kind {kind!r}")


def exp_renyi(component: str, lam: float, alpha: float, n: int = 2) -> float:
    """Renyi information pieces for an exponential(lam) sample of set size 2.

    ``component`` is 'srs' (total over both draws), 'order1', 'order2', or
    'rss' (sum of the two order-statistic pieces).
    """
    if n != 2:
        raise ValueError("closed-form exponential Renyi only covers n = 2")
    if not lam > 0:
        raise ValueError("rate must be positive")
    if alpha <= 0 or alpha == 1.0:
        raise ValueError("alpha must be positive and != 1 (use Shannon at alpha = 1)")
    om = 1.0 - alpha
    if component == "srs":
        return -2.0 * math.log(lam) - 2.0 / om * math.log(alpha)
    if component == "order1":
        return -math.log(lam) - math.log(2.0) - math.log(alpha) / om
    if component == "order2":
        return (
            -math.log(lam)
            + alpha / om * math.log(2.0)
            + (log_gamma(alpha + 1.0) + log_gamma(alpha) - log_gamma(2.0 * alpha + 1.0)) / om
        )
    if component == "rss":
        return exp_renyi("order1", lam, alpha) + exp_renyi("order2", lam, alpha)
    raise ValueError(f"unknown component {component!r}")
