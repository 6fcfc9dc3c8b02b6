import math

import numpy as np
import pytest

from rssinfo import ranking_error as re
from rssinfo.distributions import Exponential
from rssinfo.order_stats import (
    OrderStatSpec,
    beta_order_log_pdf,
    beta_order_pdf,
    judged_beta_mixture_pdf,
    judged_pdf,
    log_order_coeff,
    order_stat_log_pdf,
    order_stat_pdf,
)
from rssinfo.quadrature import integrate, integrate_support


def test_log_order_coeff_known_values():
    # n! / ((i-1)! (n-i)!)
    assert abs(log_order_coeff(2, 1) - math.log(2)) < 1e-12
    assert abs(log_order_coeff(5, 3) - math.log(30)) < 1e-12
    assert abs(log_order_coeff(1, 1) - 0.0) < 1e-12


def test_order_coeff_large_n_stays_finite():
    assert math.isfinite(log_order_coeff(500, 250))


def test_beta_kernel_endpoint_convention():
    # 0**0 = 1 at the rank extremes: densities finite at u = 0 and u = 1
    assert beta_order_pdf(4, 1, 0.0) == pytest.approx(4.0)
    assert beta_order_pdf(4, 4, 1.0) == pytest.approx(4.0)
    assert beta_order_pdf(4, 2, 0.0) == 0.0


def test_beta_kernel_normalizes_and_logs_match():
    u = np.linspace(1e-6, 1 - 1e-6, 101)
    for n, i in [(2, 1), (3, 2), (5, 5), (7, 3)]:
        r = integrate(lambda v, n=n, i=i: beta_order_pdf(n, i, v), 0.0, 1.0)
        assert abs(r.value - 1.0) < 1e-9
        np.testing.assert_allclose(
            np.exp(beta_order_log_pdf(n, i, u)), beta_order_pdf(n, i, u), rtol=1e-12
        )


def test_beta_mode_location():
    # argmax of Beta(i, n-i+1) sits at (i-1)/(n-1) for n >= 2
    u = np.linspace(0.0, 1.0, 2001)
    for n, i in [(3, 2), (5, 2), (5, 4), (8, 5)]:
        argmax = u[np.argmax(beta_order_pdf(n, i, u))]
        assert abs(argmax - (i - 1) / (n - 1)) <= 1.0 / 2000.0 + 1e-12


def test_uniform_mixture_identity(families, interior_u):
    # (1/n) sum_i f_(i) = f pointwise
    for dist in families:
        x = dist.quantile(np.linspace(0.02, 0.98, 25))
        for n in [2, 4, 6]:
            total = sum(
                order_stat_pdf(OrderStatSpec(n, i, dist), x) for i in range(1, n + 1)
            )
            np.testing.assert_allclose(total / n, dist.pdf(x), rtol=0, atol=1e-10)


def test_judged_mixture_identity(families):
    # double stochasticity: (1/n) sum_i f_[i] = f for any valid P
    P = re.blend(4, 0.4)
    for dist in families:
        x = dist.quantile(np.linspace(0.05, 0.95, 19))
        total = sum(judged_pdf(dist, 4, P, i, x) for i in range(1, 5))
        np.testing.assert_allclose(total / 4.0, dist.pdf(x), rtol=0, atol=1e-10)


def test_order_stat_density_normalizes():
    dist = Exponential(1.0)
    for n, i in [(2, 1), (3, 2), (5, 5)]:
        r = integrate_support(
            lambda x, n=n, i=i: order_stat_pdf(OrderStatSpec(n, i, dist), x),
            dist.support,
        )
        assert abs(r.value - 1.0) < 1e-8


def test_known_exponential_order_stat_values():
    dist = Exponential(1.0)
    # min of two Exp(1) is Exp(2): density 2 at the origin
    assert order_stat_pdf(OrderStatSpec(2, 1, dist), 0.0) == pytest.approx(2.0)
    # middle of three at x = 1: 6 e^-1 (1 - e^-1) e^-1
    expected = 6.0 * math.exp(-1.0) * (1.0 - math.exp(-1.0)) * math.exp(-1.0)
    assert order_stat_pdf(OrderStatSpec(3, 2, dist), 1.0) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.5133, abs=5e-4)


def test_order_stat_log_pdf_outside_support():
    dist = Exponential(1.0)
    assert order_stat_log_pdf(OrderStatSpec(3, 2, dist), -1.0) == -np.inf


def test_judged_pdf_limits():
    dist = Exponential(1.0)
    x = np.linspace(0.1, 4.0, 17)
    # identity matrix: judged = true order statistic
    np.testing.assert_allclose(
        judged_pdf(dist, 3, re.identity(3), 2, x),
        order_stat_pdf(OrderStatSpec(3, 2, dist), x),
        rtol=1e-12,
    )
    # uniform matrix: judged = parent
    np.testing.assert_allclose(
        judged_pdf(dist, 3, re.uniform(3), 2, x), dist.pdf(x), rtol=0, atol=1e-12
    )


def test_judged_beta_mixture_matches_x_space():
    dist = Exponential(1.3)
    P = re.blend(3, 0.5)
    u = np.linspace(0.05, 0.95, 19)
    x = dist.quantile(u)
    for i in range(1, 4):
        np.testing.assert_allclose(
            judged_beta_mixture_pdf(3, P, i, u) * dist.pdf(x),
            judged_pdf(dist, 3, P, i, x),
            rtol=1e-10,
        )


def test_rank_validation():
    dist = Exponential(1.0)
    with pytest.raises(ValueError):
        OrderStatSpec(3, 0, dist)
    with pytest.raises(ValueError):
        OrderStatSpec(3, 4, dist)
    with pytest.raises(ValueError):
        beta_order_pdf(0, 1, 0.5)
    with pytest.raises(ValueError):
        judged_pdf(dist, 3, re.identity(2), 1, 0.5)
