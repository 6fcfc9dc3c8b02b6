import math

import numpy as np
import pytest

from rssinfo import closed_form as cf
from rssinfo import ranking_error as re
from rssinfo.quadrature import integrate

# Reference values of the distribution-free Shannon gap k(n), n = 2..10.
K_TABLE = {
    2: -0.386,
    3: -0.989,
    4: -1.742,
    5: -2.611,
    6: -3.574,
    7: -4.616,
    8: -5.727,
    9: -6.897,
    10: -8.121,
}


def test_k_matches_reference_table():
    for n, expected in K_TABLE.items():
        assert abs(cf.k_direct(n) - expected) <= 1e-3, n


def test_k_direct_equals_recursive_far_beyond_table():
    for n in range(1, 51):
        assert abs(cf.k_direct(n) - cf.k_recursive(n)) < 1e-9, n


def test_k_equals_sum_of_uniform_order_entropies():
    for n in range(2, 12):
        total = sum(cf.h_uniform_order(n, i) for i in range(1, n + 1))
        assert abs(cf.k_direct(n) - total) < 1e-10, n


def test_k_single_draw_is_zero():
    assert cf.k_direct(1) == pytest.approx(0.0)
    assert cf.k_recursive(1) == 0.0


def test_h_uniform_order_symmetry_and_sign():
    for n in range(2, 9):
        for i in range(1, n + 1):
            h = cf.h_uniform_order(n, i)
            assert h < 0.0  # each order statistic is less uncertain than U(0,1)
            assert abs(h - cf.h_uniform_order(n, n - i + 1)) < 1e-12


def test_h_uniform_order_against_quadrature():
    for n, i in [(2, 1), (3, 2), (6, 4)]:
        from rssinfo.order_stats import beta_order_pdf

        def integrand(u, n=n, i=i):
            b = beta_order_pdf(n, i, u)
            with np.errstate(divide="ignore"):
                return np.where(b > 0, -b * np.log(np.where(b > 0, b, 1.0)), 0.0)

        r = integrate(integrand, 0.0, 1.0)
        assert abs(r.value - cf.h_uniform_order(n, i)) < 1e-8


def test_d_n_known_values():
    assert cf.d_n(1) == pytest.approx(0.0)
    assert cf.d_n(2) == pytest.approx(2.0 - 2.0 * math.log(2.0), abs=1e-12)
    assert cf.d_n(3) == pytest.approx(6.0 - math.log(54.0), abs=1e-12)
    assert cf.d_n(3) == pytest.approx(2.0110, abs=5e-5)


def test_d_n_nondecreasing():
    vals = [cf.d_n(n) for n in range(1, 15)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_psi_known_value_and_range():
    assert cf.psi_bound(2.0, 2) == pytest.approx(-4.0 * math.log(2.0), abs=1e-12)
    for alpha in (1.5, 2.0, 5.0):
        for n in range(2, 11):
            psi = cf.psi_bound(alpha, n)
            lower = n * alpha / (1.0 - alpha) * math.log(n)
            assert lower - 1e-12 <= psi < 0.0, (alpha, n)


def test_psi_nonincreasing_in_n():
    for alpha in (1.5, 2.0, 5.0):
        for n in range(2, 10):
            assert cf.psi_bound(alpha, n + 1) <= cf.psi_bound(alpha, n) + 1e-12


def test_psi_domain_errors():
    with pytest.raises(ValueError):
        cf.psi_bound(1.0, 3)
    with pytest.raises(ValueError):
        cf.psi_bound(0.5, 3)
    with pytest.raises(ValueError):
        cf.psi_bound(2.0, 1)


def test_eta_endpoints_and_symmetry():
    assert cf.eta(0.0) == pytest.approx(0.5, abs=1e-12)
    assert cf.eta(1.0) == pytest.approx(0.5, abs=1e-12)
    assert cf.eta(0.5) == pytest.approx(math.log(2.0), abs=1e-12)
    for a in (0.1, 0.2, 0.35, 0.45):
        assert cf.eta(a) == pytest.approx(cf.eta(1.0 - a), abs=1e-12)


def test_eta_matches_defining_integral():
    # eta(a) = -(2 / (1 - 2a)) * int_a^{1-a} u log u du
    for a in (0.05, 0.25, 0.4):
        raw = integrate(lambda u: u * np.log(u), a, 1.0 - a)
        assert cf.eta(a) == pytest.approx(-2.0 / (1.0 - 2.0 * a) * raw.value, abs=1e-9)


def test_eta_series_branch_is_continuous():
    assert cf.eta(0.5 - 2e-4) == pytest.approx(cf.eta(0.5 - 5e-5), abs=1e-7)
    with pytest.raises(ValueError):
        cf.eta(1.5)


def test_exp_shannon_values():
    assert cf.exp_shannon("srs", 1.0) == pytest.approx(2.0)
    assert cf.exp_shannon("rss", 1.0) == pytest.approx(3.0 - 2.0 * math.log(2.0))
    # identity matrix collapses to the perfect-RSS value
    assert cf.exp_shannon("irss", 1.0, re.identity(2)) == pytest.approx(
        cf.exp_shannon("rss", 1.0), abs=1e-12
    )
    # random ranking collapses to the SRS value
    assert cf.exp_shannon("irss", 1.0, re.uniform(2)) == pytest.approx(2.0, abs=1e-12)
    # rate scaling: entropy shifts by -2 log(lam)
    assert cf.exp_shannon("srs", 2.0) == pytest.approx(2.0 - 2.0 * math.log(2.0))


def test_exp_shannon_validation():
    with pytest.raises(ValueError):
        cf.exp_shannon("srs", 1.0, n=3)
    with pytest.raises(ValueError):
        cf.exp_shannon("irss", 1.0)  # needs a matrix
    with pytest.raises(ValueError):
        cf.exp_shannon("srs", -1.0)
    with pytest.raises(ValueError):
        cf.exp_shannon("bogus", 1.0)


def test_exp_renyi_values():
    assert cf.exp_renyi("srs", 1.0, 2.0) == pytest.approx(2.0 * math.log(2.0), abs=1e-12)
    assert cf.exp_renyi("rss", 1.0, 2.0) == pytest.approx(math.log(3.0), abs=1e-12)
    # the alpha = 2 gap is log(3/4)
    gap = cf.exp_renyi("rss", 1.0, 2.0) - cf.exp_renyi("srs", 1.0, 2.0)
    assert gap == pytest.approx(math.log(0.75), abs=1e-12)
    assert cf.exp_renyi("rss", 1.0, 2.0) == pytest.approx(
        cf.exp_renyi("order1", 1.0, 2.0) + cf.exp_renyi("order2", 1.0, 2.0)
    )


def test_exp_renyi_validation():
    with pytest.raises(ValueError):
        cf.exp_renyi("srs", 1.0, 1.0)
    with pytest.raises(ValueError):
        cf.exp_renyi("srs", 1.0, -0.5)
    with pytest.raises(ValueError):
        cf.exp_renyi("nope", 1.0, 2.0)
    with pytest.raises(ValueError):
        cf.exp_renyi("srs", 1.0, 2.0, n=3)
