"""Shannon, Renyi and Kullback-Leibler measures for (distribution, design)
pairs.

Dispatch order: a closed form is used when one exists for the (family,
design, measure) triple, otherwise the quadrature engine; ``force_numeric``
bypasses closed forms so the two paths can be compared.

Default numeric path for Shannon and KL is u-space (quantile substitution),
which keeps every integral on the fixed domain (0, 1) with singularities only
at the known endpoints.  Renyi integrals are done in x-space because the
u-space weight f(F^-1(u))^(alpha-1) is not truncation-friendly for
heavy-tailed families when alpha < 1.

All values are in nats and scale additively with the cycle count m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import closed_form
from .distributions import Distribution, Exponential, Uniform
from .order_stats import (
    OrderStatSpec,
    beta_order_log_pdf,
    beta_order_pdf,
    judged_beta_mixture_pdf,
    judged_pdf,
    log_order_coeff,
    order_stat_log_pdf,
    order_stat_pdf,
)
from .quadrature import (
    DEFAULT_CONFIG,
    NonFiniteIntegrandError,
    QuadratureConfig,
    QuadratureResult,
    entropy_integral,
    integrate,
    integrate_support,
)
from .ranking_error import RankingErrorMatrix


class DivergentIntegralError(ValueError):
    """The divergence integrand is not integrable (e.g. support mismatch)."""


SRS = "srs"
PERFECT_RSS = "rss"
IMPERFECT_RSS = "irss"

_KINDS = (SRS, PERFECT_RSS, IMPERFECT_RSS)


@dataclass(frozen=True)
class Design:
    """Sampling design: SRS(n), perfect RSS(n), or imperfect RSS(n, P).

    ``m`` is the cycle count; measures scale additively in m.
    """

    kind: str
    n: int
    P: RankingErrorMatrix | None = None
    m: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown design kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("set size must be >= 1")
        if self.m < 1:
            raise ValueError("cycle count must be >= 1")
        if self.kind == IMPERFECT_RSS:
            if self.P is None:
                raise ValueError("imperfect RSS needs a ranking error matrix")
            if self.P.n != self.n:
                raise ValueError(
                    f"error matrix dimension {self.P.n} does not match n = {self.n}"
                )
        elif self.P is not None:
            raise ValueError(f"design kind {self.kind!r} takes no error matrix")

    def spec_string(self) -> str:
        base = f"{self.kind}:{self.n}"
        return base if self.m == 1 else f"{base} (m={self.m})"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    error_estimate: float
    method: str  # closed-form | quadrature | monte-carlo
    diagnostics: dict = field(default_factory=dict)

    def scaled(self, m: int) -> "MeasureResult":
        if m == 1:
            return self
        return MeasureResult(
            self.value * m, self.error_estimate * m, self.method, self.diagnostics
        )


def _closed(value: float) -> MeasureResult:
    return MeasureResult(value, 0.0, "closed-form")


def _from_quad(value: float, err: float, parts: list[QuadratureResult]) -> MeasureResult:
    return MeasureResult(
        value,
        err,
        "quadrature",
        {
            "converged": all(p.converged for p in parts),
            "subdivisions": sum(p.subdivisions_used for p in parts),
        },
    )


def _mixture_weight(design: Design, i: int, u):
    """u-space density weight of component i relative to the parent density."""
    if design.kind == SRS:
        return np.ones_like(np.asarray(u, dtype=float))
    if design.kind == PERFECT_RSS:
        return beta_order_pdf(design.n, i, u)
    return judged_beta_mixture_pdf(design.n, design.P, i, u)


# ---------------------------------------------------------------------------
# Shannon entropy
# ---------------------------------------------------------------------------


def shannon(
    design: Design,
    dist: Distribution,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    force_numeric: bool = False,
    mode: str = "u",
) -> MeasureResult:
    """Shannon entropy of the full sample under the given design.

    ``mode='u'`` (default) uses the quantile-substitution decomposition
    H(X_(i)) = H(U_(i)) - E[log f(F^-1(W_i))]; ``mode='x'`` integrates the
    component densities directly in x-space as a cross-check.
    """
    if not force_numeric:
        cf = _shannon_closed_form(design, dist)
        if cf is not None:
            return cf.scaled(design.m)
    if mode == "x":
        res = _shannon_x_space(design, dist, cfg)
    else:
        res = _shannon_u_space(design, dist, cfg)
    return res.scaled(design.m)


def _shannon_closed_form(design: Design, dist: Distribution) -> MeasureResult | None:
    if design.kind == SRS and hasattr(dist, "entropy"):
        return _closed(design.n * dist.entropy())
    if isinstance(dist, Exponential) and design.n == 2:
        if design.kind == PERFECT_RSS:
            return _closed(closed_form.exp_shannon("rss", dist.lam))
        if design.kind == IMPERFECT_RSS:
            return _closed(closed_form.exp_shannon("irss", dist.lam, design.P))
    return None


def _shannon_u_space(design: Design, dist: Distribution, cfg: QuadratureConfig) -> MeasureResult:
    n = design.n

    def log_fq(u):
        return dist.log_pdf_at_quantile(u)

    parts: list[QuadratureResult] = []
    total = 0.0
    if design.kind == SRS:
        r = integrate(lambda u: -log_fq(u), 0.0, 1.0, cfg)
        parts.append(r)
        total = n * r.value
        err = n * r.error_estimate
    elif design.kind == PERFECT_RSS:
        err = 0.0
        for i in range(1, n + 1):
            r = integrate(lambda u, i=i: beta_order_pdf(n, i, u) * log_fq(u), 0.0, 1.0, cfg)
            parts.append(r)
            total += closed_form.h_uniform_order(n, i) - r.value
            err += r.error_estimate
    else:
        err = 0.0
        for i in range(1, n + 1):

            def integrand(u, i=i):
                w = judged_beta_mixture_pdf(n, design.P, i, u)
                return -(special.xlogy(w, w) + w * log_fq(u))

            r = integrate(integrand, 0.0, 1.0, cfg)
            parts.append(r)
            total += r.value
            err += r.error_estimate
    return _from_quad(total, err, parts)


def _shannon_x_space(design: Design, dist: Distribution, cfg: QuadratureConfig) -> MeasureResult:
    n = design.n
    parts: list[QuadratureResult] = []
    total = 0.0
    err = 0.0
    for i in range(1, n + 1):
        if design.kind == SRS:
            density = dist.pdf
        elif design.kind == PERFECT_RSS:
            density = lambda x, i=i: order_stat_pdf(OrderStatSpec(n, i, dist), x)
        else:
            density = lambda x, i=i: judged_pdf(dist, n, design.P, i, x)
        r = entropy_integral(density, dist.support, cfg)
        parts.append(r)
        total += r.value
        err += r.error_estimate
    return _from_quad(total, err, parts)


# ---------------------------------------------------------------------------
# Renyi information
# ---------------------------------------------------------------------------


def renyi(
    design: Design,
    dist: Distribution,
    alpha: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    force_numeric: bool = False,
) -> MeasureResult:
    """Renyi information of order alpha (> 0, != 1) of the full sample."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if alpha == 1.0:
        raise ValueError("alpha = 1 is the Shannon case; use shannon()")
    if not force_numeric:
        cf = _renyi_closed_form(design, dist, alpha)
        if cf is not None:
            return cf.scaled(design.m)
    res = _renyi_numeric(design, dist, alpha, cfg)
    return res.scaled(design.m)


def _renyi_closed_form(design: Design, dist: Distribution, alpha: float) -> MeasureResult | None:
    if design.kind == SRS:
        if isinstance(dist, Uniform):
            return _closed(0.0)
        if isinstance(dist, Exponential):
            per_draw = -math.log(dist.lam) - math.log(alpha) / (1.0 - alpha)
            return _closed(design.n * per_draw)
    if design.kind == PERFECT_RSS and isinstance(dist, Exponential) and design.n == 2:
        return _closed(closed_form.exp_renyi("rss", dist.lam, alpha))
    return None


def _renyi_numeric(design: Design, dist: Distribution, alpha: float, cfg: QuadratureConfig) -> MeasureResult:
    n = design.n
    om = 1.0 - alpha
    parts: list[QuadratureResult] = []

    def component_log_density(i, x):
        if design.kind == SRS:
            return dist.log_pdf(x)
        if design.kind == PERFECT_RSS:
            return order_stat_log_pdf(OrderStatSpec(n, i, dist), x)
        with np.errstate(divide="ignore"):
            return np.log(judged_pdf(dist, n, design.P, i, x))

    total = 0.0
    err = 0.0
    ranks = [1] if design.kind == SRS else range(1, n + 1)
    for i in ranks:

        def integrand(x, i=i):
            lg = component_log_density(i, x)
            return np.where(np.isfinite(lg), np.exp(alpha * np.where(np.isfinite(lg), lg, 0.0)), 0.0)

        r = integrate_support(integrand, dist.support, cfg)
        parts.append(r)
        if r.value <= 0:
            raise DivergentIntegralError("renyi integral evaluated to a non-positive value")
        contrib = math.log(r.value) / om
        total += contrib
        err += r.error_estimate / (abs(om) * r.value)
    if design.kind == SRS:
        total *= n
        err *= n
    return _from_quad(total, err, parts)


def renyi_gap_binomial(
    dist: Distribution,
    n: int,
    alpha: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> MeasureResult:
    """H_a(RSS) - H_a(SRS) for alpha > 1 via the normalized f^alpha weight.

    Independent of the component route: the gap equals
    a/(1-a) n log n + 1/(1-a) sum_i log E[P_{F(W)}(T = i-1)^alpha] with
    T | W = w ~ Binomial(n-1, F(w)) and W distributed as f^alpha / int f^alpha.
    """
    if alpha <= 1.0:
        raise ValueError(f"binomial-representation gap requires alpha > 1, got {alpha}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return _closed(0.0)
    om = 1.0 - alpha

    def weight(u):
        # f(F^-1(u))^(alpha-1); du-weight form of f^alpha dx
        return np.exp((alpha - 1.0) * dist.log_pdf_at_quantile(u))

    z = integrate(weight, 0.0, 1.0, cfg)
    parts = [z]
    total = alpha / om * n * math.log(n)
    err = 0.0
    for i in range(1, n + 1):

        def integrand(u, i=i):
            log_pmf = (
                special.gammaln(n)
                - special.gammaln(i)
                - special.gammaln(n - i + 1)
                + special.xlogy(i - 1, u)
                + special.xlogy(n - i, 1.0 - u)
            )
            return np.exp(alpha * log_pmf) * weight(u)

        r = integrate(integrand, 0.0, 1.0, cfg)
        parts.append(r)
        e_i = r.value / z.value
        total += math.log(e_i) / om
        err += (r.error_estimate / r.value + z.error_estimate / z.value) / abs(om)
    return _from_quad(total, err, parts)


# ---------------------------------------------------------------------------
# Kullback-Leibler
# ---------------------------------------------------------------------------


def kl_srs_vs_design(
    design: Design,
    dist: Distribution | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    force_numeric: bool = False,
    mode: str = "u",
) -> MeasureResult:
    """K(SRS, design) for an RSS-kind design of the same size and law.

    The value is distribution-free; the default path computes it entirely in
    u-space (``dist`` is ignored there).  ``mode='x'`` runs the x-space
    verification integral and requires ``dist``.
    """
    if design.kind == SRS:
        raise ValueError("design must be an RSS kind (perfect or imperfect)")
    n = design.n
    if design.kind == PERFECT_RSS and not force_numeric and mode == "u":
        return _closed(closed_form.d_n(n)).scaled(design.m)

    if mode == "x":
        if dist is None:
            raise ValueError("x-space verification mode needs a distribution")
        res = _kl_srs_x_space(design, dist, cfg)
    else:
        res = _kl_srs_u_space(design, cfg)
    return res.scaled(design.m)


def _kl_srs_u_space(design: Design, cfg: QuadratureConfig) -> MeasureResult:
    n = design.n
    parts: list[QuadratureResult] = []
    total = 0.0
    err = 0.0
    for i in range(1, n + 1):

        def integrand(u, i=i):
            w = _mixture_weight(design, i, u)
            with np.errstate(divide="ignore"):
                return -np.log(w)

        r = integrate(integrand, 0.0, 1.0, cfg)
        parts.append(r)
        total += r.value
        err += r.error_estimate
    return _from_quad(total, err, parts)


def _mixture_log_weight_tail_stable(design: Design, i: int, F, S):
    """log of the u-space component weight, from cdf and survival separately
    so the upper tail (where cdf rounds to 1) stays accurate."""
    n = design.n

    def log_beta_kernel(r):
        with np.errstate(divide="ignore"):
            return (
                log_order_coeff(n, r)
                + special.xlogy(r - 1, F)
                + special.xlogy(n - r, S)
            )

    if design.kind == SRS:
        return np.zeros_like(np.asarray(F, dtype=float))
    if design.kind == PERFECT_RSS:
        return log_beta_kernel(i)
    weights = design.P.row(i)
    logs = np.stack(
        [
            np.where(weights[r - 1] > 0.0, math.log(max(weights[r - 1], 1e-300)) + log_beta_kernel(r), -np.inf)
            for r in range(1, n + 1)
        ]
    )
    return special.logsumexp(logs, axis=0)


def _kl_srs_x_space(design: Design, dist: Distribution, cfg: QuadratureConfig) -> MeasureResult:
    n = design.n
    parts: list[QuadratureResult] = []
    total = 0.0
    err = 0.0
    for i in range(1, n + 1):

        def integrand(x, i=i):
            f = dist.pdf(x)
            logw = _mixture_log_weight_tail_stable(design, i, dist.cdf(x), dist.survival(x))
            with np.errstate(invalid="ignore"):
                # below ~1e-300 the density kills any log factor; avoid 0 * inf
                val = np.where(f > 1e-300, -f * logw, 0.0)
            return val

        r = integrate_support(integrand, dist.support, cfg)
        parts.append(r)
        total += r.value
        err += r.error_estimate
    return _from_quad(total, err, parts)


def kl_two_sample(
    design_x: Design,
    dist_f: Distribution,
    design_y: Design,
    dist_g: Distribution,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> MeasureResult:
    """K between the joint laws of two same-size samples.

    Componentwise: sum_i int px_i log(px_i / py_i), computed in the u-space
    of the X-side law.  Raises DivergentIntegralError on support mismatch.
    """
    if design_x.n != design_y.n:
        raise ValueError("designs must share the set size n")
    if design_x.m != design_y.m:
        raise ValueError("designs must share the cycle count m")
    n = design_x.n
    parts: list[QuadratureResult] = []
    total = 0.0
    err = 0.0
    for i in range(1, n + 1):

        def integrand(u, i=i):
            wx = _mixture_weight(design_x, i, u)
            x = dist_f.quantile(u)
            with np.errstate(divide="ignore", invalid="ignore"):
                log_wx = np.log(wx)
                log_wy = _mixture_log_weight_tail_stable(
                    design_y, i, dist_g.cdf(x), dist_g.survival(x)
                )
                bracket = (
                    log_wx
                    + dist_f.log_pdf_at_quantile(u)
                    - log_wy
                    - dist_g.log_pdf(x)
                )
                val = np.where(wx > 0.0, wx * bracket, 0.0)
            return val

        try:
            r = integrate(integrand, 0.0, 1.0, cfg)
        except NonFiniteIntegrandError as exc:
            raise DivergentIntegralError(
                f"two-sample KL integrand is not integrable (component {i}, u = {exc.x})"
            ) from exc
        parts.append(r)
        total += r.value
        err += r.error_estimate
    return _from_quad(total, err, parts).scaled(design_x.m)


def kld_symmetric(
    design_x: Design,
    dist_f: Distribution,
    design_y: Design,
    dist_g: Distribution,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> MeasureResult:
    """Symmetrized divergence K(X, Y) + K(Y, X)."""
    fwd = kl_two_sample(design_x, dist_f, design_y, dist_g, cfg)
    bwd = kl_two_sample(design_y, dist_g, design_x, dist_f, cfg)
    return MeasureResult(
        fwd.value + bwd.value,
        fwd.error_estimate + bwd.error_estimate,
        "quadrature",
        {
            "converged": fwd.diagnostics.get("converged", True)
            and bwd.diagnostics.get("converged", True),
            "subdivisions": fwd.diagnostics.get("subdivisions", 0)
            + bwd.diagnostics.get("subdivisions", 0),
        },
    )


def a_n(
    dist_f: Distribution,
    dist_g: Distribution,
    n: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    mode: str = "reduced",
) -> MeasureResult:
    """Correction term with K(RSS_F, RSS_G) = n K(f, g) + A_n(F, G).

    ``mode='reduced'`` (default) evaluates
    -n(n-1)/2 - n(n-1) int_0^1 [u log G(F^-1(u)) + (1-u) log Gbar(F^-1(u))] du;
    ``mode='sum'`` evaluates the defining sum over beta-weighted components as
    a verification route.  Both vanish at F = G and at n = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return _closed(0.0)
    if mode == "reduced":

        def integrand(u):
            x = dist_f.quantile(u)
            gv = dist_g.cdf(x)
            sv = dist_g.survival(x)
            with np.errstate(divide="ignore", invalid="ignore"):
                val = special.xlogy(u, gv) + special.xlogy(1.0 - u, sv)
            if not np.all(np.isfinite(val)):
                raise NonFiniteIntegrandError(float(u[~np.isfinite(val)][0]))
            return val

        try:
            r = integrate(integrand, 0.0, 1.0, cfg)
        except NonFiniteIntegrandError as exc:
            raise DivergentIntegralError(
                f"A_n integrand is not integrable at u = {exc.x}"
            ) from exc
        c = n * (n - 1)
        return _from_quad(-0.5 * c - c * r.value, c * r.error_estimate, [r])

    if mode != "sum":
        raise ValueError(f"unknown mode {mode!r}")
    parts: list[QuadratureResult] = []
    total = 0.0
    err = 0.0
    for i in range(1, n + 1):

        def integrand(u, i=i):
            w = beta_order_pdf(n, i, u)
            x = dist_f.quantile(u)
            gv = dist_g.cdf(x)
            sv = dist_g.survival(x)
            with np.errstate(divide="ignore", invalid="ignore"):
                bracket = np.zeros_like(u)
                if i > 1:
                    bracket = bracket + (i - 1) * (np.log(u) - np.log(gv))
                if i < n:
                    bracket = bracket + (n - i) * (np.log(1.0 - u) - np.log(sv))
                val = np.where(w > 0.0, w * bracket, 0.0)
            if not np.all(np.isfinite(val)):
                raise NonFiniteIntegrandError(float(u[~np.isfinite(val)][0]))
            return val

        try:
            r = integrate(integrand, 0.0, 1.0, cfg)
        except NonFiniteIntegrandError as exc:
            raise DivergentIntegralError(
                f"A_n integrand is not integrable at u = {exc.x}"
            ) from exc
        parts.append(r)
        total += r.value
        err += r.error_estimate
    return _from_quad(total, err, parts)


def a_n_printed_reduced(
    dist_f: Distribution,
    dist_g: Distribution,
    n: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> MeasureResult:
    """The reduced A_n form as printed, with the bare Gbar term (no log).

    Kept only for the errata report; it does not vanish at F = G.
    """
    if n < 2:
        return _closed(0.0)

    def integrand(u):
        x = dist_f.quantile(u)
        gv = dist_g.cdf(x)
        sv = dist_g.survival(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            return special.xlogy(u, gv) + (1.0 - u) * sv

    r = integrate(integrand, 0.0, 1.0, cfg)
    c = n * (n - 1)
    return _from_quad(-0.5 * c - c * r.value, c * r.error_estimate, [r])


def result_record(
    measure: str,
    design: Design,
    dist: Distribution,
    result: MeasureResult,
    alpha: float | None = None,
) -> dict:
    """JSON-serializable record of a measure evaluation."""
    rec = {
        "measure": measure,
        "design": design.spec_string(),
        "dist": dist.spec_string(),
        "value": result.value,
        "error": result.error_estimate,
        "method": result.method,
    }
    if alpha is not None:
        rec["alpha"] = alpha
    return rec
