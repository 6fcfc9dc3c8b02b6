"""Continuous parametric families exposing the primitives every measure
integral consumes: density, log-density, cdf, survival, quantile, and
density-at-quantile.

All operations accept scalars or numpy arrays and are pure; instances are
immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class DistributionParseError(ValueError):
    """Raised when a textual distribution spec cannot be parsed."""


@dataclass(frozen=True)
class Support:
    """Support interval; lower/upper may be -inf/+inf."""

    lower: float
    upper: float

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.upper)

    @property
    def is_half_line(self) -> bool:
        return math.isfinite(self.lower) and not math.isfinite(self.upper)

    @property
    def is_full_line(self) -> bool:
        return not math.isfinite(self.lower) and not math.isfinite(self.upper)


class Distribution:
    """Base class for continuous laws.

    Subclasses must set ``name``, ``support`` and implement ``pdf``,
    ``log_pdf``, ``cdf``, ``survival`` and ``quantile``.  ``pdf_at_quantile``
    defaults to the composition but families override it with a closed form
    where one exists.
    """

    name: str
    support: Support

    def pdf(self, x):
        raise NotImplementedError

    def log_pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def survival(self, x):
        return 1.0 - self.cdf(x)

    def quantile(self, u):
        raise NotImplementedError

    def pdf_at_quantile(self, u):
        _check_unit_open(u)
        return self.pdf(self.quantile(u))

    def log_pdf_at_quantile(self, u):
        with np.errstate(divide="ignore"):
            return np.log(self.pdf_at_quantile(u))

    def __repr__(self):
        return f"{type(self).__name__}({self.spec_string()!r})"

    def spec_string(self) -> str:
        raise NotImplementedError


def _check_unit_open(u) -> None:
    u = np.asarray(u)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("quantile argument must lie strictly inside (0, 1)")


class Uniform(Distribution):
    """Uniform(0, 1)."""

    name = "unif"
    support = Support(0.0, 1.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0.0) & (x <= 1.0), 1.0, 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0.0) & (x <= 1.0), 0.0, -np.inf)

    def cdf(self, x):
        return np.clip(np.asarray(x, dtype=float), 0.0, 1.0)

    def survival(self, x):
        return 1.0 - self.cdf(x)

    def quantile(self, u):
        _check_unit_open(u)
        return np.asarray(u, dtype=float)

    def pdf_at_quantile(self, u):
        _check_unit_open(u)
        return np.ones_like(np.asarray(u, dtype=float))

    def entropy(self) -> float:
        return 0.0

    def spec_string(self) -> str:
        return "unif"


class Exponential(Distribution):
    """Exponential with rate ``lam`` (density lam * exp(-lam * x), x > 0)."""

    name = "exp"
    support = Support(0.0, math.inf)

    def __init__(self, lam: float):
        if not (lam > 0):
            raise ValueError(f"exponential rate must be positive, got {lam}")
        self.lam = float(lam)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, self.lam * np.exp(-self.lam * x), 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, math.log(self.lam) - self.lam * x, -np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, -np.expm1(-self.lam * x), 0.0)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, np.exp(-self.lam * x), 1.0)

    def quantile(self, u):
        _check_unit_open(u)
        return -np.log1p(-np.asarray(u, dtype=float)) / self.lam

    def pdf_at_quantile(self, u):
        _check_unit_open(u)
        return self.lam * (1.0 - np.asarray(u, dtype=float))

    def entropy(self) -> float:
        return 1.0 - math.log(self.lam)

    def spec_string(self) -> str:
        return f"exp:{self.lam:g}"


class Normal(Distribution):
    """Normal with location ``mu`` and scale ``sigma``."""

    name = "norm"
    support = Support(-math.inf, math.inf)

    def __init__(self, mu: float = 0.0, sigma: float = 1.0):
        if not (sigma > 0):
            raise ValueError(f"normal scale must be positive, got {sigma}")
        self.mu = float(mu)
        self.sigma = float(sigma)

    def _z(self, x):
        return (np.asarray(x, dtype=float) - self.mu) / self.sigma

    def pdf(self, x):
        z = self._z(x)
        return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))

    def log_pdf(self, x):
        z = self._z(x)
        return -0.5 * z * z - math.log(self.sigma) - 0.5 * math.log(2.0 * math.pi)

    def cdf(self, x):
        return special.ndtr(self._z(x))

    def survival(self, x):
        return special.ndtr(-self._z(x))

    def quantile(self, u):
        _check_unit_open(u)
        return self.mu + self.sigma * special.ndtri(np.asarray(u, dtype=float))

    def pdf_at_quantile(self, u):
        _check_unit_open(u)
        z = special.ndtri(np.asarray(u, dtype=float))
        return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))

    def entropy(self) -> float:
        return 0.5 * math.log(2.0 * math.pi * math.e * self.sigma**2)

    def spec_string(self) -> str:
        return f"norm:{self.mu:g},{self.sigma:g}"


class Weibull(Distribution):
    """Weibull with shape ``k`` and scale ``theta``."""

    name = "weibull"
    support = Support(0.0, math.inf)

    def __init__(self, k: float, theta: float = 1.0):
        if not (k > 0):
            raise ValueError(f"weibull shape must be positive, got {k}")
        if not (theta > 0):
            raise ValueError(f"weibull scale must be positive, got {theta}")
        self.k = float(k)
        self.theta = float(theta)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            y = np.where(x > 0.0, x / self.theta, 1.0)
            val = (self.k / self.theta) * y ** (self.k - 1.0) * np.exp(-(y**self.k))
        return np.where(x > 0.0, val, 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            y = np.where(x > 0.0, x / self.theta, 1.0)
            val = (
                math.log(self.k / self.theta)
                + (self.k - 1.0) * np.log(y)
                - y**self.k
            )
        return np.where(x > 0.0, val, -np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        y = np.where(x > 0.0, x / self.theta, 0.0)
        return np.where(x > 0.0, -np.expm1(-(y**self.k)), 0.0)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        y = np.where(x > 0.0, x / self.theta, 0.0)
        return np.where(x > 0.0, np.exp(-(y**self.k)), 1.0)

    def quantile(self, u):
        _check_unit_open(u)
        y = -np.log1p(-np.asarray(u, dtype=float))
        return self.theta * y ** (1.0 / self.k)

    def pdf_at_quantile(self, u):
        _check_unit_open(u)
        u = np.asarray(u, dtype=float)
        y = -np.log1p(-u)
        return (self.k / self.theta) * y ** (1.0 - 1.0 / self.k) * (1.0 - u)

    def entropy(self) -> float:
        return (
            np.euler_gamma * (1.0 - 1.0 / self.k)
            + math.log(self.theta / self.k)
            + 1.0
        )

    def spec_string(self) -> str:
        return f"weibull:{self.k:g},{self.theta:g}"


def parse_distribution(spec: str) -> Distribution:
    """Parse a textual spec: ``exp:1.0``, ``unif``, ``norm:0,1``, ``weibull:2,1``."""
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    params: list[float] = []
    if rest:
        try:
            params = [float(p) for p in rest.split(",")]
        except ValueError as exc:
            raise DistributionParseError(
                f"bad parameter list {rest!r} in distribution spec {spec!r}"
            ) from exc
    try:
        if name == "unif":
            if params:
                raise DistributionParseError("unif takes no parameters")
            return Uniform()
        if name == "exp":
            if len(params) != 1:
                raise DistributionParseError("exp takes one parameter: rate")
            return Exponential(params[0])
        if name == "norm":
            if len(params) not in (0, 2):
                raise DistributionParseError("norm takes two parameters: mu,sigma")
            return Normal(*params)
        if name == "weibull":
            if len(params) not in (1, 2):
                raise DistributionParseError(
                    "weibull takes parameters: shape[,scale]"
                )
            return Weibull(*params)
    except ValueError as exc:
        raise DistributionParseError(str(exc)) from exc
    raise DistributionParseError(f"unknown distribution family {name!r} in {spec!r}")
