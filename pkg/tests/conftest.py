import numpy as np
import pytest

from rssinfo.distributions import Exponential, Normal, Uniform, Weibull


@pytest.fixture
def families():
    """The four parametric families exercised by every property grid."""
    return [Uniform(), Exponential(1.0), Normal(0.0, 1.0), Weibull(2.0, 1.0)]


@pytest.fixture
def interior_u():
    """A grid of quantile levels strictly inside (0, 1), tails included."""
    return np.concatenate(
        [
            np.array([1e-9, 1e-6, 1e-3]),
            np.linspace(0.01, 0.99, 25),
            1.0 - np.array([1e-3, 1e-6, 1e-9]),
        ]
    )
