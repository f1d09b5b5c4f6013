import sys
from pathlib import Path

import numpy as np
import pytest

from netlogit.model import MarketParams

sys.path.insert(0, str(Path(__file__).parent))


def random_market(rng, n=None, uniform_beta=False, homogeneous_g=False,
                  r_lo=0.05, r_hi=0.95):
    """Random market from the standard test corpus distribution:
    n in [1, 10], g in [0, 3]^n, beta in [0.01, 1], r in [r_lo, r_hi]."""
    if n is None:
        n = int(rng.integers(1, 11))
    if homogeneous_g:
        g = np.full(n, rng.uniform(0.0, 3.0))
    else:
        g = rng.uniform(0.0, 3.0, n)
    if uniform_beta:
        beta = np.full(n, rng.uniform(0.01, 1.0))
    else:
        beta = rng.uniform(0.01, 1.0, n)
    r = float(rng.uniform(r_lo, r_hi))
    return MarketParams(g=g, beta=beta, r=r)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def benchmark_params():
    def make(r):
        return MarketParams(g=(0.993, 0.480, 0.159), beta=0.1, r=r)

    return make
