"""The compiled kernels and the pure-Python fallback must agree bit for bit."""

import numpy as np
import pytest

from netlogit import _kernels_py
from netlogit._backend import backend_name
from netlogit.model import MarketParams

_kernels = pytest.importorskip(
    "netlogit._kernels", reason="compiled kernels not built"
)

from conftest import random_market


def _rng(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def test_backend_name_reports_compiled():
    assert backend_name() == "compiled"


@pytest.mark.parametrize("seed", [0, 42, 1234])
def test_simulation_is_bit_identical(seed):
    params = MarketParams(g=(0.993, 0.480, 0.159), beta=0.1, r=0.5)
    tau = np.append(params.g - params.beta * np.array([1.0, 0.5, 0.2]), 0.0)
    d_c = np.ones(4, dtype=np.int64)
    d_p = np.ones(4, dtype=np.int64)
    phis_c, ch_c = _kernels.simulate_consumers(
        tau, params.r, d_c, 0, 50_000, 500, _rng(seed), True
    )
    phis_p, ch_p = _kernels_py.simulate_consumers(
        tau, params.r, d_p, 0, 50_000, 500, _rng(seed), True
    )
    assert np.array_equal(d_c, d_p)
    assert np.array_equal(ch_c, ch_p)
    assert np.array_equal(phis_c, phis_p)


def test_simulation_with_preloaded_counts_matches(rng):
    tau = np.append(rng.normal(size=4), 0.0)
    d0 = rng.integers(1, 9, size=5).astype(np.int64)
    d_c, d_p = d0.copy(), d0.copy()
    k0 = int(d0.sum()) - 5
    _kernels.simulate_consumers(tau, 0.7, d_c, k0, 20_000, 0, _rng(8), False)
    _kernels_py.simulate_consumers(tau, 0.7, d_p, k0, 20_000, 0, _rng(8), False)
    assert np.array_equal(d_c, d_p)


def test_nash_sweeps_are_bit_identical(rng):
    for _ in range(50):
        params = random_market(rng, n=int(rng.integers(1, 9)))
        a = params.g / (1.0 - params.r)
        z_c, s_c, res_c, nm_c = _kernels.nash_sweeps(a, np.ones(params.n), 1e-10, 10**5)
        z_p, s_p, res_p, nm_p = _kernels_py.nash_sweeps(
            a, np.ones(params.n), 1e-10, 10**5
        )
        assert np.array_equal(z_c, z_p)
        assert (s_c, nm_c) == (s_p, nm_p)
        assert res_c == res_p


def test_lambert_parity_with_python_implementation():
    from netlogit.numerics import lambert_w0, lambert_w0_exp

    for x in (0.0, 1e-8, 0.5, 2.3921, np.e, 100.0, 1e6):
        assert _kernels.lambert_w0(x) == lambert_w0(x)
    for y in (-5.0, 0.0, 10.0, 699.0, 705.0, 1e4):
        assert _kernels.lambert_w0_exp(y) == lambert_w0_exp(y)


def test_pure_env_var_forces_fallback():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from netlogit import backend_name; print(backend_name())"],
        capture_output=True,
        text=True,
        env={"NETLOGIT_PURE": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == "python"
