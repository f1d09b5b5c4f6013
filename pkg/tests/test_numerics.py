import math

import numpy as np
import pytest

from netlogit.numerics import (
    SolverError,
    SolverSettings,
    lambert_w0,
    lambert_w0_exp,
    log_sum_exp,
    solve_scalar_root,
)


def bisect_w(x, lo=0.0, hi=None, iters=200):
    """Independent bisection oracle for w * exp(w) = x."""
    if hi is None:
        hi = max(10.0, math.log(max(x, 1.0)) + 10.0)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestLambertW:
    def test_zero(self):
        assert lambert_w0(0.0) == 0.0

    def test_at_e(self):
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_against_bisection_oracle(self):
        # frozen oracle output for x = 2.3921
        assert lambert_w0(2.3921) == pytest.approx(0.9371178607112176, abs=1e-11)
        for x in (0.01, 0.5, 2.3921, 7.0, 123.4, 9.9e5):
            assert lambert_w0(x) == pytest.approx(bisect_w(x), abs=1e-11)

    def test_defining_identity_over_domain(self):
        xs = np.concatenate([[0.0], np.logspace(-8, 6, 300)])
        for x in xs:
            w = lambert_w0(x)
            assert abs(w * math.exp(w) - x) <= 1e-10 * max(1.0, x)

    def test_strictly_increasing(self):
        xs = np.linspace(0.0, 20.0, 2001)
        ws = np.array([lambert_w0(x) for x in xs])
        assert np.all(np.diff(ws) > 0)

    def test_concave_on_grid(self):
        xs = np.linspace(0.1, 50.0, 500)
        ws = np.array([lambert_w0(x) for x in xs])
        assert np.all(np.diff(ws, 2) < 0)

    @pytest.mark.parametrize("bad", [-1.0, -1e-12, float("nan"), float("inf")])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(ValueError):
            lambert_w0(bad)


class TestLambertWExp:
    def test_matches_direct_path(self):
        for y in (-30.0, -1.0, 0.0, 3.5, 100.0, 699.0):
            assert lambert_w0_exp(y) == pytest.approx(
                lambert_w0(math.exp(y)), rel=1e-13
            )

    def test_log_domain_identity(self):
        # w + log(w) = y beyond the overflow cutoff
        for y in (701.0, 1e3, 1e5, 1e8):
            w = lambert_w0_exp(y)
            assert w + math.log(w) == pytest.approx(y, rel=1e-12)

    def test_continuity_at_cutoff(self):
        below = lambert_w0_exp(700.0 - 1e-9)
        above = lambert_w0_exp(700.0 + 1e-9)
        assert above == pytest.approx(below, rel=1e-9)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            lambert_w0_exp(float("inf"))


class TestSolveScalarRoot:
    def test_linear(self):
        assert solve_scalar_root(lambda x: x - 1.0, (0.0, 2.0)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_lambert_identity(self):
        f = lambda x: x * math.exp(x) - math.e
        assert solve_scalar_root(f, (0.0, 2.0)) == pytest.approx(1.0, abs=1e-12)

    def test_cube_root(self):
        # frozen bisection oracle value for x^3 = 2
        root = solve_scalar_root(lambda x: x**3 - 2.0, (0.0, 2.0))
        assert root == pytest.approx(1.2599210498948732, abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(SolverError, match="sign change"):
            solve_scalar_root(lambda x: x + 10.0, (0.0, 1.0))

    def test_budget_exhausted(self):
        settings = SolverSettings(tolerance=1e-12, max_iterations=2)
        with pytest.raises(SolverError, match="budget"):
            solve_scalar_root(lambda x: math.tanh(x) - 0.5, (-40.0, 40.0), settings)

    def test_endpoint_root(self):
        assert solve_scalar_root(lambda x: x, (0.0, 1.0)) == 0.0


class TestLogSumExp:
    def test_pair_of_zeros(self):
        assert log_sum_exp([0.0, 0.0]) == pytest.approx(math.log(2.0), abs=1e-15)

    def test_shift_invariance_large(self):
        assert log_sum_exp([1000.0, 1000.0]) == pytest.approx(
            1000.0 + math.log(2.0), abs=1e-12
        )

    def test_against_direct_summation(self):
        vals = [0.5, 1.2, -0.3]
        direct = math.log(sum(math.exp(v) for v in vals))
        assert direct == pytest.approx(1.7421588491986966, abs=1e-12)
        assert log_sum_exp(vals) == pytest.approx(direct, abs=1e-13)

    def test_shift_property(self, rng):
        for _ in range(50):
            v = rng.normal(size=rng.integers(1, 8))
            c = float(rng.normal() * 100)
            assert log_sum_exp(v + c) == pytest.approx(
                log_sum_exp(v) + c, abs=1e-9
            )

    def test_extreme_magnitudes(self):
        assert log_sum_exp([1e4, 1e4]) == pytest.approx(1e4 + math.log(2.0), rel=1e-14)
        assert log_sum_exp([-1e4, -1e4]) == pytest.approx(
            -1e4 + math.log(2.0), rel=1e-14
        )

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(ValueError):
            log_sum_exp([])
        with pytest.raises(ValueError):
            log_sum_exp([1.0, float("nan")])
        with pytest.raises(ValueError):
            log_sum_exp([float("-inf"), 0.0])


class TestSolverSettings:
    def test_defaults(self):
        s = SolverSettings()
        assert s.tolerance == 1e-12
        assert s.max_iterations == 200

    @pytest.mark.parametrize("kw", [dict(tolerance=0.0), dict(tolerance=-1.0),
                                    dict(max_iterations=0)])
    def test_validation(self, kw):
        with pytest.raises(ValueError):
            SolverSettings(**kw)
