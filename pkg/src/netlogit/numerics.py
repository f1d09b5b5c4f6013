"""Scalar special functions and root finding shared by all solvers."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "SolverSettings",
    "SolverError",
    "lambert_w0",
    "lambert_w0_exp",
    "log_sum_exp",
    "solve_scalar_root",
]

# Switch to the asymptotic solve of w + ln(w) = y once exp(y) would overflow.
_LOG_ARG_CUTOFF = 700.0


class SolverError(RuntimeError):
    """A numerical routine failed to meet its convergence contract."""


@dataclass(frozen=True)
class SolverSettings:
    """Residual tolerance and iteration budget for iterative solvers."""

    tolerance: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self):
        if not (self.tolerance > 0):
            raise ValueError(f"tolerance must be positive; got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(
                f"max_iterations must be at least 1; got {self.max_iterations}"
            )


def lambert_w0(x):
    """Principal branch of the Lambert W function for x >= 0.

    Returns the unique w >= 0 with w * exp(w) = x, computed by Halley's
    iteration seeded with log(1 + x) for small x and log(x) - log(log(x))
    for large x. Converges to |w*exp(w) - x| <= 1e-12 * max(1, x) in a
    handful of iterations over the whole domain.
    """
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x < 0:
        raise ValueError(f"lambert_w0 requires finite x >= 0; got {x}")
    if x == 0.0:
        return 0.0
    if x < math.e:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    tol = 1e-13 * max(1.0, x)
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= tol:
            break
        wp1 = w + 1.0
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    return w


def lambert_w0_exp(y):
    """Evaluate lambert_w0(exp(y)) without forming exp(y).

    For y above the overflow cutoff the defining relation becomes
    w + log(w) = y, solved by Newton from the asymptotic seed
    y - log(y) + log(y)/y. Accepts any finite y; exp(y) underflows to 0
    for very negative y, giving W = 0.
    """
    y = float(y)
    if math.isnan(y) or math.isinf(y):
        raise ValueError(f"lambert_w0_exp requires finite y; got {y}")
    if y <= _LOG_ARG_CUTOFF:
        return lambert_w0(math.exp(y))
    ly = math.log(y)
    w = y - ly + ly / y
    for _ in range(20):
        f = w + math.log(w) - y
        if abs(f) <= 1e-14 * y:
            break
        w -= f / (1.0 + 1.0 / w)
    return w


def log_sum_exp(values):
    """Stable log(sum(exp(values))) via the max-shift identity.

    Exact up to rounding for exponents of magnitude 1e4 and beyond; the
    input must be a non-empty collection of finite reals.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("log_sum_exp requires a non-empty input")
    if not np.all(np.isfinite(v)):
        raise ValueError("log_sum_exp requires finite inputs")
    m = float(np.max(v))
    return m + math.log(float(np.sum(np.exp(v - m))))


def solve_scalar_root(f, bracket, settings=None):
    """Root of a continuous monotone function on a sign-changing bracket.

    Thin wrapper over Brent's method that enforces the residual contract
    |f(root)| <= settings.tolerance on top of the bracketing convergence.

    Raises
    ------
    SolverError
        If the bracket does not change sign, the iteration budget is
        exhausted, or the residual bound cannot be met.
    """
    if settings is None:
        settings = SolverSettings()
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise SolverError(
            f"no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )
    try:
        root, res = brentq(
            f,
            lo,
            hi,
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
            maxiter=settings.max_iterations,
            full_output=True,
            disp=False,
        )
    except ValueError as exc:  # pragma: no cover - guarded above
        raise SolverError(str(exc)) from exc
    residual = abs(f(root))
    if not res.converged or residual > settings.tolerance:
        raise SolverError(
            f"iteration budget exhausted after {res.iterations} iterations; "
            f"|f(x)|={residual:.3e} > tolerance={settings.tolerance:.3e}"
        )
    return float(root)
