"""Price-game equilibrium: coordinate fixed-point sweeps and best responses.

Each seller's first-order condition is beta_i * p_i = (1-r)/(1 - phi_i). In
the normalized price z_i = beta_i p_i / (1-r) the system becomes
z_i = W(c_i / (e + sum_{j != i} c_j exp(1 - z_j))) + 1 with c_i =
exp(g_i/(1-r)), which the solver iterates coordinate-wise (Gauss-Seidel, in
ascending index order for determinism) until the Euclidean norm of the
fixed-point residuals drops below epsilon. The game has exactly one
equilibrium, so the sweep's limit does not depend on the starting point.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .model import (
    MarketParams,
    equilibrium_shares,
    prices_from_normalized,
    validate_prices,
)
from .monopoly import _check_r_grid
from .numerics import (
    SolverError,
    SolverSettings,
    lambert_w0_exp,
    log_sum_exp,
    solve_scalar_root,
)

__all__ = [
    "NashResult",
    "best_response",
    "homogeneous_nash",
    "nash_r_sweep",
    "nash_solve",
    "write_nash_sweep_csv",
]

log = logging.getLogger(__name__)

_DEFAULT_EPS = 1e-10
_DEFAULT_MAX_SWEEPS = 100_000


@dataclass(frozen=True)
class NashResult:
    """Solved price-game equilibrium.

    ``iterations`` counts full coordinate sweeps (0 when the homogeneous
    scalar route was used); ``residual`` is the Euclidean norm of the
    coordinate-wise fixed-point residuals at the returned prices.
    """

    prices: np.ndarray
    normalized_price: np.ndarray
    shares: np.ndarray
    revenues: np.ndarray
    iterations: int
    residual: float


def _default_settings(settings):
    if settings is None:
        return SolverSettings(tolerance=_DEFAULT_EPS, max_iterations=_DEFAULT_MAX_SWEEPS)
    return settings


def _log_attractions(params: MarketParams) -> np.ndarray:
    return params.g / (1.0 - params.r)


def _fixed_point_residuals(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Residuals z_i - 1 - W(c_i / (e + sum_{j != i} c_j exp(1 - z_j)))."""
    n = a.size
    rho = np.empty(n)
    for i in range(n):
        terms = [1.0] + [a[j] - z[j] + 1.0 for j in range(n) if j != i]
        rho[i] = z[i] - 1.0 - lambert_w0_exp(a[i] - log_sum_exp(terms))
    return rho


def _build_result(params: MarketParams, z: np.ndarray, sweeps: int, residual: float):
    prices = prices_from_normalized(params, z)
    shares = equilibrium_shares(params, prices)
    revenues = prices * shares[: params.n]
    return NashResult(
        prices=prices,
        normalized_price=z,
        shares=shares,
        revenues=revenues,
        iterations=int(sweeps),
        residual=float(residual),
    )


def nash_solve(
    params: MarketParams,
    settings: SolverSettings | None = None,
    z0=None,
) -> NashResult:
    """Unique equilibrium of the price game via coordinate sweeps.

    ``z0`` optionally seeds the normalized prices (all ones by default).
    Raises :class:`SolverError` when the sweep budget is exhausted before
    the residual norm falls below ``settings.tolerance``.
    """
    settings = _default_settings(settings)
    a = _log_attractions(params)
    if z0 is None:
        z0 = np.ones(params.n)
    else:
        z0 = np.atleast_1d(np.asarray(z0, dtype=float))
        if z0.shape != (params.n,):
            raise ValueError(f"z0 has shape {z0.shape}, expected ({params.n},)")
        if not np.all(np.isfinite(z0)) or np.any(z0 < 0):
            raise ValueError("z0 must be finite and nonnegative")
    z, sweeps, residual, nonmono = kernels.nash_sweeps(
        a, z0, settings.tolerance, settings.max_iterations
    )
    if residual >= settings.tolerance:
        raise SolverError(
            f"sweep budget exhausted after {sweeps} sweeps; "
            f"residual {residual:.3e} >= {settings.tolerance:.3e}"
        )
    if nonmono:
        # Termination is guaranteed, but the residual is not proven to fall
        # monotonically; report when it did not.
        log.info("residual increased on %d of %d sweeps", nonmono, sweeps)
    log.debug("nash_solve: %d sweeps, residual %.3e", sweeps, residual)
    return _build_result(params, z, sweeps, residual)


def best_response(
    params: MarketParams,
    opponent_prices,
    player: int,
    settings: SolverSettings | None = None,
) -> float:
    """Revenue-maximizing price of one seller against fixed opponent prices.

    Solves the seller's first-order condition
    beta_i p_i (1 - phi_i(p)) = 1 - r, whose left side is strictly
    increasing in the own price, and verifies the second-order condition at
    the root.
    """
    settings = _default_settings(settings)
    player = int(player)
    if not 0 <= player < params.n:
        raise ValueError(f"player index {player} out of range for n={params.n}")
    opponents = np.atleast_1d(np.asarray(opponent_prices, dtype=float))
    if opponents.shape != (params.n - 1,):
        raise ValueError(
            f"opponent_prices has shape {opponents.shape}, expected ({params.n - 1},)"
        )
    one_minus_r = 1.0 - params.r
    beta_i = float(params.beta[player])

    def full_prices(p_i):
        return np.insert(opponents, player, p_i)

    def foc(p_i):
        phi_i = equilibrium_shares(params, full_prices(p_i))[player]
        return beta_i * p_i * (1.0 - phi_i) - one_minus_r

    hi = one_minus_r / beta_i + 1.0
    for _ in range(200):
        if foc(hi) > 0:
            break
        hi *= 2.0
    else:  # pragma: no cover - foc grows without bound
        raise SolverError("failed to bracket the best-response condition")
    price = solve_scalar_root(foc, (0.0, hi), settings)
    z_i = beta_i * price / one_minus_r
    if z_i <= 1.0:
        raise SolverError(
            f"second-order condition violated at best response (z={z_i})"
        )
    return float(price)


def homogeneous_nash(params: MarketParams) -> NashResult:
    """Equilibrium when every product has the same intrinsic utility.

    All normalized prices collapse to one scalar z solving
    (z - 1) e^z + z c (n - 1) = n c with c = exp(g/(1-r)); the equation is
    solved in a form scaled by 1/c so it stays finite as r approaches 1.
    Prices may still differ through the per-product sensitivities. The
    scalar always lies in (1, n/(n-1)) for n >= 2.
    """
    if not params.homogeneous_g:
        raise ValueError("homogeneous_nash requires all intrinsic utilities equal")
    a_hat = float(params.g[0]) / (1.0 - params.r)
    n = params.n
    if n == 1:
        z_star = lambert_w0_exp(a_hat - 1.0) + 1.0
    else:

        def scaled(zv):
            return (zv - 1.0) * np.exp(zv - a_hat) + (n - 1.0) * zv - n

        z_star = solve_scalar_root(scaled, (1.0, n / (n - 1.0)))
    z = np.full(n, z_star)
    a = _log_attractions(params)
    residual = float(np.linalg.norm(_fixed_point_residuals(a, z)))
    return _build_result(params, z, 0, residual)


def nash_r_sweep(params_base: MarketParams, r_grid) -> list[tuple[float, NashResult]]:
    """Equilibrium across a grid of feedback strengths.

    Returns (r, result) pairs and logs two empirical observations: whether
    the no-purchase share falls along the grid, and any turning points of
    the top product's revenue (reported, never enforced).
    """
    grid = _check_r_grid(r_grid)
    rows = [(float(r), nash_solve(params_base.with_r(r))) for r in grid]
    if len(rows) > 1:
        top = int(np.argmax(params_base.g))
        nop = np.array([res.shares[-1] for _, res in rows])
        w_top = np.array([res.revenues[top] for _, res in rows])
        if np.all(np.diff(nop) < 0):
            log.info("no-purchase share decreases along the whole r grid")
        else:
            log.info("no-purchase share is not monotone on this r grid")
        sign_flips = np.nonzero(np.diff(np.sign(np.diff(w_top))))[0]
        if sign_flips.size:
            log.info(
                "top product revenue changes direction near r=%s",
                [float(grid[i + 1]) for i in sign_flips],
            )
    return rows


def write_nash_sweep_csv(rows, path_or_file, digits: int = 12):
    """CSV export, header ``r,p_1..p_n,phi_1..phi_nopurchase,w_1..w_n,iterations,residual``."""
    if not rows:
        raise ValueError("no sweep rows to write")
    n = rows[0][1].prices.size
    header = (
        "r,"
        + ",".join(f"p_{i + 1}" for i in range(n))
        + ","
        + ",".join(f"phi_{i + 1}" for i in range(n))
        + ",phi_nopurchase,"
        + ",".join(f"w_{i + 1}" for i in range(n))
        + ",iterations,residual"
    )
    lines = [header]
    for r, res in rows:
        cells = [f"{r:.{digits}g}"]
        cells += [f"{x:.{digits}g}" for x in res.prices]
        cells += [f"{x:.{digits}g}" for x in res.shares]
        cells += [f"{x:.{digits}g}" for x in res.revenues]
        cells.append(str(res.iterations))
        cells.append(f"{res.residual:.{digits}g}")
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)
