"""Joint-revenue-maximizing ("monopolistic") pricing.

With a uniform price sensitivity the optimum is closed form: every product
gets the same price (1-r)/beta * [W(sum_i exp(g_i/(1-r)) / e) + 1] with W
the Lambert function. With heterogeneous sensitivities the optimum is
pinned down by the equal-margin conditions p_i/(1-r) - 1/beta_i being equal
across products, collapsing the search to one scalar unknown.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .model import (
    MarketParams,
    equilibrium_shares,
    normalized_price,
    seller_revenues,
    total_revenue,
    validate_prices,
)
from .numerics import (
    SolverError,
    SolverSettings,
    lambert_w0_exp,
    log_sum_exp,
    solve_scalar_root,
)

__all__ = [
    "MonopolyResult",
    "MonopolySweepRow",
    "monopoly_price",
    "monopoly_price_general",
    "monopoly_price_uniform_beta",
    "monopoly_r_sweep",
    "revenue_gradient",
    "write_monopoly_sweep_csv",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonopolyResult:
    """Solved joint-revenue optimum.

    ``gradient_norm`` is the max-abs first-order residual of the revenue
    gradient at the returned prices, recomputed from scratch.
    """

    prices: np.ndarray
    normalized_price: np.ndarray
    shares: np.ndarray
    total_revenue: float
    gradient_norm: float


@dataclass(frozen=True)
class MonopolySweepRow:
    """One grid point of :func:`monopoly_r_sweep`."""

    r: float
    price: float
    phi_nopurchase: float
    phi_top: float
    total_revenue: float


def revenue_gradient(params: MarketParams, prices) -> np.ndarray:
    """Analytic gradient of total revenue with respect to each price.

    Coordinate k equals phi_k * [beta_k/(1-r) * R(p) + 1 - beta_k/(1-r) * p_k].
    """
    prices = validate_prices(params, prices)
    phi = equilibrium_shares(params, prices)[: params.n]
    revenue = float((prices * phi).sum())
    scale = params.beta / (1.0 - params.r)
    return phi * (scale * revenue + 1.0 - scale * prices)


def _build_result(params: MarketParams, prices: np.ndarray) -> MonopolyResult:
    shares = equilibrium_shares(params, prices)
    revenue = float((prices * shares[: params.n]).sum())
    grad_norm = float(np.max(np.abs(revenue_gradient(params, prices))))
    return MonopolyResult(
        prices=prices,
        normalized_price=normalized_price(params, prices),
        shares=shares,
        total_revenue=revenue,
        gradient_norm=grad_norm,
    )


def monopoly_price_uniform_beta(params: MarketParams) -> MonopolyResult:
    """Closed-form optimum for markets with one common price sensitivity.

    The common price is (1-r)/beta * [W(sum_i exp(g_i/(1-r)) / e) + 1]; the
    Lambert argument is kept in log form so the sweep stays valid for r up
    to 0.999 where exp(g/(1-r)) overflows.
    """
    if not params.uniform_beta:
        raise ValueError(
            "price sensitivities differ across products; use monopoly_price_general"
        )
    one_minus_r = 1.0 - params.r
    y = log_sum_exp(params.g / one_minus_r) - 1.0
    z = lambert_w0_exp(y) + 1.0
    price = one_minus_r * z / float(params.beta[0])
    return _build_result(params, np.full(params.n, price))


def monopoly_price_general(
    params: MarketParams, settings: SolverSettings | None = None
) -> MonopolyResult:
    """Joint-revenue optimum for arbitrary positive price sensitivities.

    The equal-margin conditions force p_i(t) = (1-r) * (t + 1/beta_i) for a
    single scalar t, which at the optimum equals R(p(t))/(1-r); that scalar
    fixed point is solved by bracketed root finding and the first-order
    residual is verified on the result.
    """
    if settings is None:
        settings = SolverSettings()
    one_minus_r = 1.0 - params.r
    inv_beta = 1.0 / params.beta

    def prices_at(t):
        return one_minus_r * (t + inv_beta)

    def objective(t):
        return t - total_revenue(params, prices_at(t)) / one_minus_r

    # Revenue collapses once beta_min * t dwarfs max g/(1-r), so the sign
    # change always appears under doubling.
    t_hi = float(params.g.max()) / one_minus_r + float(inv_beta.max()) + 10.0
    for _ in range(200):
        if objective(t_hi) > 0:
            break
        t_hi *= 2.0
    else:  # pragma: no cover
        raise SolverError("failed to bracket the scalar revenue fixed point")
    t_star = solve_scalar_root(objective, (0.0, t_hi), settings)
    result = _build_result(params, prices_at(t_star))
    if result.gradient_norm > max(settings.tolerance, 1e-9):
        raise SolverError(
            f"first-order residual {result.gradient_norm:.3e} too large "
            f"at solved prices"
        )
    return result


def monopoly_price(
    params: MarketParams, settings: SolverSettings | None = None
) -> MonopolyResult:
    """Dispatch to the closed form when possible, else the general solver."""
    if params.uniform_beta:
        return monopoly_price_uniform_beta(params)
    return monopoly_price_general(params, settings)


def monopoly_r_sweep(params_base: MarketParams, r_grid) -> list[MonopolySweepRow]:
    """Closed-form optimum across a grid of feedback strengths.

    Emits one row (r, price, no-purchase share, top-product share, total
    revenue) per grid point; ``phi_top`` is the share of the highest
    intrinsic utility product (first index on ties). Requires a uniform
    price sensitivity, matching the single shared price in the row schema.
    """
    grid = _check_r_grid(r_grid)
    if not params_base.uniform_beta:
        raise ValueError("monopoly_r_sweep requires a uniform price sensitivity")
    top = int(np.argmax(params_base.g))
    rows = []
    for r in grid:
        res = monopoly_price_uniform_beta(params_base.with_r(r))
        rows.append(
            MonopolySweepRow(
                r=float(r),
                price=float(res.prices[0]),
                phi_nopurchase=float(res.shares[-1]),
                phi_top=float(res.shares[top]),
                total_revenue=res.total_revenue,
            )
        )
    return rows


def write_monopoly_sweep_csv(rows, path_or_file, digits: int = 12):
    """CSV export with header ``r,p_mono,phi_nopurchase,phi_1,total_revenue``."""
    lines = ["r,p_mono,phi_nopurchase,phi_1,total_revenue"]
    for row in rows:
        lines.append(
            ",".join(
                f"{x:.{digits}g}"
                for x in (
                    row.r,
                    row.price,
                    row.phi_nopurchase,
                    row.phi_top,
                    row.total_revenue,
                )
            )
        )
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)


def _check_r_grid(r_grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(r_grid, dtype=float))
    if grid.size < 1:
        raise ValueError("r grid must not be empty")
    if np.any(grid <= 0.0) or np.any(grid >= 1.0):
        raise ValueError("r grid values must lie strictly inside (0, 1)")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise ValueError("r grid must be strictly increasing")
    return grid
