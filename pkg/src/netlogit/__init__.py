"""Pricing and simulation toolkit for logit markets with popularity feedback.

Consumers arrive one at a time and pick a product (or nothing) with logit
probabilities whose weights multiply intrinsic attraction exp(g - beta*p)
by the current purchase count raised to the feedback strength r. For
0 < r < 1 the market shares settle at a unique long-run point, which makes
expected revenues well defined and both pricing regimes solvable: the
joint-revenue optimum in closed form and the price game by coordinate
fixed-point sweeps.
"""

from ._backend import COMPILED as compiled_kernels
from ._backend import backend_name
from .analysis import (
    ComparisonReport,
    classic_mnl_probabilities,
    compare,
    reproduce_tables,
)
from .competition import (
    NashResult,
    best_response,
    homogeneous_nash,
    nash_r_sweep,
    nash_solve,
)
from .dynamics import (
    SimulationState,
    SimulationTrace,
    gumbel_choice,
    integrate_mean_field,
    run,
    step,
)
from .model import (
    MarketParams,
    choice_probabilities,
    equilibrium_shares,
    expected_consumer_utility,
    normalized_price,
    prices_from_normalized,
    seller_revenues,
    total_revenue,
)
from .monopoly import (
    MonopolyResult,
    monopoly_price,
    monopoly_price_general,
    monopoly_price_uniform_beta,
    monopoly_r_sweep,
    revenue_gradient,
)
from .numerics import (
    SolverError,
    SolverSettings,
    lambert_w0,
    lambert_w0_exp,
    log_sum_exp,
    solve_scalar_root,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "MarketParams",
    "MonopolyResult",
    "NashResult",
    "SimulationState",
    "SimulationTrace",
    "SolverError",
    "SolverSettings",
    "backend_name",
    "best_response",
    "choice_probabilities",
    "classic_mnl_probabilities",
    "compare",
    "compiled_kernels",
    "equilibrium_shares",
    "expected_consumer_utility",
    "gumbel_choice",
    "homogeneous_nash",
    "integrate_mean_field",
    "lambert_w0",
    "lambert_w0_exp",
    "log_sum_exp",
    "monopoly_price",
    "monopoly_price_general",
    "monopoly_price_uniform_beta",
    "monopoly_r_sweep",
    "nash_r_sweep",
    "nash_solve",
    "normalized_price",
    "prices_from_normalized",
    "reproduce_tables",
    "revenue_gradient",
    "run",
    "seller_revenues",
    "solve_scalar_root",
    "step",
    "total_revenue",
]
