"""Sequential-consumer market simulator and the deterministic mean-field flow.

Each arriving consumer sees the cumulative purchase counts ``d`` (every slot,
including the no-purchase slot, starts at 1), picks slot i with probability
proportional to (d_i)^r * exp(g_i - beta_i p_i), and increments the chosen
count. The categorical draw consumes one uniform double per consumer and is
distributionally equivalent to the Gumbel-argmax choice rule;
:func:`gumbel_choice` implements the argmax form for fidelity checks.

The per-consumer loop runs in the compiled kernel when available (see
``netlogit._backend``). The RNG is fixed for the life of the repository:
``numpy.random.Generator`` over the PCG64 bit generator, seeded through
``SeedSequence``; golden traces pin the exact stream.
"""

import io
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._backend import backend_name, kernels
from .model import (
    MarketParams,
    choice_probabilities,
    equilibrium_shares,
    validate_prices,
    validate_shares,
)

__all__ = [
    "SimulationState",
    "SimulationTrace",
    "gumbel_choice",
    "integrate_mean_field",
    "run",
    "step",
]

log = logging.getLogger(__name__)


@dataclass
class SimulationState:
    """Mutable simulator state: counts, consumer index and RNG.

    Invariants: every count is at least 1 and ``sum(d) == (n + 1) + k``
    (each of the n+1 slots starts at one unit, one increment per consumer).
    A state is single-owner; run independent seeds in parallel instead of
    sharing one state.
    """

    d: np.ndarray
    k: int
    rng_seed: int
    rng: np.random.Generator

    @classmethod
    def fresh(cls, params: MarketParams, seed: int):
        """Pristine market: one unit in every slot, no consumers yet."""
        d = np.ones(params.n + 1, dtype=np.int64)
        return cls(d=d, k=0, rng_seed=int(seed), rng=_make_rng(seed))

    @classmethod
    def from_counts(cls, params: MarketParams, d, seed: int):
        """State with preloaded purchase history (counts >= 1 per slot)."""
        d = np.asarray(d, dtype=np.int64).copy()
        if d.shape != (params.n + 1,):
            raise ValueError(
                f"counts must have shape ({params.n + 1},); got {d.shape}"
            )
        if np.any(d < 1):
            raise ValueError("every cumulative count must be at least 1")
        k = int(d.sum()) - (params.n + 1)
        return cls(d=d, k=k, rng_seed=int(seed), rng=_make_rng(seed))

    @property
    def shares(self) -> np.ndarray:
        """Current empirical market shares d / sum(d)."""
        return self.d / self.d.sum()


@dataclass
class SimulationTrace:
    """Checkpointed history of one simulation run."""

    ks: np.ndarray
    phis: np.ndarray
    l1_to_equilibrium: np.ndarray
    final_state: SimulationState
    final_shares: np.ndarray
    final_l1: float
    equilibrium: np.ndarray
    choices: Optional[np.ndarray] = None

    def write_csv(self, path_or_file, digits: int = 12):
        """Write the checkpoint rows as CSV.

        Header: ``k,phi_1,...,phi_n,phi_nopurchase,l1_to_eq``.
        """
        n = self.phis.shape[1] - 1
        header = (
            "k,"
            + ",".join(f"phi_{i + 1}" for i in range(n))
            + ",phi_nopurchase,l1_to_eq"
        )
        lines = [header]
        for t in range(self.ks.size):
            cells = [str(int(self.ks[t]))]
            cells += [f"{x:.{digits}g}" for x in self.phis[t]]
            cells.append(f"{self.l1_to_equilibrium[t]:.{digits}g}")
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
        if isinstance(path_or_file, io.TextIOBase):
            path_or_file.write(text)
        else:
            with open(path_or_file, "w") as fh:
                fh.write(text)


def _make_rng(seed) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer; got {seed}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _check_state(params: MarketParams, state: SimulationState):
    if state.d.shape != (params.n + 1,):
        raise ValueError(
            f"state has {state.d.shape[0]} slots, market needs {params.n + 1}"
        )
    if np.any(state.d < 1):
        raise ValueError("invalid state: every count must be at least 1")
    if int(state.d.sum()) != (params.n + 1) + state.k:
        raise ValueError("invalid state: counts and consumer index disagree")


def _tau(params: MarketParams, prices: np.ndarray) -> np.ndarray:
    return np.append(params.g - params.beta * prices, 0.0)


def step(state: SimulationState, params: MarketParams, prices) -> SimulationState:
    """Process one consumer: sample a slot from the current-choice
    probabilities and increment its count. Mutates and returns ``state``."""
    prices = validate_prices(params, prices)
    _check_state(params, state)
    kernels.simulate_consumers(
        _tau(params, prices), params.r, state.d, state.k, 1, 0, state.rng, False
    )
    state.k += 1
    return state


def run(
    params: MarketParams,
    prices,
    consumers: int,
    seed: int,
    checkpoint_every: int,
    record_choices: bool = False,
) -> SimulationTrace:
    """Simulate ``consumers`` sequential arrivals from a pristine market.

    Shares are checkpointed after every ``checkpoint_every``-th consumer and
    reported with their L1 distance to the long-run equilibrium shares.
    Identical inputs give bit-identical traces.
    """
    prices = validate_prices(params, prices)
    consumers = int(consumers)
    checkpoint_every = int(checkpoint_every)
    if consumers < 1:
        raise ValueError(f"consumers must be at least 1; got {consumers}")
    if checkpoint_every < 1:
        raise ValueError(
            f"checkpoint_every must be at least 1; got {checkpoint_every}"
        )
    state = SimulationState.fresh(params, seed)
    phis, choices = kernels.simulate_consumers(
        _tau(params, prices),
        params.r,
        state.d,
        0,
        consumers,
        checkpoint_every,
        state.rng,
        record_choices,
    )
    state.k = consumers
    ks = np.arange(1, consumers // checkpoint_every + 1, dtype=np.int64)
    ks *= checkpoint_every
    phi_star = equilibrium_shares(params, prices)
    l1 = np.abs(phis - phi_star).sum(axis=1)
    final_shares = state.shares
    final_l1 = float(np.abs(final_shares - phi_star).sum())
    log.debug(
        "run: %d consumers, seed %d, backend %s, final L1 %.4g",
        consumers,
        state.rng_seed,
        backend_name(),
        final_l1,
    )
    return SimulationTrace(
        ks=ks,
        phis=phis,
        l1_to_equilibrium=l1,
        final_state=state,
        final_shares=final_shares,
        final_l1=final_l1,
        equilibrium=phi_star,
        choices=choices,
    )


def gumbel_choice(state: SimulationState, params: MarketParams, prices) -> int:
    """Slot chosen by the argmax-utility rule with additive Gumbel noise.

    Draws one i.i.d. standard Gumbel variate per slot (inverse transform of
    uniforms from the state's RNG) and returns the argmax of
    g_i + r*log(d_i) - beta_i p_i + noise_i, lowest index on ties. Does not
    modify the counts; this sampling mode exists to validate the categorical
    draw used by :func:`step`.
    """
    prices = validate_prices(params, prices)
    _check_state(params, state)
    tau = _tau(params, prices).tolist()
    u = state.rng.random(params.n + 1).tolist()
    d = state.d
    r = params.r
    best = -math.inf
    chosen = 0
    for i in range(params.n + 1):
        ui = u[i] if u[i] > 0.0 else 5e-324  # random() may return exactly 0
        util = tau[i] + r * math.log(int(d[i])) - math.log(-math.log(ui))
        if util > best:
            best = util
            chosen = i
    return chosen


def integrate_mean_field(
    params: MarketParams, prices, phi0, step_size: float, steps: int
) -> np.ndarray:
    """Explicit Euler integration of the mean-field share flow.

    The flow moves the share vector toward its choice probabilities:
    d(phi)/dt = pi(phi) - phi. The vector field is tangent to the simplex;
    iterates are renormalized to absorb floating-point drift. ``phi0`` must
    be strictly interior (every coordinate positive).
    """
    prices = validate_prices(params, prices)
    phi = validate_shares(params, phi0).copy()
    if np.any(phi <= 0):
        raise ValueError("phi0 must be strictly interior to the simplex")
    step_size = float(step_size)
    if not 0 < step_size <= 1:
        raise ValueError(f"step_size must lie in (0, 1]; got {step_size}")
    steps = int(steps)
    if steps < 0:
        raise ValueError(f"steps must be nonnegative; got {steps}")
    for _ in range(steps):
        pi = choice_probabilities(params, prices, phi)
        phi += step_size * (pi - phi)
        phi /= phi.sum()
    return phi
