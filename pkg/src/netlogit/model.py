"""Market data model: parameters, choice probabilities, long-run shares, revenues.

Conventions used across the package:

* Arrays of length ``n`` refer to the priced products only.
* Arrays of length ``n + 1`` carry the no-purchase option in the last slot.
  The no-purchase option has zero intrinsic utility and zero price and is
  never stored in :class:`MarketParams`.
* Product indices in the Python API are 0-based; CSV headers label products
  1-based (``p_1 .. p_n``).
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import log_sum_exp

__all__ = [
    "MarketParams",
    "choice_probabilities",
    "equilibrium_shares",
    "expected_consumer_utility",
    "normalized_price",
    "prices_from_normalized",
    "seller_revenues",
    "total_revenue",
    "validate_prices",
    "validate_shares",
]


@dataclass(frozen=True)
class MarketParams:
    """Immutable market description.

    Parameters
    ----------
    g : array_like, shape (n,)
        Intrinsic utilities, one per product. Finite reals.
    beta : array_like, shape (n,) or scalar
        Price sensitivities, all strictly positive. A scalar broadcasts to
        every product.
    r : float
        Popularity-feedback strength. Only the stable regime 0 < r < 1 is
        accepted; at r >= 1 the long-run shares are no longer the stable
        attractor of the market dynamics.
    """

    g: np.ndarray
    beta: np.ndarray
    r: float = field()

    def __post_init__(self):
        g = np.atleast_1d(np.asarray(self.g, dtype=float))
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim == 0:
            beta = np.full(g.shape, float(beta))
        beta = np.atleast_1d(beta)
        if g.ndim != 1 or g.size < 1:
            raise ValueError("g must be a 1-d vector with at least one product")
        if beta.shape != g.shape:
            raise ValueError(
                f"beta has shape {beta.shape}, expected {g.shape} to match g"
            )
        if not np.all(np.isfinite(g)):
            raise ValueError("all intrinsic utilities g must be finite")
        if not (np.all(np.isfinite(beta)) and np.all(beta > 0)):
            raise ValueError("all price sensitivities beta must be finite and > 0")
        r = float(self.r)
        if not (math.isfinite(r) and 0.0 < r < 1.0):
            raise ValueError(
                f"network strength r must lie strictly inside (0, 1); got {self.r}"
            )
        g.setflags(write=False)
        beta.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "r", r)

    @property
    def n(self):
        """Number of priced products (the no-purchase slot is implicit)."""
        return self.g.size

    @property
    def uniform_beta(self):
        return bool(np.all(self.beta == self.beta[0]))

    @property
    def homogeneous_g(self):
        return bool(np.all(self.g == self.g[0]))

    def with_r(self, r):
        """Copy of these parameters at a different feedback strength."""
        return MarketParams(g=self.g, beta=self.beta, r=r)

    def to_dict(self):
        return {"g": self.g.tolist(), "beta": self.beta.tolist(), "r": self.r}

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(g=doc["g"], beta=doc["beta"], r=doc["r"])
        except KeyError as exc:
            raise ValueError(f"market document is missing key {exc}") from exc

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def validate_prices(params: MarketParams, prices) -> np.ndarray:
    """Check a price vector against the market and return it as float64."""
    p = np.atleast_1d(np.asarray(prices, dtype=float))
    if p.shape != (params.n,):
        raise ValueError(f"price vector has shape {p.shape}, expected ({params.n},)")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise ValueError("prices must be finite and nonnegative")
    return p


def validate_shares(params: MarketParams, shares) -> np.ndarray:
    """Check a shares vector (n+1 slots, simplex point) and return float64."""
    phi = np.atleast_1d(np.asarray(shares, dtype=float))
    if phi.shape != (params.n + 1,):
        raise ValueError(
            f"shares vector has shape {phi.shape}, expected ({params.n + 1},)"
        )
    if not np.all(np.isfinite(phi)) or np.any(phi < 0):
        raise ValueError("shares must be finite and nonnegative")
    if abs(float(phi.sum()) - 1.0) > 1e-9:
        raise ValueError(f"shares must sum to 1; got {phi.sum()!r}")
    return phi


def _tau(params: MarketParams, prices: np.ndarray) -> np.ndarray:
    """Net deterministic utilities g - beta*p with the no-purchase 0 appended."""
    return np.append(params.g - params.beta * prices, 0.0)


def choice_probabilities(params: MarketParams, prices, shares) -> np.ndarray:
    """Purchase probabilities of the next consumer given current shares.

    Slot i receives weight shares[i]**r * exp(g_i - beta_i * p_i) (the
    no-purchase slot has g = p = 0); the result is the normalized weight
    vector, evaluated in log space. A zero share contributes probability
    zero, the log-space limit of the weight.
    """
    prices = validate_prices(params, prices)
    phi = validate_shares(params, shares)
    tau = _tau(params, prices)
    out = np.zeros(params.n + 1)
    positive = phi > 0
    if not np.any(positive):
        raise ValueError("at least one share must be positive")
    logw = params.r * np.log(phi[positive]) + tau[positive]
    if not np.all(np.isfinite(logw)):
        raise ValueError("non-finite choice weight")
    out[positive] = np.exp(logw - log_sum_exp(logw))
    return out


def equilibrium_shares(params: MarketParams, prices) -> np.ndarray:
    """Unique long-run market shares for fixed prices.

    Share i is proportional to exp((g_i - beta_i * p_i) / (1 - r)), with
    the no-purchase slot contributing the unit term. Computed in log space
    so that exponents of magnitude ~1e3 (r close to 1) stay finite.
    """
    prices = validate_prices(params, prices)
    e = _tau(params, prices) / (1.0 - params.r)
    return np.exp(e - log_sum_exp(e))


def seller_revenues(params: MarketParams, prices) -> np.ndarray:
    """Per-seller expected revenues p_i * phi_i at the long-run shares."""
    prices = validate_prices(params, prices)
    return prices * equilibrium_shares(params, prices)[: params.n]


def total_revenue(params: MarketParams, prices) -> float:
    """Joint expected revenue across all sellers."""
    return float(seller_revenues(params, prices).sum())


def expected_consumer_utility(params: MarketParams, prices, horizon):
    """Deterministic utilities of consumer ``horizon``+1, net of the noise term.

    Assumes the market has reached its long-run shares, so the cumulative
    purchase count of slot i is phi_i * (horizon + 1). Returns the vector
    of n+1 utilities and the index of the best product (0-based, lowest
    index on ties; the no-purchase slot is reported but not eligible).
    """
    prices = validate_prices(params, prices)
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1; got {horizon}")
    phi = equilibrium_shares(params, prices)
    v = _tau(params, prices) + params.r * np.log(phi * (horizon + 1))
    best = int(np.argmax(v[: params.n]))
    return v, best


def normalized_price(params: MarketParams, prices) -> np.ndarray:
    """Dimensionless prices z_i = beta_i * p_i / (1 - r)."""
    prices = validate_prices(params, prices)
    return params.beta * prices / (1.0 - params.r)


def prices_from_normalized(params: MarketParams, z) -> np.ndarray:
    """Inverse of :func:`normalized_price`."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.shape != (params.n,):
        raise ValueError(f"z has shape {z.shape}, expected ({params.n},)")
    return (1.0 - params.r) * z / params.beta
