"""Command-line front end.

Commands: ``price mono``, ``price nash``, ``simulate``, ``sweep``,
``compare``, ``reproduce``. The market comes from a JSON config document

    {"g": [0.993, 0.48, 0.159], "beta": 0.1, "r": 0.2}

optionally wrapped under a "market" key and optionally carrying command
defaults ("horizon", "seed", "eps", "r_grid", "prices", "consumers",
"checkpoint_every", "digits", "threads", "mode", "out"). Flags override
config values. Exit codes: 0 success, 2 configuration or validation error,
3 numerical failure. NETLOGIT_LOG=error|warn|info|debug selects the
diagnostic level on stderr. Numeric output is rendered with --digits
significant digits (default 6); product indices in JSON output are 0-based.
"""

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from . import analysis, competition, dynamics, monopoly
from ._backend import backend_name
from .model import MarketParams, validate_prices
from .numerics import SolverError, SolverSettings

log = logging.getLogger(__name__)

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _setup_logging():
    raw = os.environ.get("NETLOGIT_LOG", "").strip().lower()
    if raw and raw not in _LOG_LEVELS:
        print(f"warning: unknown NETLOGIT_LOG level {raw!r}", file=sys.stderr)
    level = _LOG_LEVELS.get(raw, logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def parse_r_grid(spec: str):
    """Parse ``start:stop:step`` into an inclusive grid inside (0, 1)."""
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise ValueError(f"r-grid must be start:stop:step; got {spec!r}")
    start, stop, step = (float(x) for x in parts)
    if step <= 0:
        raise ValueError(f"r-grid step must be positive; got {step}")
    if stop < start:
        raise ValueError(f"r-grid stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    grid = [start + i * step for i in range(count)]
    for r in grid:
        if not 0.0 < r < 1.0:
            raise ValueError(
                f"r grid values must lie strictly inside (0, 1); got {r}"
            )
    return grid


def _round_floats(obj, digits):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, np.floating):
        return float(f"{float(obj):.{digits}g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _round_floats(obj.tolist(), digits)
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def render_json(doc, digits: int) -> str:
    return json.dumps(_round_floats(doc, digits), indent=2)


def _emit(text: str, out_path):
    if out_path:
        Path(out_path).write_text(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


class _Config:
    """Merged view over the JSON config document and the parsed flags."""

    def __init__(self, args):
        self.args = args
        self.doc = {}
        if getattr(args, "config", None):
            path = Path(args.config)
            if not path.exists():
                raise ValueError(f"config file not found: {path}")
            self.doc = json.loads(path.read_text())
            if not isinstance(self.doc, dict):
                raise ValueError("config document must be a JSON object")

    def opt(self, name, default=None):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        return self.doc.get(name, default)

    def market(self) -> MarketParams:
        doc = self.doc.get("market", self.doc)
        if not isinstance(doc, dict) or "g" not in doc:
            raise ValueError(
                "no market in config: expected keys g, beta, r "
                "(pass --config <file>)"
            )
        return MarketParams.from_dict(doc)

    def settings(self, default_eps) -> SolverSettings:
        eps = self.opt("eps", default_eps)
        return SolverSettings(tolerance=float(eps), max_iterations=100_000)

    @property
    def digits(self) -> int:
        d = int(self.opt("digits", 6))
        if not 1 <= d <= 17:
            raise ValueError(f"digits must be between 1 and 17; got {d}")
        return d

    @property
    def threads(self) -> int:
        t = self.opt("threads")
        t = os.cpu_count() or 1 if t is None else int(t)
        if t < 1:
            raise ValueError(f"threads must be at least 1; got {t}")
        return t


def _pool_map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    workers = min(threads, len(items))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _mono_doc(params: MarketParams) -> dict:
    res = monopoly.monopoly_price(params)
    doc = {
        "r": params.r,
        "prices": res.prices,
        "normalized_price": res.normalized_price,
        "shares": res.shares,
        "total_revenue": res.total_revenue,
        "gradient_norm": res.gradient_norm,
    }
    if params.uniform_beta:
        doc["p_mono"] = float(res.prices[0])
    return doc


def _nash_doc(params: MarketParams, settings, homogeneous: bool) -> dict:
    if homogeneous:
        res = competition.homogeneous_nash(params)
    else:
        res = competition.nash_solve(params, settings)
    return {
        "r": params.r,
        "prices": res.prices,
        "normalized_price": res.normalized_price,
        "shares": res.shares,
        "revenues": res.revenues,
        "iterations": res.iterations,
        "residual": res.residual,
    }


def _compare_doc(params: MarketParams, horizon: int) -> dict:
    rep = analysis.compare(params, horizon)
    return {
        "r": rep.r,
        "horizon": rep.horizon,
        "p_mono": float(rep.mono.prices[0]),
        "prices_nash": rep.nash.prices,
        "price_gaps": rep.price_gaps,
        "utility_gaps": rep.utility_gaps,
        "best_product_mono": rep.argmax_product_mono,
        "best_product_nash": rep.argmax_product_nash,
        "best_utility_mono": float(rep.utilities_mono[rep.argmax_product_mono]),
        "best_utility_nash": float(rep.utilities_nash[rep.argmax_product_nash]),
        "utilities_mono": rep.utilities_mono,
        "utilities_nash": rep.utilities_nash,
    }


def _cmd_price(args) -> int:
    cfg = _Config(args)
    params = cfg.market()
    if args.pricing == "mono":
        doc = _mono_doc(params)
    else:
        doc = _nash_doc(params, cfg.settings(1e-10), bool(args.homogeneous))
    _emit(render_json(doc, cfg.digits) + "\n", cfg.opt("out"))
    return 0


def _cmd_simulate(args) -> int:
    cfg = _Config(args)
    params = cfg.market()
    consumers = int(cfg.opt("consumers", 0))
    checkpoint_every = int(cfg.opt("checkpoint_every", 1000))
    seed = int(cfg.opt("seed", 0))
    prices_raw = cfg.opt("prices")
    if prices_raw is None:
        prices = np.zeros(params.n)
    elif isinstance(prices_raw, str):
        prices = np.array([float(x) for x in prices_raw.split(",")])
    else:
        prices = np.asarray(prices_raw, dtype=float)
    prices = validate_prices(params, prices)
    trace = dynamics.run(params, prices, consumers, seed, checkpoint_every)
    out = cfg.opt("out")
    if out:
        trace.write_csv(out, digits=cfg.digits)
        summary = {
            "consumers": consumers,
            "seed": seed,
            "checkpoint_every": checkpoint_every,
            "backend": backend_name(),
            "final_shares": trace.final_shares,
            "l1_to_equilibrium": trace.final_l1,
            "trace": str(out),
        }
        print(render_json(summary, cfg.digits))
    else:
        trace.write_csv(sys.stdout, digits=cfg.digits)
    return 0


def _sweep_mono_row(params_base, r):
    rows = monopoly.monopoly_r_sweep(params_base.with_r(r), [r])
    return rows[0]


def _sweep_nash_row(params_base, r):
    return (r, competition.nash_solve(params_base.with_r(r)))


def _cmd_sweep(args) -> int:
    cfg = _Config(args)
    params = cfg.market()
    grid = parse_r_grid(cfg.opt("r_grid", "0.05:0.95:0.05"))
    mode = cfg.opt("mode", "both")
    if mode not in ("mono", "nash", "both"):
        raise ValueError(f"sweep mode must be mono, nash or both; got {mode!r}")
    out = cfg.opt("out")
    threads = cfg.threads
    digits = cfg.digits

    def out_path(kind):
        if not out:
            return None
        if mode != "both":
            return Path(out)
        p = Path(out)
        return p.with_name(f"{p.stem}_{kind}{p.suffix or '.csv'}")

    if mode in ("mono", "both"):
        if not params.uniform_beta:
            raise ValueError("monopoly sweep requires a uniform price sensitivity")
        rows = _pool_map(partial(_sweep_mono_row, params), grid, threads)
        target = out_path("mono")
        if target:
            monopoly.write_monopoly_sweep_csv(rows, target, digits=digits)
        else:
            monopoly.write_monopoly_sweep_csv(rows, sys.stdout, digits=digits)
    if mode in ("nash", "both"):
        rows = _pool_map(partial(_sweep_nash_row, params), grid, threads)
        target = out_path("nash")
        if target:
            competition.write_nash_sweep_csv(rows, target, digits=digits)
        else:
            if mode == "both":
                print()
            competition.write_nash_sweep_csv(rows, sys.stdout, digits=digits)
    return 0


def _cmd_compare(args) -> int:
    cfg = _Config(args)
    params = cfg.market()
    horizon = int(cfg.opt("horizon", analysis.UTILITY_HORIZON))
    grid_spec = cfg.opt("r_grid")
    if grid_spec:
        grid = parse_r_grid(grid_spec)
        worker = partial(_compare_worker, params, horizon)
        docs = _pool_map(worker, grid, cfg.threads)
        payload = render_json(docs, cfg.digits)
    else:
        payload = render_json(_compare_doc(params, horizon), cfg.digits)
    _emit(payload + "\n", cfg.opt("out"))
    return 0


def _compare_worker(params_base, horizon, r):
    return _compare_doc(params_base.with_r(r), horizon)


def _cmd_reproduce(args) -> int:
    cfg = _Config(args)
    out_dir = args.out_dir or cfg.doc.get("out_dir", "tables")
    manifest = analysis.reproduce_tables(out_dir, digits=cfg.digits)
    print(render_json(manifest, cfg.digits))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netlogit",
        description="Pricing and simulation toolkit for logit markets "
        "with popularity feedback.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config document (market + defaults)")
    common.add_argument("--out", help="write primary output to this path")
    common.add_argument("--digits", type=int, help="significant digits (default 6)")
    common.add_argument("--threads", type=int, help="worker pool size for sweeps")
    common.add_argument("--seed", type=int, help="RNG seed (unsigned 64-bit)")
    common.add_argument("--eps", type=float, help="solver residual tolerance")

    sub = parser.add_subparsers(dest="command", required=True)

    price = sub.add_parser("price", help="equilibrium prices")
    price_sub = price.add_subparsers(dest="pricing", required=True)
    price_sub.add_parser(
        "mono", parents=[common], help="joint-revenue-maximizing prices"
    ).set_defaults(handler=_cmd_price)
    nash = price_sub.add_parser(
        "nash", parents=[common], help="price-game equilibrium"
    )
    nash.add_argument(
        "--homogeneous",
        action="store_true",
        help="use the scalar route for equal intrinsic utilities",
    )
    nash.set_defaults(handler=_cmd_price)

    simulate = sub.add_parser(
        "simulate", parents=[common], help="sequential-consumer simulation"
    )
    simulate.add_argument("--consumers", type=int, help="number of arrivals")
    simulate.add_argument(
        "--checkpoint-every",
        type=int,
        dest="checkpoint_every",
        help="consumers between trace checkpoints (default 1000)",
    )
    simulate.add_argument(
        "--prices", help="comma-separated prices (default: all zero)"
    )
    simulate.set_defaults(handler=_cmd_simulate)

    sweep = sub.add_parser(
        "sweep", parents=[common], help="solutions across a grid of r values"
    )
    sweep.add_argument(
        "--mode", choices=("mono", "nash", "both"), help="which sweep(s) to run"
    )
    sweep.add_argument(
        "--r-grid",
        dest="r_grid",
        help="grid spec start:stop:step, endpoints inclusive when landed on",
    )
    sweep.set_defaults(handler=_cmd_sweep)

    cmp_cmd = sub.add_parser(
        "compare", parents=[common], help="monopoly vs competition report"
    )
    cmp_cmd.add_argument("--horizon", type=int, help="consumer horizon for utilities")
    cmp_cmd.add_argument(
        "--r-grid", dest="r_grid", help="optional grid spec for multiple rows"
    )
    cmp_cmd.set_defaults(handler=_cmd_compare)

    repro = sub.add_parser(
        "reproduce", parents=[common], help="emit the bundled reference tables"
    )
    repro.add_argument("--out-dir", dest="out_dir", help="output directory")
    repro.set_defaults(handler=_cmd_reproduce)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON in config: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
