"""Pure-Python twins of the compiled hot kernels.

Every operation here mirrors ``netlogit._kernels`` exactly: same arithmetic,
same evaluation order, same RNG consumption (one uniform double per
consumer). Both backends therefore produce bit-identical traces and
equilibria; the compiled module is only faster.
"""

import math

import numpy as np

from .numerics import lambert_w0_exp

COMPILED = False

_CHUNK = 1 << 16


def simulate_consumers(tau, r, d, k0, consumers, checkpoint_every, rng, record_choices):
    """Advance the market by ``consumers`` sequential purchase decisions.

    ``d`` (int64, one slot per product plus the trailing no-purchase slot)
    is mutated in place. Slot weights are exp(tau_i + r*log(d_i)), max-
    shifted per step; the draw uses a single uniform double against the
    cumulative weights. Returns ``(phis, choices)`` where ``phis`` holds
    the share vector after every ``checkpoint_every``-th consumer (empty
    array when 0) and ``choices`` the chosen slot per consumer when
    requested, else None.
    """
    tau = [float(x) for x in tau]
    r = float(r)
    nslots = len(tau)
    rows = 0
    if checkpoint_every > 0:
        rows = (k0 + consumers) // checkpoint_every - k0 // checkpoint_every
    phis = np.empty((rows, nslots))
    choices = np.empty(consumers, dtype=np.int64) if record_choices else None

    logd = [math.log(int(d[i])) for i in range(nslots)]
    w = [0.0] * nslots
    k = k0
    row = 0
    done = 0
    while done < consumers:
        block = min(_CHUNK, consumers - done)
        u = rng.random(block).tolist()
        for t in range(block):
            mx = -math.inf
            for i in range(nslots):
                lw = tau[i] + r * logd[i]
                w[i] = lw
                if lw > mx:
                    mx = lw
            total = 0.0
            for i in range(nslots):
                wi = math.exp(w[i] - mx)
                w[i] = wi
                total += wi
            target = u[t] * total
            acc = 0.0
            sel = nslots - 1
            for i in range(nslots):
                acc += w[i]
                if target < acc:
                    sel = i
                    break
            d[sel] += 1
            logd[sel] = math.log(int(d[sel]))
            k += 1
            if record_choices:
                choices[done + t] = sel
            if checkpoint_every > 0 and k % checkpoint_every == 0:
                tot = float(k + nslots)
                for i in range(nslots):
                    phis[row, i] = float(d[i]) / tot
                row += 1
        done += block
    return phis, choices


def _log_denom(a, z, skip):
    # log(e + sum_{j != skip} exp(a_j - z_j + 1)); no-purchase term first,
    # then ascending j, matching the compiled kernel's summation order.
    n = len(a)
    mx = 1.0
    for j in range(n):
        if j != skip:
            t = a[j] - z[j] + 1.0
            if t > mx:
                mx = t
    s = math.exp(1.0 - mx)
    for j in range(n):
        if j != skip:
            s += math.exp(a[j] - z[j] + 1.0 - mx)
    return mx + math.log(s)


def nash_sweeps(a, z0, eps, max_sweeps):
    """Gauss-Seidel coordinate sweeps of the price-game fixed point.

    ``a`` holds the log attraction weights g_i/(1-r). Coordinates are
    refreshed in ascending order; after each full sweep the Euclidean norm
    of the coordinate-wise fixed-point residuals decides termination.
    Returns ``(z, sweeps, residual, nonmonotone)`` where ``nonmonotone``
    counts sweeps whose residual exceeded the previous one.
    """
    a = [float(x) for x in a]
    n = len(a)
    z = [float(x) for x in z0]
    prev = math.inf
    nonmono = 0
    sweeps = 0
    residual = math.inf
    while sweeps < max_sweeps:
        sweeps += 1
        for i in range(n):
            z[i] = lambert_w0_exp(a[i] - _log_denom(a, z, i)) + 1.0
        residual = 0.0
        for i in range(n):
            rho = z[i] - 1.0 - lambert_w0_exp(a[i] - _log_denom(a, z, i))
            residual += rho * rho
        residual = math.sqrt(residual)
        if residual > prev:
            nonmono += 1
        prev = residual
        if residual < eps:
            break
    return np.array(z), sweeps, residual, nonmono
