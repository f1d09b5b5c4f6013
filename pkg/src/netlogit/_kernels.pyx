# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: per-consumer simulation steps and equilibrium sweeps.

Twin of ``netlogit._kernels_py``. The arithmetic, evaluation order and RNG
consumption are kept identical (the extension is also built with
-ffp-contract=off) so both backends produce bit-identical results.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport INFINITY, exp, log, log1p, sqrt
from libc.stdint cimport int64_t

import numpy as np

from numpy.random cimport bitgen_t

COMPILED = True

cdef double _E = 2.718281828459045

_EMPTY_I64 = np.empty(0, dtype=np.int64)


cdef double _lambert_w0(double x) noexcept:
    # Halley iteration, seeded with log1p(x) below e and log(x) - log(log(x))
    # above; mirrors netlogit.numerics.lambert_w0.
    cdef double w, ew, f, wp1, tol, lx
    cdef int it
    if x == 0.0:
        return 0.0
    if x < _E:
        w = log1p(x)
    else:
        lx = log(x)
        w = lx - log(lx)
    tol = 1e-13 * (x if x > 1.0 else 1.0)
    for it in range(50):
        ew = exp(w)
        f = w * ew - x
        if -tol <= f <= tol:
            break
        wp1 = w + 1.0
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    return w


cdef double _lambert_w0_exp(double y) noexcept:
    # lambert_w0(exp(y)) without forming exp(y); above the overflow cutoff
    # solve w + log(w) = y by Newton from the asymptotic seed.
    cdef double ly, w, f
    cdef int it
    if y <= 700.0:
        return _lambert_w0(exp(y))
    ly = log(y)
    w = y - ly + ly / y
    for it in range(20):
        f = w + log(w) - y
        if -1e-14 * y <= f <= 1e-14 * y:
            break
        w -= f / (1.0 + 1.0 / w)
    return w


def lambert_w0(double x):
    """Compiled Lambert W (principal branch); exposed for parity tests."""
    return _lambert_w0(x)


def lambert_w0_exp(double y):
    """Compiled lambert_w0(exp(y)); exposed for parity tests."""
    return _lambert_w0_exp(y)


def simulate_consumers(double[::1] tau, double r, int64_t[::1] d, long k0,
                       long consumers, long checkpoint_every, rng,
                       bint record_choices):
    """Advance the market by ``consumers`` sequential purchase decisions.

    See ``netlogit._kernels_py.simulate_consumers`` for the contract.
    """
    cdef Py_ssize_t nslots = tau.shape[0]
    cdef long rows = 0
    if checkpoint_every > 0:
        rows = (k0 + consumers) // checkpoint_every - k0 // checkpoint_every
    phis_arr = np.empty((rows, nslots))
    choices_arr = np.empty(consumers, dtype=np.int64) if record_choices else None
    cdef double[:, ::1] phis = phis_arr
    cdef int64_t[::1] choices = _EMPTY_I64 if choices_arr is None else choices_arr

    bit_generator = rng.bit_generator
    capsule = bit_generator.capsule
    cdef bitgen_t *bg = <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")

    logd_arr = np.empty(nslots)
    w_arr = np.empty(nslots)
    cdef double[::1] logd = logd_arr
    cdef double[::1] w = w_arr
    cdef Py_ssize_t i, sel
    cdef long c, row = 0, k = k0
    cdef double mx, lw, total, wi, target, acc, tot

    for i in range(nslots):
        logd[i] = log(<double> d[i])

    with bit_generator.lock:
        for c in range(consumers):
            mx = -INFINITY
            for i in range(nslots):
                lw = tau[i] + r * logd[i]
                w[i] = lw
                if lw > mx:
                    mx = lw
            total = 0.0
            for i in range(nslots):
                wi = exp(w[i] - mx)
                w[i] = wi
                total += wi
            target = bg.next_double(bg.state) * total
            acc = 0.0
            sel = nslots - 1
            for i in range(nslots):
                acc += w[i]
                if target < acc:
                    sel = i
                    break
            d[sel] += 1
            logd[sel] = log(<double> d[sel])
            k += 1
            if record_choices:
                choices[c] = sel
            if checkpoint_every > 0 and k % checkpoint_every == 0:
                tot = <double> (k + nslots)
                for i in range(nslots):
                    phis[row, i] = (<double> d[i]) / tot
                row += 1
    return phis_arr, choices_arr


cdef double _log_denom(double[::1] a, double[::1] z, Py_ssize_t skip) noexcept:
    # log(e + sum_{j != skip} exp(a_j - z_j + 1)); no-purchase term first,
    # then ascending j, matching the pure-Python twin's summation order.
    cdef Py_ssize_t n = a.shape[0]
    cdef double mx = 1.0
    cdef double t, s
    cdef Py_ssize_t j
    for j in range(n):
        if j != skip:
            t = a[j] - z[j] + 1.0
            if t > mx:
                mx = t
    s = exp(1.0 - mx)
    for j in range(n):
        if j != skip:
            s += exp(a[j] - z[j] + 1.0 - mx)
    return mx + log(s)


def nash_sweeps(double[::1] a, double[::1] z0, double eps, long max_sweeps):
    """Gauss-Seidel coordinate sweeps of the price-game fixed point.

    See ``netlogit._kernels_py.nash_sweeps`` for the contract.
    """
    cdef Py_ssize_t n = a.shape[0]
    z_arr = np.array(z0, dtype=float)
    cdef double[::1] z = z_arr
    cdef double prev = INFINITY
    cdef double residual = INFINITY
    cdef long nonmono = 0
    cdef long sweeps = 0
    cdef Py_ssize_t i
    cdef double rho
    while sweeps < max_sweeps:
        sweeps += 1
        for i in range(n):
            z[i] = _lambert_w0_exp(a[i] - _log_denom(a, z, i)) + 1.0
        residual = 0.0
        for i in range(n):
            rho = z[i] - 1.0 - _lambert_w0_exp(a[i] - _log_denom(a, z, i))
            residual += rho * rho
        residual = sqrt(residual)
        if residual > prev:
            nonmono += 1
        prev = residual
        if residual < eps:
            break
    return z_arr, sweeps, residual, nonmono
