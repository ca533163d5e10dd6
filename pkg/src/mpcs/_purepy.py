"""Pure-Python implementations of the hot kernels.

These are the reference definitions. The compiled ``_kernels`` module must
produce bit-identical results; ``mpcs._backend`` picks one at import time.

Keystream arithmetic is restricted to +, -, *, /, abs on IEEE doubles, in
exactly the evaluation order written here.
"""

from __future__ import annotations

import numpy as np

from .errors import DivergenceError

HENON, LORENZ, CHUA, ROSSLER = 0, 1, 2, 3

LIMIT = 1e10


def _lorenz(p, x, y, z):
    sigma, rho, beta = p[0], p[1], p[2]
    return sigma * (y - x), x * (rho - z) - y, x * y - beta * z


def _chua(p, x, y, z):
    alpha, beta, m0, m1 = p[0], p[1], p[2], p[3]
    fx = m1 * x + 0.5 * (m0 - m1) * (abs(x + 1.0) - abs(x - 1.0))
    return alpha * (y - x - fx), x - y + z, -beta * y


def _rossler(p, x, y, z):
    a, b, c = p[0], p[1], p[2]
    return -y - z, x + a * y, b + z * (x - c)


_FLOWS = {LORENZ: (_lorenz, 3), CHUA: (_chua, 4), ROSSLER: (_rossler, 3)}


def _rk4(f, p, h, x, y, z):
    hh = 0.5 * h
    k1x, k1y, k1z = f(p, x, y, z)
    k2x, k2y, k2z = f(p, x + hh * k1x, y + hh * k1y, z + hh * k1z)
    k3x, k3y, k3z = f(p, x + hh * k2x, y + hh * k2y, z + hh * k2z)
    k4x, k4y, k4z = f(p, x + h * k3x, y + h * k3y, z + h * k3z)
    h6 = h / 6.0
    return (
        x + h6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        y + h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        z + h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
    )


def _check(x, y, z):
    # written as "not <=" so NaN also trips the guard
    if not (abs(x) <= LIMIT and abs(y) <= LIMIT and abs(z) <= LIMIT):
        raise DivergenceError(f"trajectory diverged: ({x!r}, {y!r}, {z!r})")


def _stepper(system, params):
    p = [float(v) for v in params]
    if system == HENON:
        a, b = p[0], p[1]

        def step(x, y, z):
            return a - y * y - b * z, x, y

        return step
    f, nh = _FLOWS[system]
    h = p[nh]

    def step(x, y, z):
        return _rk4(f, p, h, x, y, z)

    return step


def step(system, params, x, y, z):
    """Advance one iteration; returns the new ``(x, y, z)``."""
    x, y, z = _stepper(system, params)(float(x), float(y), float(z))
    _check(x, y, z)
    return x, y, z


def advance(system, params, x, y, z, count):
    """Apply ``count`` iterations without recording them."""
    fn = _stepper(system, params)
    x, y, z = float(x), float(y), float(z)
    for _ in range(count):
        x, y, z = fn(x, y, z)
        _check(x, y, z)
    return x, y, z


def trajectory(system, params, x, y, z, length):
    """Record the ``length`` states following ``(x, y, z)``, shape (length, 3)."""
    fn = _stepper(system, params)
    x, y, z = float(x), float(y), float(z)
    out = np.empty((length, 3), dtype=np.float64)
    for k in range(length):
        x, y, z = fn(x, y, z)
        _check(x, y, z)
        out[k, 0] = x
        out[k, 1] = y
        out[k, 2] = z
    return out


def diffuse(streams, keys, seeds):
    """Forward chained diffusion over (3, mn) uint8 streams with (12, mn) keys."""
    s = streams.tolist()
    k = keys.T.tolist()
    cr, cg, cb = (int(v) for v in seeds)
    n = len(s[0])
    out_r, out_g, out_b = [0] * n, [0] * n, [0] * n
    sr, sg, sb = s
    for j in range(n):
        kj = k[j]
        t1, t2, t3 = cb % 12, cr % 12, cg % 12
        cr = sr[j] ^ ((cr + kj[t1]) & 0xFF)
        cg = sg[j] ^ ((cg + kj[t2]) & 0xFF)
        cb = sb[j] ^ ((cb + kj[t3]) & 0xFF)
        out_r[j], out_g[j], out_b[j] = cr, cg, cb
    return np.array([out_r, out_g, out_b], dtype=np.uint8)


def linear_complexity(bits, block):
    """Berlekamp-Massey linear complexity of each consecutive ``block``-bit chunk.

    Polynomials and the reversed sequence window are held as Python ints so
    each update is a shift/xor on a bitset.
    """
    nblocks = len(bits) // block
    seq = np.asarray(bits, dtype=np.uint8)[: nblocks * block].reshape(nblocks, block)
    out = np.empty(nblocks, dtype=np.int64)
    for r, row in enumerate(seq.tolist()):
        c, b = 1, 1
        L, m = 0, -1
        window = 0
        for n, bit in enumerate(row):
            window = (window << 1) | bit
            if (c & window).bit_count() & 1:
                t = c
                c ^= b << (n - m)
                if 2 * L <= n:
                    L = n + 1 - L
                    m = n
                    b = t
        out[r] = L
    return out
