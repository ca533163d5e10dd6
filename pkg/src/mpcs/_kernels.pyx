# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Must stay bit-identical to ``mpcs._purepy``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

from mpcs.errors import DivergenceError

cnp.import_array()

cdef enum:
    HENON = 0
    LORENZ = 1
    CHUA = 2
    ROSSLER = 3

cdef double LIMIT = 1e10


cdef inline void _flow(int system, const double* p, double x, double y, double z,
                       double* d) noexcept nogil:
    cdef double fx
    if system == LORENZ:
        d[0] = p[0] * (y - x)
        d[1] = x * (p[1] - z) - y
        d[2] = x * y - p[2] * z
    elif system == CHUA:
        fx = p[3] * x + 0.5 * (p[2] - p[3]) * (fabs(x + 1.0) - fabs(x - 1.0))
        d[0] = p[0] * (y - x - fx)
        d[1] = x - y + z
        d[2] = -p[1] * y
    else:
        d[0] = -y - z
        d[1] = x + p[0] * y
        d[2] = p[1] + z * (x - p[2])


cdef struct State:
    double x
    double y
    double z


cdef inline State _step(int system, const double* p, double h, State s) noexcept nogil:
    cdef double k1[3]
    cdef double k2[3]
    cdef double k3[3]
    cdef double k4[3]
    cdef double hh, h6
    cdef State r
    if system == HENON:
        r.x = p[0] - s.y * s.y - p[1] * s.z
        r.y = s.x
        r.z = s.y
        return r
    hh = 0.5 * h
    _flow(system, p, s.x, s.y, s.z, k1)
    _flow(system, p, s.x + hh * k1[0], s.y + hh * k1[1], s.z + hh * k1[2], k2)
    _flow(system, p, s.x + hh * k2[0], s.y + hh * k2[1], s.z + hh * k2[2], k3)
    _flow(system, p, s.x + h * k3[0], s.y + h * k3[1], s.z + h * k3[2], k4)
    h6 = h / 6.0
    r.x = s.x + h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    r.y = s.y + h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    r.z = s.z + h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
    return r


cdef inline bint _ok(State s) noexcept nogil:
    # NaN fails every comparison, so it is caught here too
    return fabs(s.x) <= LIMIT and fabs(s.y) <= LIMIT and fabs(s.z) <= LIMIT


cdef double _unpack(int system, params, double* p) except? -1.0:
    cdef Py_ssize_t i, n = len(params)
    if n > 5:
        raise ValueError("too many parameters")
    for i in range(n):
        p[i] = float(params[i])
    if system == HENON:
        return 0.0
    if system == CHUA:
        return p[4]
    return p[3]


def _diverged(State s):
    raise DivergenceError(f"trajectory diverged: ({s.x!r}, {s.y!r}, {s.z!r})")


def step(int system, params, double x, double y, double z):
    cdef double p[5]
    cdef double h = _unpack(system, params, p)
    cdef State s
    s.x, s.y, s.z = x, y, z
    s = _step(system, p, h, s)
    if not _ok(s):
        _diverged(s)
    return s.x, s.y, s.z


def advance(int system, params, double x, double y, double z, long long count):
    cdef double p[5]
    cdef double h = _unpack(system, params, p)
    cdef State s
    cdef long long k
    cdef bint bad = False
    s.x, s.y, s.z = x, y, z
    with nogil:
        for k in range(count):
            s = _step(system, p, h, s)
            if not _ok(s):
                bad = True
                break
    if bad:
        _diverged(s)
    return s.x, s.y, s.z


def trajectory(int system, params, double x, double y, double z, Py_ssize_t length):
    cdef double p[5]
    cdef double h = _unpack(system, params, p)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((length, 3), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef State s
    cdef Py_ssize_t k
    cdef bint bad = False
    s.x, s.y, s.z = x, y, z
    with nogil:
        for k in range(length):
            s = _step(system, p, h, s)
            if not _ok(s):
                bad = True
                break
            o[k, 0] = s.x
            o[k, 1] = s.y
            o[k, 2] = s.z
    if bad:
        _diverged(s)
    return out


def diffuse(streams, keys, seeds):
    cdef const unsigned char[:, ::1] s = np.ascontiguousarray(streams, dtype=np.uint8)
    cdef const unsigned char[:, ::1] kt = np.ascontiguousarray(np.asarray(keys, dtype=np.uint8).T)
    cdef Py_ssize_t n = s.shape[1], j
    out = np.empty((3, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    cdef unsigned int cr = int(seeds[0]), cg = int(seeds[1]), cb = int(seeds[2])
    cdef unsigned int t1, t2, t3
    with nogil:
        for j in range(n):
            t1 = cb % 12
            t2 = cr % 12
            t3 = cg % 12
            cr = s[0, j] ^ ((cr + kt[j, t1]) & 0xFF)
            cg = s[1, j] ^ ((cg + kt[j, t2]) & 0xFF)
            cb = s[2, j] ^ ((cb + kt[j, t3]) & 0xFF)
            o[0, j] = cr
            o[1, j] = cg
            o[2, j] = cb
    return out


cdef inline unsigned long long _parity(unsigned long long v) noexcept nogil:
    v ^= v >> 32
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return v & 1


def linear_complexity(bits, Py_ssize_t block):
    # Berlekamp-Massey on uint64 bitsets: bit i of ``c`` is the i-th connection
    # coefficient, bit i of ``win`` is seq[n - i]
    cdef const unsigned char[::1] seq = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t nblocks = seq.shape[0] // block
    cdef Py_ssize_t W = block // 64 + 2
    out = np.empty(nblocks, dtype=np.int64)
    cdef long long[::1] o = out
    cdef unsigned long long[::1] c = np.empty(W, dtype=np.uint64)
    cdef unsigned long long[::1] b = np.empty(W, dtype=np.uint64)
    cdef unsigned long long[::1] t = np.empty(W, dtype=np.uint64)
    cdef unsigned long long[::1] win = np.empty(W, dtype=np.uint64)
    cdef unsigned long long acc, v
    cdef Py_ssize_t r, n, w, L, m, shift, ws, bs
    with nogil:
        for r in range(nblocks):
            for w in range(W):
                c[w] = 0
                b[w] = 0
                win[w] = 0
            c[0] = 1
            b[0] = 1
            L = 0
            m = -1
            for n in range(block):
                for w in range(W - 1, 0, -1):
                    win[w] = (win[w] << 1) | (win[w - 1] >> 63)
                win[0] = (win[0] << 1) | seq[r * block + n]
                acc = 0
                for w in range(W):
                    acc ^= c[w] & win[w]
                if _parity(acc):
                    for w in range(W):
                        t[w] = c[w]
                    shift = n - m
                    ws = shift // 64
                    bs = shift % 64
                    for w in range(W - 1, ws - 1, -1):
                        v = b[w - ws] << bs
                        if bs and w - ws >= 1:
                            v |= b[w - ws - 1] >> (64 - bs)
                        c[w] ^= v
                    if 2 * L <= n:
                        L = n + 1 - L
                        m = n
                        for w in range(W):
                            b[w] = t[w]
            o[r] = L
    return out
