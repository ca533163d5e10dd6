"""Second, independent implementation of the battery formulas, used only as a test oracle.

Written from the published test descriptions with plain Python loops,
scipy special functions and scipy's FFT, sharing no code with mpcs.
"""

from fractions import Fraction
from itertools import groupby
from math import floor, log, sqrt

import scipy.fft
from scipy.special import erfc, gammaincc
from scipy.stats import norm


def frequency(e):
    n = len(e)
    s = sum(1 if b else -1 for b in e)
    return float(erfc(abs(s) / sqrt(n) / sqrt(2)))


def block_frequency(e, m=128):
    nb = len(e) // m
    chi = 4 * m * sum((sum(e[i * m : (i + 1) * m]) / m - 0.5) ** 2 for i in range(nb))
    return float(gammaincc(nb / 2, chi / 2))


def _trunc(a, b):
    return int(a / b)


def cusum(e, reverse=False):
    n = len(e)
    seq = e[::-1] if reverse else e
    s, z = 0, 0
    for b in seq:
        s += 1 if b else -1
        z = max(z, abs(s))
    t1 = sum(
        norm.cdf((4 * k + 1) * z / sqrt(n)) - norm.cdf((4 * k - 1) * z / sqrt(n))
        for k in range(_trunc(_trunc(-n, z) + 1, 4), _trunc(_trunc(n, z) - 1, 4) + 1)
    )
    t2 = sum(
        norm.cdf((4 * k + 3) * z / sqrt(n)) - norm.cdf((4 * k + 1) * z / sqrt(n))
        for k in range(_trunc(_trunc(-n, z) - 3, 4), _trunc(_trunc(n, z) - 1, 4) + 1)
    )
    return float(1 - t1 + t2)


def runs(e):
    n = len(e)
    pi = sum(e) / n
    if abs(pi - 0.5) > 2 / sqrt(n):
        return 0.0
    v = 1 + sum(1 for a, b in zip(e, e[1:]) if a != b)
    return float(erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * sqrt(2 * n) * pi * (1 - pi))))


def longest_run(e):
    n = len(e)
    if n < 6272:
        m, lo, hi, pi = 8, 1, 4, [0.21484375, 0.3671875, 0.23046875, 0.1875]
    else:
        m, lo, hi = 128, 4, 9
        pi = [0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847]
    nb = n // m
    nu = [0] * len(pi)
    for i in range(nb):
        block = e[i * m : (i + 1) * m]
        longest = max((len(list(g)) for k, g in groupby(block) if k == 1), default=0)
        nu[min(max(longest, lo), hi) - lo] += 1
    chi = sum((nu[i] - nb * pi[i]) ** 2 / (nb * pi[i]) for i in range(len(pi)))
    return float(gammaincc((len(pi) - 1) / 2, chi / 2))


def _rank(mat):
    rows = [r[:] for r in mat]
    rank, cols = 0, len(rows[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _rank_prob(r, m):
    # exact probability that an m x m random binary matrix has rank r
    p = Fraction(2) ** (r * (2 * m - r) - m * m)
    for i in range(r):
        p *= (1 - Fraction(1, 2 ** (m - i))) ** 2 / (1 - Fraction(1, 2 ** (r - i)))
    return float(p)


def rank(e, m=32):
    nm = len(e) // (m * m)
    counts = [0, 0, 0]
    for k in range(nm):
        bits = e[k * m * m : (k + 1) * m * m]
        r = _rank([bits[i * m : (i + 1) * m] for i in range(m)])
        counts[0 if r == m else 1 if r == m - 1 else 2] += 1
    p_full, p_m1 = _rank_prob(m, m), _rank_prob(m - 1, m)
    probs = [p_full, p_m1, 1 - p_full - p_m1]
    chi = sum((counts[i] - nm * probs[i]) ** 2 / (nm * probs[i]) for i in range(3))
    return float(gammaincc(1.0, chi / 2))


def dft(e):
    n = len(e)
    spec = abs(scipy.fft.fft([2 * b - 1 for b in e]))[: n // 2]
    t = sqrt(log(20) * n)
    n1 = sum(1 for v in spec if v < t)
    d = (n1 - 0.95 * n / 2) / sqrt(n * 0.95 * 0.05 / 4)
    return float(erfc(abs(d) / sqrt(2)))


def berlekamp_massey(s):
    n = len(s)
    c, b = [1] + [0] * n, [1] + [0] * n
    length, m = 0, -1
    for i in range(n):
        d = s[i]
        for j in range(1, length + 1):
            d ^= c[j] & s[i - j]
        if d:
            t = c[:]
            for j in range(n - i + m + 1):
                c[i - m + j] ^= b[j]
            if length <= i // 2:
                length, m, b = i + 1 - length, i, t
    return length


def linear_complexity(e, m=500):
    nb = len(e) // m
    mu = m / 2 + (9 + (-1) ** (m + 1)) / 36 - (m / 3 + 2 / 9) / 2**m
    pi = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833]
    nu = [0] * 7
    for i in range(nb):
        t = (-1) ** m * (berlekamp_massey(e[i * m : (i + 1) * m]) - mu) + 2 / 9
        if t <= -2.5:
            nu[0] += 1
        elif t <= -1.5:
            nu[1] += 1
        elif t <= -0.5:
            nu[2] += 1
        elif t <= 0.5:
            nu[3] += 1
        elif t <= 1.5:
            nu[4] += 1
        elif t <= 2.5:
            nu[5] += 1
        else:
            nu[6] += 1
    chi = sum((nu[i] - nb * pi[i]) ** 2 / (nb * pi[i]) for i in range(7))
    return float(gammaincc(3, chi / 2))


def _psi(e, m):
    if m == 0:
        return 0.0
    n = len(e)
    ext = e + e[: m - 1]
    counts = {}
    for i in range(n):
        key = tuple(ext[i : i + m])
        counts[key] = counts.get(key, 0) + 1
    return 2**m / n * sum(v * v for v in counts.values()) - n


def serial(e, m=2):
    p0, p1, p2 = _psi(e, m), _psi(e, m - 1), _psi(e, m - 2)
    a = float(gammaincc(2 ** (m - 2), (p0 - p1) / 2))
    b = float(gammaincc(2 ** (m - 3), (p0 - 2 * p1 + p2) / 2))
    return min(a, b)


ALL = (
    frequency,
    block_frequency,
    cusum,
    lambda e: cusum(e, reverse=True),
    runs,
    longest_run,
    rank,
    dft,
    linear_complexity,
    serial,
)


def battery(bits):
    e = [int(b) for b in bits]
    return [f(e) for f in ALL]
