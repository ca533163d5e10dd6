"""Statistical randomness battery over bit sequences (NIST SP 800-22 formulas).

Ten tests, in report order: frequency, block frequency (M=128), cumulative
sums forward and reverse, runs, longest run of ones, 32x32 binary matrix
rank, discrete Fourier transform, linear complexity (M=500) and serial (m=2).
A test passes when its p-value is at least 0.01.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ._backend import kernels
from .errors import SequenceTooShort

ALPHA = 0.01

BLOCK_FREQUENCY_M = 128
LINEAR_COMPLEXITY_M = 500
SERIAL_M = 2
RANK_SIZE = 32
RANK_MIN_MATRICES = 38


# ---------------------------------------------------------------- special functions


def igamc(a: float, x: float, eps: float = 1e-15, max_iter: int = 10_000) -> float:
    """Regularized upper incomplete gamma Q(a, x).

    Power series for x < a + 1, Lentz continued fraction otherwise.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if x <= 0:
        return 1.0
    log_prefix = a * math.log(x) - x - math.lgamma(a)
    if x < a + 1.0:
        term = total = 1.0 / a
        ap = a
        for _ in range(max_iter):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * eps:
                break
        return max(0.0, 1.0 - total * math.exp(log_prefix))
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return min(1.0, math.exp(log_prefix) * h)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


# ---------------------------------------------------------------- verdicts


@dataclass
class TestVerdict:
    name: str
    p_value: float | None
    stats: dict = field(default_factory=dict)
    skipped: str | None = None

    __test__ = False  # not a pytest class

    @property
    def passed(self) -> bool | None:
        if self.p_value is None:
            return None
        return self.p_value >= ALPHA


def _bits(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bit sequence must contain only 0 and 1")
    return arr


def _need(n: int, minimum: int, name: str):
    if n < minimum:
        raise SequenceTooShort(f"{name} needs at least {minimum} bits, got {n}")


def _clip(p: float) -> float:
    return min(1.0, max(0.0, p))


# ---------------------------------------------------------------- tests


def frequency_test(bits) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, 100, "frequency test")
    s = 2 * int(eps.sum()) - n
    s_obs = abs(s) / math.sqrt(n)
    return TestVerdict("Frequency", _clip(math.erfc(s_obs / math.sqrt(2.0))), {"S_n": s, "s_obs": s_obs})


def block_frequency_test(bits, block: int = BLOCK_FREQUENCY_M) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, max(100, block), "block frequency test")
    nblocks = n // block
    pi = eps[: nblocks * block].reshape(nblocks, block).sum(axis=1) / block
    chi2 = 4.0 * block * float(((pi - 0.5) ** 2).sum())
    p = igamc(nblocks / 2.0, chi2 / 2.0)
    return TestVerdict("Block-Frequency", _clip(p), {"chi2": chi2, "blocks": nblocks})


def _cusum_p(n: int, z: int) -> float:
    def cdiv(a: int, b: int) -> int:  # C integer division truncates toward zero
        q = abs(a) // abs(b)
        return q if (a >= 0) == (b > 0) else -q

    sqn = math.sqrt(n)
    s1 = 0.0
    for k in range(cdiv(cdiv(-n, z) + 1, 4), cdiv(cdiv(n, z) - 1, 4) + 1):
        s1 += normal_cdf((4 * k + 1) * z / sqn) - normal_cdf((4 * k - 1) * z / sqn)
    s2 = 0.0
    for k in range(cdiv(cdiv(-n, z) - 3, 4), cdiv(cdiv(n, z) - 1, 4) + 1):
        s2 += normal_cdf((4 * k + 3) * z / sqn) - normal_cdf((4 * k + 1) * z / sqn)
    return 1.0 - s1 + s2


def cusum_test(bits, reverse: bool = False) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    name = "Cusum-Reverse" if reverse else "Cusum-Forward"
    _need(n, 100, name)
    steps = 2 * eps.astype(np.int64) - 1
    if reverse:
        steps = steps[::-1]
    z = int(np.abs(np.cumsum(steps)).max())
    return TestVerdict(name, _clip(_cusum_p(n, z)), {"z": z})


def runs_test(bits) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, 100, "runs test")
    pi = float(eps.mean())
    if abs(pi - 0.5) > 2.0 / math.sqrt(n):
        return TestVerdict("Runs", 0.0, {"pi": pi, "prerequisite": "frequency"})
    v = 1 + int(np.count_nonzero(eps[1:] != eps[:-1]))
    num = abs(v - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    return TestVerdict("Runs", _clip(math.erfc(num / den)), {"V_n": v, "pi": pi})


# (minimum n, block length M, lowest class, class probabilities)
_LONGEST_RUN_REGIMES = (
    (750_000, 10_000, 10, (0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727)),
    (6_272, 128, 4, (0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847)),
    (128, 8, 1, (0.21484375, 0.3671875, 0.23046875, 0.1875)),
)


def _longest_runs(blocks: np.ndarray) -> np.ndarray:
    best = np.zeros(blocks.shape[0], dtype=np.int64)
    run = np.zeros_like(best)
    for col in blocks.T:
        run = (run + 1) * col
        np.maximum(best, run, out=best)
    return best


def longest_run_test(bits) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, 128, "longest run test")
    for minimum, block, low, probs in _LONGEST_RUN_REGIMES:
        if n >= minimum:
            break
    nblocks = n // block
    longest = _longest_runs(eps[: nblocks * block].reshape(nblocks, block))
    k = len(probs) - 1
    classes = np.clip(longest, low, low + k) - low
    nu = np.bincount(classes, minlength=k + 1)
    expected = nblocks * np.array(probs)
    chi2 = float(((nu - expected) ** 2 / expected).sum())
    return TestVerdict(
        "Longest-Runs", _clip(igamc(k / 2.0, chi2 / 2.0)), {"M": block, "nu": nu.tolist(), "chi2": chi2}
    )


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    """Rank over GF(2) of a matrix given as row bitmasks."""
    rows = list(rows)
    rank = 0
    for bit in range(ncols - 1, -1, -1):
        mask = 1 << bit
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_probability(r: int, m: int, q: int) -> float:
    """Probability that a random m x q GF(2) matrix has rank r."""
    prod = 1.0
    for i in range(r):
        prod *= (1.0 - 2.0 ** (i - q)) * (1.0 - 2.0 ** (i - m)) / (1.0 - 2.0 ** (i - r))
    return 2.0 ** (r * (q + m - r) - m * q) * prod


def rank_test(bits, size: int = RANK_SIZE, min_matrices: int = RANK_MIN_MATRICES) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, min_matrices * size * size, "rank test")
    nmat = n // (size * size)
    mats = eps[: nmat * size * size].reshape(nmat, size, size)
    weights = 1 << np.arange(size - 1, -1, -1, dtype=object)
    ranks = []
    for mat in mats:
        rows = [int(v) for v in mat.astype(object) @ weights]
        ranks.append(gf2_rank(rows, size))
    ranks = np.array(ranks)
    full = int(np.count_nonzero(ranks == size))
    minus1 = int(np.count_nonzero(ranks == size - 1))
    rest = nmat - full - minus1
    p_full = rank_probability(size, size, size)
    p_minus1 = rank_probability(size - 1, size, size)
    p_rest = 1.0 - p_full - p_minus1
    chi2 = (
        (full - p_full * nmat) ** 2 / (p_full * nmat)
        + (minus1 - p_minus1 * nmat) ** 2 / (p_minus1 * nmat)
        + (rest - p_rest * nmat) ** 2 / (p_rest * nmat)
    )
    return TestVerdict(
        "Rank", _clip(math.exp(-chi2 / 2.0)), {"matrices": nmat, "F_M": full, "F_M-1": minus1, "chi2": chi2}
    )


def dft_test(bits) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, 100, "DFT test")
    x = 2.0 * eps - 1.0
    modulus = np.abs(np.fft.fft(x)[: n // 2])
    threshold = math.sqrt(math.log(1.0 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(modulus < threshold))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    return TestVerdict("FFT", _clip(math.erfc(abs(d) / math.sqrt(2.0))), {"N_1": n1, "N_0": n0, "d": d})


_LC_PROBS = (0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833)


def linear_complexity_test(bits, block: int = LINEAR_COMPLEXITY_M) -> TestVerdict:
    eps = _bits(bits)
    n = eps.size
    _need(n, block, "linear complexity test")
    nblocks = n // block
    lengths = kernels.linear_complexity(eps[: nblocks * block], block)
    sign = -1.0 if block % 2 else 1.0
    mu = block / 2.0 + (9.0 - sign) / 36.0 - (block / 3.0 + 2.0 / 9.0) / 2.0**block
    t = sign * (lengths - mu) + 2.0 / 9.0
    edges = np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5])
    nu = np.bincount(np.searchsorted(edges, t, side="left"), minlength=7)
    expected = nblocks * np.array(_LC_PROBS)
    chi2 = float(((nu - expected) ** 2 / expected).sum())
    return TestVerdict(
        "Linear-Complexity", _clip(igamc(3.0, chi2 / 2.0)), {"blocks": nblocks, "nu": nu.tolist(), "chi2": chi2}
    )


def _psi_sq(eps: np.ndarray, m: int) -> float:
    if m <= 0:
        return 0.0
    n = eps.size
    ext = np.concatenate([eps, eps[: m - 1]]).astype(np.int64)
    codes = np.zeros(n, dtype=np.int64)
    for i in range(m):
        codes = (codes << 1) | ext[i : i + n]
    counts = np.bincount(codes, minlength=2**m)
    return float((2**m / n) * float((counts.astype(np.float64) ** 2).sum()) - n)


def serial_test(bits, m: int = SERIAL_M) -> TestVerdict:
    """Reported p-value is the smaller of the two serial p-values."""
    eps = _bits(bits)
    n = eps.size
    _need(n, 100, "serial test")
    psi_m, psi_m1, psi_m2 = _psi_sq(eps, m), _psi_sq(eps, m - 1), _psi_sq(eps, m - 2)
    d1 = psi_m - psi_m1
    d2 = psi_m - 2.0 * psi_m1 + psi_m2
    p1 = _clip(igamc(2.0 ** (m - 2), d1 / 2.0))
    p2 = _clip(igamc(2.0 ** (m - 3), d2 / 2.0))
    return TestVerdict("Serial", min(p1, p2), {"p_value1": p1, "p_value2": p2, "del1": d1, "del2": d2})


TESTS: tuple[tuple[str, Callable[[np.ndarray], TestVerdict]], ...] = (
    ("Frequency", frequency_test),
    ("Block-Frequency", block_frequency_test),
    ("Cusum-Forward", cusum_test),
    ("Cusum-Reverse", lambda b: cusum_test(b, reverse=True)),
    ("Runs", runs_test),
    ("Longest-Runs", longest_run_test),
    ("Rank", rank_test),
    ("FFT", dft_test),
    ("Linear-Complexity", linear_complexity_test),
    ("Serial", serial_test),
)


def battery(bits) -> list[TestVerdict]:
    """Run all ten tests; too-short inputs give skipped verdicts."""
    eps = _bits(bits)
    out = []
    for name, test in TESTS:
        try:
            out.append(test(eps))
        except SequenceTooShort as exc:
            out.append(TestVerdict(name, None, skipped=str(exc)))
    return out


@dataclass
class BatteryReport:
    """Verdicts for several labelled sequences, formatted as a tests x sequences grid."""

    results: Mapping[str, list[TestVerdict]]

    def all_passed(self) -> bool:
        return all(v.passed for verdicts in self.results.values() for v in verdicts if v.skipped is None)

    def format(self) -> str:
        labels = list(self.results)
        width = max(len(name) for name, _ in TESTS) + 2
        lines = ["test".ljust(width) + " ".join(f"{lab:>9}" for lab in labels) + "  result"]
        for row, (name, _) in enumerate(TESTS):
            cells, failures, skipped = [], 0, 0
            for lab in labels:
                v = self.results[lab][row]
                if v.skipped is not None:
                    cells.append(f"{'skipped':>9}")
                    skipped += 1
                else:
                    cells.append(f"{v.p_value:9.6f}")
                    failures += not v.passed
            if skipped == len(labels):
                verdict = "Skipped"
            elif failures:
                verdict = f"{failures} Failure" + ("s" if failures > 1 else "")
            else:
                verdict = "All Success"
            lines.append(name.ljust(width) + " ".join(cells) + "  " + verdict)
        return "\n".join(lines) + "\n"


def run_battery(sequences: Mapping[str, np.ndarray]) -> BatteryReport:
    return BatteryReport({label: battery(bits) for label, bits in sequences.items()})
