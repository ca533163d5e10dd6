"""Statistical metrics for plain and cipher images.

Every per-channel function returns an array ordered (R, G, B).
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass

import numpy as np

from .bitplane import check_image
from .errors import DegenerateError, DimensionError

CHANNELS = "RGB"
DIRECTIONS = ("horizontal", "vertical", "diagonal")


def histogram(img) -> np.ndarray:
    """Counts of each gray level, shape (3, 256)."""
    arr = check_image(img).reshape(-1, 3)
    return np.stack([np.bincount(arr[:, c], minlength=256) for c in range(3)]).astype(np.int64)


def mean_gray(img) -> np.ndarray:
    arr = check_image(img)
    return arr.reshape(-1, 3).mean(axis=0, dtype=np.float64)


def chi_square(img) -> np.ndarray:
    """Uniformity statistic sum((observed - mn/256)^2 / (mn/256)) per channel."""
    hist = histogram(img)
    mn = int(hist[0].sum())
    # equals (256 * sum(P^2) - mn^2) / mn; integer numerator keeps it exact
    out = []
    for counts in hist:
        sq = sum(int(v) * int(v) for v in counts)
        out.append((256 * sq - mn * mn) / mn)
    return np.array(out)


def entropy(img) -> np.ndarray:
    """Shannon entropy in bits over the 256 gray levels; empty bins contribute 0."""
    hist = histogram(img)
    out = []
    for counts in hist:
        p = counts[counts > 0] / counts.sum()
        out.append(float(-(p * np.log2(p)).sum()) + 0.0)
    return np.array(out)


def adjacent_pairs(channel: np.ndarray, direction: str):
    if direction == "horizontal":
        return channel[:, :-1], channel[:, 1:]
    if direction == "vertical":
        return channel[:-1, :], channel[1:, :]
    if direction == "diagonal":
        return channel[:-1, :-1], channel[1:, 1:]
    raise ValueError(f"unknown direction {direction!r}")


def pearson(x, y) -> float:
    """Correlation of two integer series via exact integer moment sums."""
    x = np.asarray(x, dtype=np.int64).ravel()
    y = np.asarray(y, dtype=np.int64).ravel()
    n = x.size
    if n == 0 or n != y.size:
        raise DegenerateError("need two equal, non-empty series")
    sx, sy = int(x.sum()), int(y.sum())
    sxx, syy, sxy = int((x * x).sum()), int((y * y).sum()), int((x * y).sum())
    vx = n * sxx - sx * sx
    vy = n * syy - sy * sy
    if vx == 0 or vy == 0:
        raise DegenerateError("correlation undefined for a constant series")
    cov = n * sxy - sx * sy
    # r^2 as an exact ratio, so perfectly (anti)correlated series give exactly +-1
    return math.copysign(math.sqrt(Fraction(cov * cov, vx * vy)), cov)


def correlation_channels(img, direction: str) -> np.ndarray:
    """Pearson coefficient over all adjacent pixel pairs, per channel."""
    arr = check_image(img)
    return np.array([pearson(*adjacent_pairs(arr[..., c], direction)) for c in range(3)])


def correlation(img, direction: str) -> float:
    """Mean of the three per-channel coefficients."""
    return float(correlation_channels(img, direction).mean())


def _same_shape(c1, c2):
    a, b = check_image(c1), check_image(c2)
    if a.shape != b.shape:
        raise DimensionError(f"images differ in shape: {a.shape} vs {b.shape}")
    return a, b


def npcr(c1, c2) -> np.ndarray:
    """Percentage of positions whose values differ, per channel."""
    a, b = _same_shape(c1, c2)
    return (a != b).reshape(-1, 3).mean(axis=0) * 100.0


def uaci(c1, c2) -> np.ndarray:
    """Mean absolute difference as a percentage of 255, per channel."""
    a, b = _same_shape(c1, c2)
    diff = np.abs(a.astype(np.int64) - b.astype(np.int64)).reshape(-1, 3)
    return diff.sum(axis=0) / (diff.shape[0] * 255.0) * 100.0


@dataclass
class MetricsReport:
    height: int
    width: int
    hist_min: np.ndarray
    hist_max: np.ndarray
    mean_gray: np.ndarray
    chi_square: np.ndarray
    correlation: dict  # direction -> per-channel array, or None if undefined
    entropy: np.ndarray
    npcr: np.ndarray | None = None
    uaci: np.ndarray | None = None

    def format(self) -> str:
        def row(name, values, fmt="{:.6f}"):
            return name + " " + " ".join(f"{c}={fmt.format(v)}" for c, v in zip(CHANNELS, values))

        lines = [
            f"image {self.width}x{self.height}",
            row("histogram.min", self.hist_min, "{:d}"),
            row("histogram.max", self.hist_max, "{:d}"),
            row("mean_gray", self.mean_gray, "{:.4f}"),
            row("chi_square", self.chi_square, "{:.2f}"),
        ]
        for d in DIRECTIONS:
            rho = self.correlation[d]
            if rho is None:
                lines.append(f"correlation.{d} undefined")
            else:
                lines.append(row(f"correlation.{d}", rho) + f" mean={rho.mean():.6f}")
        lines.append(row("entropy", self.entropy))
        if self.npcr is not None:
            lines.append(row("npcr", self.npcr, "{:.4f}"))
            lines.append(row("uaci", self.uaci, "{:.4f}"))
        return "\n".join(lines) + "\n"


def analyze(img, ref=None) -> MetricsReport:
    arr = check_image(img)
    hist = histogram(arr)
    corr = {}
    for d in DIRECTIONS:
        try:
            corr[d] = correlation_channels(arr, d)
        except DegenerateError:
            corr[d] = None
    report = MetricsReport(
        height=arr.shape[0],
        width=arr.shape[1],
        hist_min=hist.min(axis=1),
        hist_max=hist.max(axis=1),
        mean_gray=mean_gray(arr),
        chi_square=chi_square(arr),
        correlation=corr,
        entropy=entropy(arr),
    )
    if ref is not None:
        report.npcr = npcr(arr, ref)
        report.uaci = uaci(arr, ref)
    return report
