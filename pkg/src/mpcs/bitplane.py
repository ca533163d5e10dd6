"""Image <-> mn x 24 bit matrix conversion, popcount and transient counts."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionError

# Output column 3k + ch takes input column 8ch + k: R1 G1 B1 R2 G2 B2 ... R8 G8 B8
ARRANGE = np.array([8 * ch + k for k in range(8) for ch in range(3)], dtype=np.intp)
INVERSE_ARRANGE = np.argsort(ARRANGE)

MODULI = (997, 937, 1097, 397)
OFFSETS = (829, 529, 719, 1123)


class TransientCounts(NamedTuple):
    henon: int
    lorenz: int
    chua: int
    rossler: int


def check_image(img) -> np.ndarray:
    """Validate and return an (m, n, 3) uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"expected an m x n x 3 image, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("channel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def image_to_bitmatrix(img) -> np.ndarray:
    """Raster-scan pixels into rows; columns are R, G, B bits, MSB first."""
    arr = check_image(img)
    return np.unpackbits(arr.reshape(-1, 3), axis=1)


def bitmatrix_to_image(bm, m: int, n: int) -> np.ndarray:
    bm = np.asarray(bm, dtype=np.uint8)
    if bm.ndim != 2 or bm.shape != (m * n, 24):
        raise DimensionError(f"bit matrix of shape {bm.shape} does not hold a {m}x{n} image")
    return np.packbits(bm, axis=1).reshape(m, n, 3)


def popcount_delta(bm) -> int:
    return int(np.count_nonzero(bm))


def transient_counts(delta: int) -> TransientCounts:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    return TransientCounts(*(delta % mod + off for mod, off in zip(MODULI, OFFSETS)))


def arrange(bm) -> np.ndarray:
    return _permute_columns(bm, ARRANGE)


def inverse_arrange(bm) -> np.ndarray:
    return _permute_columns(bm, INVERSE_ARRANGE)


def _permute_columns(bm, order):
    bm = np.asarray(bm)
    if bm.ndim != 2 or bm.shape[1] != 24:
        raise DimensionError("bit matrix must have 24 columns")
    return bm[:, order]
