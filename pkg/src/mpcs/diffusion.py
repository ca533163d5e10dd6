"""Byte keys from the chaotic sequences and the chained cross-channel diffusion.

At step j each channel's key is chosen by another channel's previous cipher
byte (R by B, G by R, B by G), and all three selectors are read before any
channel is updated.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .chaos import SequenceBundle
from .errors import DimensionError

# Key(j, t) for t = 0..11 selects X1, Y1, Z1, X2, Y2, Z2, ..., X4, Y4, Z4
KEY_LABELS = tuple(f"{c}{i}" for i in range(1, 5) for c in "XYZ")

# channel c takes its selector from channel SELECTOR[c]
SELECTOR = np.array([2, 0, 1])


class SeedBytes(NamedTuple):
    r: int
    g: int
    b: int


DEFAULT_SEEDS = SeedBytes(111, 222, 77)


def extract_keys(bundle: SequenceBundle) -> np.ndarray:
    """floor(value * 1e14) mod 256 per preprocessed value; shape (12, mn), Key(j, t) = keys[t, j].

    Preprocessed values lie in [0, 1), so the scaled value stays below 2**53
    and the floor is exact.
    """
    return key_bytes(bundle.system_order())


def key_bytes(pre) -> np.ndarray:
    scaled = np.floor(np.multiply(pre, 1e14))
    return (scaled.astype(np.int64) % 256).astype(np.uint8)


def key_lookup(keys: np.ndarray, j: int, t: int) -> int:
    """Key(j, t) with a 0-based position ``j``."""
    if not 0 <= t <= 11:
        raise IndexError(f"key selector t={t} outside 0..11")
    if not 0 <= j < keys.shape[1]:
        raise IndexError(f"position j={j} outside 0..{keys.shape[1] - 1}")
    return int(keys[t, j])


def _check(streams, keys, seeds):
    streams = np.asarray(streams, dtype=np.uint8)
    keys = np.asarray(keys, dtype=np.uint8)
    if streams.ndim != 2 or streams.shape[0] != 3:
        raise DimensionError("channel streams must have shape (3, mn)")
    if keys.shape != (12, streams.shape[1]):
        raise DimensionError(f"keys of shape {keys.shape} do not match {streams.shape[1]} positions")
    if len(seeds) != 3 or not all(0 <= int(s) <= 255 for s in seeds):
        raise ValueError("three seed bytes in [0, 255] required")
    return streams, keys, tuple(int(s) for s in seeds)


def diffuse(streams, keys, seeds=DEFAULT_SEEDS) -> np.ndarray:
    """C(j) = S(j) xor ((C(j-1) + Key(j, t)) mod 256), sequential in j."""
    streams, keys, seeds = _check(streams, keys, seeds)
    return kernels.diffuse(streams, keys, seeds)


def inverse_diffuse(cipher, keys, seeds=DEFAULT_SEEDS) -> np.ndarray:
    """Undo :func:`diffuse`. Every position depends only on ciphertext, so this is vectorized."""
    cipher, keys, seeds = _check(cipher, keys, seeds)
    prev = np.empty_like(cipher, dtype=np.int64)
    prev[:, 0] = seeds
    prev[:, 1:] = cipher[:, :-1]
    t = prev[SELECTOR] % 12
    k = np.take_along_axis(keys, t, axis=0)
    return (cipher ^ ((prev + k) & 0xFF)).astype(np.uint8)
