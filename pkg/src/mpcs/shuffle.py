"""Sort-index permutations and the two bit-shuffle stages.

Permutations are 0-based index arrays: ``perm[k]`` is the original position
of the k-th smallest value. Encryption gathers (``out[k] = in[perm[k]]``),
decryption scatters.
"""

from __future__ import annotations

import numpy as np

from .chaos import SequenceBundle
from .errors import DimensionError

# column i of the 24-bit row is shuffled by permutation COLUMN_PERM[i]
# (0..11 = X1..X4, Y1..Y4, Z1..Z4)
COLUMN_PERM = np.arange(24) // 2


def sort_index(seq) -> np.ndarray:
    """Stable ascending argsort; ties keep their original order."""
    arr = np.asarray(seq, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError("sort_index needs a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sort_index: non-finite value")
    return np.argsort(arr, kind="stable")


def permutation_set(bundle: SequenceBundle) -> np.ndarray:
    """The twelve column permutations, shape (12, mn), ordered X1..X4, Y1..Y4, Z1..Z4."""
    seqs = bundle.column_order()
    if not np.all(np.isfinite(seqs)):
        raise ValueError("non-finite chaotic value")
    return np.argsort(seqs, axis=1, kind="stable")


def _column_index(psi, perms):
    psi = np.asarray(psi)
    perms = np.asarray(perms)
    if psi.ndim != 2 or psi.shape[1] != 24:
        raise DimensionError("bit matrix must have 24 columns")
    if perms.shape != (12, psi.shape[0]):
        raise DimensionError(
            f"permutation set of shape {perms.shape} does not match {psi.shape[0]} rows"
        )
    return psi, perms[COLUMN_PERM].T


def column_shuffle(psi, perms) -> np.ndarray:
    """Column i gathers rows through its permutation: out[k, i] = psi[F(k), i]."""
    psi, idx = _column_index(psi, perms)
    return np.take_along_axis(psi, idx, axis=0)


def inverse_column_shuffle(psi, perms) -> np.ndarray:
    psi, idx = _column_index(psi, perms)
    out = np.empty_like(psi)
    np.put_along_axis(out, idx, psi, axis=0)
    return out


def row_orders(bundle: SequenceBundle) -> np.ndarray:
    """Per-row pair order, shape (mn, 12).

    Row mu sorts (x1, y1, z1, x2, ..., z4)(mu) of the preprocessed sequences.
    """
    return np.argsort(bundle.system_order().T, axis=1, kind="stable")


def _pairs(psi, orders):
    psi = np.asarray(psi)
    if psi.ndim != 2 or psi.shape[1] != 24:
        raise DimensionError("bit matrix must have 24 columns")
    if orders.shape != (psi.shape[0], 12):
        raise DimensionError("sequence bundle length does not match row count")
    pairs = psi.reshape(-1, 12, 2)
    return pairs, np.broadcast_to(orders[:, :, None], pairs.shape)


def row_pair_shuffle(psi, bundle: SequenceBundle, orders=None) -> np.ndarray:
    """Move each row's 12 adjacent bit pairs: output slot s takes input slot pi(s)."""
    if orders is None:
        orders = row_orders(bundle)
    pairs, idx = _pairs(psi, orders)
    return np.take_along_axis(pairs, idx, axis=1).reshape(-1, 24)


def inverse_row_pair_shuffle(psi, bundle: SequenceBundle, orders=None) -> np.ndarray:
    if orders is None:
        orders = row_orders(bundle)
    pairs, idx = _pairs(psi, orders)
    out = np.empty_like(pairs)
    np.put_along_axis(out, idx, pairs, axis=1)
    return out.reshape(-1, 24)
