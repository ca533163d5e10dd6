"""Binary PPM (P6, maxval 255) reading and writing."""

from __future__ import annotations

import os

import numpy as np

from .bitplane import check_image
from .errors import PpmError


def _tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping "#" comments.

    Returns the tokens and the offset of the single whitespace byte that ends
    the last one.
    """
    tokens = []
    pos = 0
    size = len(data)
    while len(tokens) < count:
        while pos < size and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= size:
            raise PpmError("truncated PPM header")
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise PpmError("truncated PPM header")
            pos = end + 1
            continue
        start = pos
        while pos < size and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    if pos >= size or not data[pos : pos + 1].isspace():
        raise PpmError("PPM header must end with a single whitespace byte")
    return tokens, pos


def read_ppm(data: bytes) -> np.ndarray:
    """Decode P6 bytes into an (height, width, 3) uint8 array."""
    if data[:2] != b"P6":
        raise PpmError(f"bad magic {data[:2]!r}, only binary P6 is supported")
    (_, w, h, maxval), pos = _tokens(data, 4)
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise PpmError("non-numeric PPM header field") from None
    if width < 1 or height < 1:
        raise PpmError("PPM dimensions must be positive")
    if maxval != 255:
        raise PpmError(f"unsupported depth: maxval {maxval} (only 255)")
    start = pos + 1
    need = 3 * width * height
    if len(data) - start < need:
        raise PpmError(f"PPM payload has {len(data) - start} bytes, expected {need}")
    pixels = np.frombuffer(data, dtype=np.uint8, count=need, offset=start)
    return pixels.reshape(height, width, 3).copy()


def write_ppm(img) -> bytes:
    arr = check_image(img)
    h, w = arr.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(arr).tobytes()


def load(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as f:
        return read_ppm(f.read())


def save(path: str | os.PathLike, img) -> None:
    with open(path, "wb") as f:
        f.write(write_ppm(img))
