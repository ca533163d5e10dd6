"""End-to-end encryption and decryption, the secret key and the ciphertext container.

Container layout (big-endian)::

    "MPCS" | version u8 (=1) | width u32 | height u32 | delta u64 | payload

The payload is 3*m*n cipher bytes: the red sequence, then green, then blue,
each in raster order. ``delta`` (the plaintext's count of 1 bits) travels in
clear because the decryptor needs it to rebuild the keystream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import bitplane, diffusion, shuffle
from .chaos import (
    DEFAULT_PARAMS,
    DEFAULT_STATES,
    PARAM_NAMES,
    SequenceBundle,
    SystemId,
    SystemParams,
    SystemState,
    generate_bundle,
)
from .diffusion import DEFAULT_SEEDS, SeedBytes
from .errors import ContainerError, DimensionError, KeyFileError

MAGIC = b"MPCS"
VERSION = 1
HEADER = struct.Struct(">4sBIIQ")
MAX_PIXELS = 2**32


@dataclass(frozen=True)
class KeyConfig:
    params: dict = field(default_factory=lambda: dict(DEFAULT_PARAMS))
    states: dict = field(default_factory=lambda: dict(DEFAULT_STATES))
    theta: float = 0.5
    seeds: SeedBytes = DEFAULT_SEEDS

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie in (0, 1)")
        for sid in SystemId:
            if sid not in self.params or sid not in self.states:
                raise ValueError(f"missing configuration for {sid.name}")
            if not all(np.isfinite(self.states[sid])):
                raise ValueError(f"{sid.name} initial state is not finite")
        object.__setattr__(self, "states", {s: SystemState(*map(float, v)) for s, v in self.states.items()})
        seeds = SeedBytes(*(int(s) for s in self.seeds))
        if not all(0 <= s <= 255 for s in seeds):
            raise ValueError("seed bytes must lie in [0, 255]")
        object.__setattr__(self, "seeds", seeds)

    def replace_state(self, system: SystemId, state) -> "KeyConfig":
        states = dict(self.states)
        states[system] = SystemState(*state)
        return KeyConfig(self.params, states, self.theta, self.seeds)


# ---------------------------------------------------------------- key files

_SEED_NAMES = ("seed.r", "seed.g", "seed.b")


def _fmt(v: float) -> str:
    return format(v, ".17g")


def dump_key(key: KeyConfig) -> str:
    lines = ["# mpcs key file: chaotic system parameters, initial states, diffusion seeds"]
    for sid in SystemId:
        prefix = sid.name.lower()
        for name, value in key.params[sid].as_dict().items():
            lines.append(f"{prefix}.{name} = {_fmt(value)}")
        for name, value in zip(("x0", "y0", "z0"), key.states[sid]):
            lines.append(f"{prefix}.{name} = {_fmt(value)}")
    lines += [f"{name} = {value}" for name, value in zip(_SEED_NAMES, key.seeds)]
    lines.append(f"theta = {_fmt(key.theta)}")
    return "\n".join(lines) + "\n"


def load_key(text: str) -> KeyConfig:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise KeyFileError(f"line {lineno}: expected 'name = value'")
        name = name.strip()
        if name in entries:
            raise KeyFileError(f"line {lineno}: duplicate entry {name!r}")
        entries[name] = value.strip()

    expected = set(_SEED_NAMES) | {"theta"}
    for sid in SystemId:
        prefix = sid.name.lower()
        expected.update(f"{prefix}.{n}" for n in PARAM_NAMES[sid] + ("x0", "y0", "z0"))
    missing = sorted(expected - entries.keys())
    unknown = sorted(entries.keys() - expected)
    if missing or unknown:
        raise KeyFileError(f"missing entries {missing}, unknown entries {unknown}")

    try:
        num = {k: float(v) for k, v in entries.items() if k not in _SEED_NAMES}
        seeds = SeedBytes(*(int(entries[n]) for n in _SEED_NAMES))
        params, states = {}, {}
        for sid in SystemId:
            prefix = sid.name.lower()
            params[sid] = SystemParams(sid, tuple(num[f"{prefix}.{n}"] for n in PARAM_NAMES[sid]))
            states[sid] = SystemState(*(num[f"{prefix}.{c}0"] for c in "xyz"))
        return KeyConfig(params, states, num["theta"], seeds)
    except ValueError as exc:
        raise KeyFileError(str(exc)) from exc


def generate_key(seed: int | None = None, spread: float = 0.05) -> KeyConfig:
    """Defaults with every initial-state component shifted by up to ``spread``
    and fresh seed bytes. ``seed=None`` draws from OS entropy."""
    rng = np.random.default_rng(seed)
    states = {
        sid: SystemState(*(np.asarray(DEFAULT_STATES[sid]) + rng.uniform(-spread, spread, 3)).tolist())
        for sid in SystemId
    }
    seeds = SeedBytes(*rng.integers(0, 256, 3).tolist())
    return KeyConfig(dict(DEFAULT_PARAMS), states, 0.5, seeds)


# ---------------------------------------------------------------- container


@dataclass(frozen=True)
class CipherContainer:
    width: int
    height: int
    delta: int
    payload: bytes

    def __post_init__(self):
        mn = self.width * self.height
        if self.width < 1 or self.height < 1:
            raise ContainerError("image dimensions must be positive")
        if len(self.payload) != 3 * mn:
            raise ContainerError(f"payload has {len(self.payload)} bytes, expected {3 * mn}")
        if not 0 <= self.delta <= 24 * mn:
            raise ContainerError(f"delta {self.delta} outside [0, {24 * mn}]")

    def channels(self) -> np.ndarray:
        """Cipher streams, shape (3, mn)."""
        return np.frombuffer(self.payload, dtype=np.uint8).reshape(3, -1)

    def image(self) -> np.ndarray:
        """The cipher bytes laid out as an (m, n, 3) image."""
        return self.channels().T.reshape(self.height, self.width, 3).copy()


def serialize(ct: CipherContainer) -> bytes:
    return HEADER.pack(MAGIC, VERSION, ct.width, ct.height, ct.delta) + ct.payload


def parse(data: bytes) -> CipherContainer:
    if len(data) < HEADER.size:
        raise ContainerError(f"container is {len(data)} bytes, shorter than the {HEADER.size}-byte header")
    magic, version, width, height, delta = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ContainerError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    return CipherContainer(width, height, delta, bytes(data[HEADER.size:]))


# ---------------------------------------------------------------- cipher


class Keystream(NamedTuple):
    transients: bitplane.TransientCounts
    bundle: SequenceBundle
    perms: np.ndarray  # (12, mn) column permutations
    orders: np.ndarray  # (mn, 12) row pair orders
    keys: np.ndarray  # (12, mn) diffusion key bytes


def keystream(key: KeyConfig, delta: int, length: int) -> Keystream:
    """Everything the cipher derives from (key, delta, mn)."""
    counts = bitplane.transient_counts(delta)
    bundle = generate_bundle(key.params, key.states, counts, length)
    return Keystream(
        counts,
        bundle,
        shuffle.permutation_set(bundle),
        shuffle.row_orders(bundle),
        diffusion.extract_keys(bundle),
    )


def encrypt(img, key: KeyConfig | None = None) -> CipherContainer:
    key = key or KeyConfig()
    img = bitplane.check_image(img)
    m, n = img.shape[:2]
    if m * n > MAX_PIXELS:
        raise DimensionError("image too large")
    zeta = bitplane.image_to_bitmatrix(img)
    delta = bitplane.popcount_delta(zeta)
    ks = keystream(key, delta, m * n)

    psi = bitplane.arrange(zeta)
    psi = shuffle.column_shuffle(psi, ks.perms)
    psi = shuffle.row_pair_shuffle(psi, ks.bundle, ks.orders)
    shuffled = np.packbits(psi, axis=1).T  # (3, mn) R, G, B streams

    cipher = diffusion.diffuse(shuffled, ks.keys, key.seeds)
    return CipherContainer(n, m, delta, cipher.tobytes())


def decrypt(ct: CipherContainer, key: KeyConfig | None = None) -> np.ndarray:
    key = key or KeyConfig()
    m, n = ct.height, ct.width
    ks = keystream(key, ct.delta, m * n)

    shuffled = diffusion.inverse_diffuse(ct.channels(), ks.keys, key.seeds)
    psi = np.unpackbits(shuffled.T, axis=1)
    psi = shuffle.inverse_row_pair_shuffle(psi, ks.bundle, ks.orders)
    psi = shuffle.inverse_column_shuffle(psi, ks.perms)
    return bitplane.bitmatrix_to_image(bitplane.inverse_arrange(psi), m, n)


def binarized_sequences(img, key: KeyConfig | None = None) -> dict[str, np.ndarray]:
    """The twelve keystream bit sequences encryption of ``img`` would use, keyed X1..X4, Y1..Y4, Z1..Z4."""
    from .chaos import SEQUENCE_LABELS, binarize

    key = key or KeyConfig()
    img = bitplane.check_image(img)
    delta = bitplane.popcount_delta(bitplane.image_to_bitmatrix(img))
    counts = bitplane.transient_counts(delta)
    bundle = generate_bundle(key.params, key.states, counts, img.shape[0] * img.shape[1])
    return {label: binarize(bundle.component(label), key.theta) for label in SEQUENCE_LABELS}
