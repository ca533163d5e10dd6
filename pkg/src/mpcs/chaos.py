"""The four 3D chaotic systems and the keystream sequences drawn from them.

Hénon is a discrete map; Lorenz, Chua and Rössler are flows advanced by one
fixed-step classical RK4 step per iteration. Each system contributes three
sequences (its x, y and z components), twelve in total.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from ._backend import kernels
from .errors import DimensionError


class SystemId(enum.IntEnum):
    HENON = 0
    LORENZ = 1
    CHUA = 2
    ROSSLER = 3


# Coefficient order matches the kernel parameter vectors.
PARAM_NAMES: dict[SystemId, tuple[str, ...]] = {
    SystemId.HENON: ("a", "b"),
    SystemId.LORENZ: ("sigma", "rho", "beta", "h"),
    SystemId.CHUA: ("alpha", "beta", "m0", "m1", "h"),
    SystemId.ROSSLER: ("a", "b", "c", "h"),
}


class SystemState(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class SystemParams:
    """Named real coefficients for one system (``h`` is the RK4 step for flows)."""

    system: SystemId
    values: tuple[float, ...]

    def __post_init__(self):
        names = PARAM_NAMES[self.system]
        if len(self.values) != len(names):
            raise ValueError(f"{self.system.name} expects parameters {names}")
        vals = tuple(float(v) for v in self.values)
        if not all(np.isfinite(vals)):
            raise ValueError("parameters must be finite")
        if "h" in names and not vals[names.index("h")] > 0:
            raise ValueError("integration step h must be positive")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, system: SystemId, mapping: Mapping[str, float]) -> "SystemParams":
        return cls(system, tuple(mapping[name] for name in PARAM_NAMES[system]))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(PARAM_NAMES[self.system], self.values))


DEFAULT_PARAMS: dict[SystemId, SystemParams] = {
    SystemId.HENON: SystemParams(SystemId.HENON, (1.76, 0.1)),
    SystemId.LORENZ: SystemParams(SystemId.LORENZ, (10.0, 28.0, 8.0 / 3.0, 0.01)),
    SystemId.CHUA: SystemParams(SystemId.CHUA, (10.0, 14.87, -1.27, -0.68, 0.01)),
    SystemId.ROSSLER: SystemParams(SystemId.ROSSLER, (0.2, 0.2, 5.7, 0.01)),
}

DEFAULT_STATES: dict[SystemId, SystemState] = {
    SystemId.HENON: SystemState(0.1, 0.2, 0.3),
    SystemId.LORENZ: SystemState(1.0, 1.0, 1.0),
    SystemId.CHUA: SystemState(0.7, 0.0, 0.0),
    SystemId.ROSSLER: SystemState(1.0, 1.0, 1.0),
}


def step_system(params: SystemParams, state: Sequence[float]) -> SystemState:
    """One map application (Hénon) or one RK4 step (flows).

    Raises :class:`~mpcs.errors.DivergenceError` if any component leaves
    ``[-1e10, 1e10]`` or is not finite.
    """
    return SystemState(*kernels.step(int(params.system), params.values, *state))


def burn_in(params: SystemParams, state: Sequence[float], count: int) -> SystemState:
    """State after exactly ``count`` iterations; the intermediate values are dropped."""
    if count < 0:
        raise ValueError("count must be non-negative")
    return SystemState(*kernels.advance(int(params.system), params.values, *state, int(count)))


def preprocess(values):
    """Fractional part of ``value * 1e6`` (floor semantics, so negatives land in [0, 1)).

    Works on scalars and arrays alike.
    """
    scaled = np.multiply(values, 1e6)
    frac = scaled - np.floor(scaled)
    # a tiny negative scaled value rounds to exactly 1.0; wrap it to 0.0
    frac = np.where(frac >= 1.0, 0.0, frac)
    if np.ndim(frac) == 0:
        return float(frac)
    return frac


def binarize(seq, theta: float = 0.5) -> np.ndarray:
    """Threshold a preprocessed sequence: 1 where value >= theta, else 0."""
    return (np.asarray(seq, dtype=np.float64) >= theta).astype(np.uint8)


@dataclass(frozen=True)
class SequenceBundle:
    """Twelve chaotic sequences of equal length.

    ``raw[i, c, k]`` holds component ``c`` (0=x, 1=y, 2=z) of system ``i``
    (Hénon, Lorenz, Chua, Rössler) at sample ``k``; ``pre`` is the
    preprocessed counterpart.
    """

    raw: np.ndarray
    pre: np.ndarray

    @property
    def length(self) -> int:
        return self.raw.shape[2]

    def component(self, name: str) -> np.ndarray:
        """Preprocessed sequence by label, e.g. ``"X1"`` or ``"Z4"``."""
        comp = "XYZ".index(name[0].upper())
        return self.pre[int(name[1:]) - 1, comp]

    def column_order(self) -> np.ndarray:
        """(12, mn) preprocessed rows ordered X1..X4, Y1..Y4, Z1..Z4."""
        return self.pre.transpose(1, 0, 2).reshape(12, -1)

    def system_order(self) -> np.ndarray:
        """(12, mn) preprocessed rows ordered X1, Y1, Z1, X2, ..., Z4."""
        return self.pre.reshape(12, -1)


SEQUENCE_LABELS = tuple(f"{c}{i}" for c in "XYZ" for i in range(1, 5))


def generate_bundle(
    params: Mapping[SystemId, SystemParams],
    states: Mapping[SystemId, Sequence[float]],
    transients: Sequence[int],
    length: int,
) -> SequenceBundle:
    """Burn in each system by its transient count, then record ``length`` states.

    ``transients`` is ordered (Hénon, Lorenz, Chua, Rössler).
    """
    if length < 1:
        raise DimensionError("length must be positive")
    if len(transients) != 4:
        raise DimensionError("need four transient counts")
    raw = np.empty((4, 3, length), dtype=np.float64)
    for sid in SystemId:
        p = params[sid]
        start = burn_in(p, states[sid], transients[sid])
        raw[sid] = kernels.trajectory(int(sid), p.values, *start, int(length)).T
    return SequenceBundle(raw=raw, pre=preprocess(raw))
