"""The compiled kernels and the pure-Python fallback must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpcs import _backend, _purepy
from mpcs.chaos import DEFAULT_PARAMS, DEFAULT_STATES, SystemId
from mpcs.errors import DivergenceError

kernels = pytest.importorskip("mpcs._kernels")


@pytest.mark.parametrize("sid", list(SystemId))
def test_trajectory_bit_identical(sid):
    p, s = DEFAULT_PARAMS[sid].values, DEFAULT_STATES[sid]
    a = _purepy.trajectory(int(sid), p, *s, 20_000)
    c = kernels.trajectory(int(sid), p, *s, 20_000)
    assert a.tobytes() == c.tobytes()


@pytest.mark.parametrize("sid", list(SystemId))
def test_advance_and_step_bit_identical(sid):
    p, s = DEFAULT_PARAMS[sid].values, DEFAULT_STATES[sid]
    assert _purepy.advance(int(sid), p, *s, 1825) == kernels.advance(int(sid), p, *s, 1825)
    assert _purepy.step(int(sid), p, *s) == kernels.step(int(sid), p, *s)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(list(SystemId)),
    st.tuples(*[st.floats(-0.05, 0.05)] * 3),
    st.integers(0, 400),
)
def test_perturbed_states_identical(sid, delta, count):
    p = DEFAULT_PARAMS[sid].values
    s = [a + d for a, d in zip(DEFAULT_STATES[sid], delta)]
    assert _purepy.advance(int(sid), p, *s, count) == kernels.advance(int(sid), p, *s, count)


def test_divergence_in_both():
    for mod in (_purepy, kernels):
        with pytest.raises(DivergenceError):
            mod.advance(int(SystemId.HENON), (10.0, 0.1), 0.1, 0.2, 0.3, 100)
        with pytest.raises(DivergenceError):
            mod.trajectory(int(SystemId.LORENZ), DEFAULT_PARAMS[SystemId.LORENZ].values, 2e10, 0, 0, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 500), st.integers(0, 2**32 - 1))
def test_diffuse_identical(n, seed):
    rng = np.random.default_rng(seed)
    s = rng.integers(0, 256, (3, n), dtype=np.uint8)
    k = rng.integers(0, 256, (12, n), dtype=np.uint8)
    seeds = tuple(rng.integers(0, 256, 3).tolist())
    assert np.array_equal(_purepy.diffuse(s, k, seeds), kernels.diffuse(s, k, seeds))


@pytest.mark.parametrize("block", [13, 63, 64, 65, 200, 500])
def test_linear_complexity_identical(block):
    bits = np.random.default_rng(block).integers(0, 2, block * 20).astype(np.uint8)
    assert np.array_equal(_purepy.linear_complexity(bits, block), kernels.linear_complexity(bits, block))


def test_backend_selected():
    assert _backend.NAME == "cython"


def test_fallback_encrypts_identically(tmp_path):
    script = (
        "import hashlib, numpy as np, mpcs\n"
        "img = np.random.default_rng(1).integers(0, 256, (24, 20, 3), dtype=np.uint8)\n"
        "ct = mpcs.serialize(mpcs.encrypt(img))\n"
        "print(mpcs.BACKEND, hashlib.sha256(ct).hexdigest())\n"
    )
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, MPCS_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
        name, digest = res.stdout.split()
        out[name] = digest
    assert set(out) == {"cython", "python"}
    assert out["cython"] == out["python"]
