"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N time for each backend, the
speedup, and whether the outputs are bit-identical.
"""

import argparse
import time

import numpy as np

from mpcs import _purepy
from mpcs.chaos import DEFAULT_PARAMS, DEFAULT_STATES, SystemId

try:
    from mpcs import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return a.tobytes() == b.tobytes()
    return a == b


def cases(length):
    rng = np.random.default_rng(0)
    streams = rng.integers(0, 256, (3, length), dtype=np.uint8)
    keys = rng.integers(0, 256, (12, length), dtype=np.uint8)
    bits = rng.integers(0, 2, length).astype(np.uint8)
    for sid in SystemId:
        p, s = DEFAULT_PARAMS[sid].values, DEFAULT_STATES[sid]
        yield f"trajectory {sid.name.lower()} n={length}", lambda m, sid=sid, p=p, s=s: m.trajectory(int(sid), p, *s, length)
    yield "advance lorenz 1825 steps", lambda m: m.advance(1, DEFAULT_PARAMS[SystemId.LORENZ].values, 1.0, 1.0, 1.0, 1825)
    yield f"diffuse mn={length}", lambda m: m.diffuse(streams, keys, (111, 222, 77))
    yield f"linear complexity M=500 n={length}", lambda m: m.linear_complexity(bits, 500)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--length", type=int, default=65536, help="sequence length (256x256 image = 65536)")
    args = parser.parse_args()
    if _kernels is None:
        raise SystemExit("compiled extension not built; run: pip install -e . --no-build-isolation")

    print(f"{'kernel':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}  identical")
    for name, call in cases(args.length):
        t_py, out_py = best_of(lambda: call(_purepy), args.repeat)
        t_cy, out_cy = best_of(lambda: call(_kernels), args.repeat)
        print(f"{name:40s} {t_py * 1e3:8.1f}ms {t_cy * 1e3:8.2f}ms {t_py / t_cy:7.0f}x  {same(out_py, out_cy)}")

    from mpcs import BACKEND, pipeline

    img = np.random.default_rng(1).integers(0, 256, (256, 256, 3), dtype=np.uint8)
    t_enc, ct = best_of(lambda: pipeline.encrypt(img), args.repeat)
    t_dec, _ = best_of(lambda: pipeline.decrypt(ct), args.repeat)
    print(f"\nend to end 256x256 ({BACKEND} backend): encrypt {t_enc * 1e3:.0f}ms, decrypt {t_dec * 1e3:.0f}ms")


if __name__ == "__main__":
    main()
