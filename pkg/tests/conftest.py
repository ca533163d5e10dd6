from pathlib import Path

import numpy as np
import pytest

from mpcs import imageio
from mpcs.pipeline import KeyConfig

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def chelsea():
    """256x256 natural RGB test image (cat photograph from scikit-image)."""
    return imageio.load(DATA / "chelsea256.ppm")


@pytest.fixture(scope="session")
def default_key():
    return KeyConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion, when that module ran."""
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        parts = results[number]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
