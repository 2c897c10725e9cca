import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from morrey import GridDomain, GridFunction

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Store one acceptance line; printed in the terminal summary."""
    def _record(key: str, ok: bool, detail: str):
        ACCEPTANCE[key] = (bool(ok), detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")


def unit_line(size: int) -> GridDomain:
    return GridDomain.unit_cube(1, size)


def random_function(rng: np.random.Generator, n: int, size: int, masked: bool = True) -> GridFunction:
    mask = rng.random((size,) * n) < 0.75 if masked else None
    if mask is not None and not mask.any():
        mask[(0,) * n] = True
    dom = GridDomain((size,) * n, 1.0 / size, (0.5 / size,) * n, mask)
    return GridFunction(dom, rng.normal(size=dom.npoints))


INF = math.inf


@pytest.fixture(scope="session")
def suite_ctx():
    """Shared context for the default battery (n = 1, size 512, seed 42)."""
    from morrey.verify.checks import Context
    return Context(n=1, size=512, seed=42)
