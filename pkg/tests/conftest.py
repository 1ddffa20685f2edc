import sys

import numpy as np
import pytest

from sobolev_sphere import SeedSpec, UnitSample


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_sample(rng, n, d):
    z = rng.standard_normal((n, d))
    return UnitSample(z, renormalize=True)


def mc_stderr(p, reps):
    return float(np.sqrt(p * (1 - p) / reps))


SEED = SeedSpec(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = sorted(getattr(mod, "REPORT_LINES", []), key=lambda s: int(s.split()[2][:-1]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
