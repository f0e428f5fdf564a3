import math

import mpmath
import numpy as np
import pytest

from multijcm import AtomState, ModelConfig
from multijcm.states import (
    coherent_state,
    k_photon_coherent_state,
    orthogonal_even_coherent_state,
)


def poisson_amplitudes_mp(alpha, n_max, keep=lambda n: True, dps=40):
    """Direct-factorial amplitudes alpha^n / sqrt(n!), filtered and normalized.

    Shares no code with the recurrence used by the library.
    """
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        raw = [a**n / mpmath.sqrt(mpmath.factorial(n)) if keep(n) else mpmath.mpf(0) for n in range(n_max + 1)]
        norm = mpmath.sqrt(mpmath.fsum(x * x for x in raw))
        return np.array([float(x / norm) for x in raw])


@pytest.fixture(scope="session")
def coherent5():
    return coherent_state(5.0)


@pytest.fixture(scope="session")
def ortho7():
    return orthogonal_even_coherent_state(7.0)


@pytest.fixture(scope="session")
def three_photon():
    # <n(0)> = 3 alpha^2 = 9
    return k_photon_coherent_state(math.sqrt(3.0), 3)


@pytest.fixture
def excited():
    return AtomState(0.0, 0.0)


@pytest.fixture
def eha1():
    return ModelConfig(m=1)


@pytest.fixture(scope="session")
def calibration():
    import json
    from pathlib import Path

    return json.loads((Path(__file__).parent / "data" / "calibration.json").read_text())


# criterion -> (passed, detail); filled by the acceptance suite
ACCEPTANCE_LINES: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split()[0]), k)):
        ok, detail = ACCEPTANCE_LINES[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
