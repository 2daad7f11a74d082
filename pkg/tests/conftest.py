import numpy as np
import pytest

from pilotwave.physics import ELECTRON_MASS, ELECTRON_VOLT, params_from_energy

NM = 1e-9


@pytest.fixture(scope="session")
def p():
    """1 eV electron oscillator: the parameters of the figure window."""
    return params_from_energy(ELECTRON_VOLT, ELECTRON_MASS)


@pytest.fixture(scope="session")
def radii():
    return np.linspace(0.05 * NM, 1.0 * NM, 1000)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
