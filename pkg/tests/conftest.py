import numpy as np
import pytest
from hypothesis import settings

from spinkick import StateVector

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_state(rng, n_spins):
    v = rng.normal(size=2**n_spins) + 1j * rng.normal(size=2**n_spins)
    return StateVector(n_spins, v / np.linalg.norm(v))


def random_unitary_2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density_4(rng, rank=None):
    rank = rank or rng.integers(1, 5)
    m = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
