import numpy as np
import pytest

from coldwave import plasma


@pytest.fixture
def hydrogen():
    """Quasineutral hydrogen plasma, n = 1e19 m^-3, B0 = 1 T."""
    n = 1e19
    return plasma.PlasmaState(
        (plasma.electron(n), plasma.proton(n)), 1.0)


@pytest.fixture
def vacuum():
    return plasma.PlasmaState((), 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
