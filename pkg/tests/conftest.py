import numpy as np
import pytest

from geogate import EnvelopeSpec, from_mhz


@pytest.fixture(scope="session")
def env20():
    """Sine envelope at the two-level benchmark peak Rabi frequency."""
    return EnvelopeSpec("sine", from_mhz(20.0))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
