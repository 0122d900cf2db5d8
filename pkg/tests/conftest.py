import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hcft.superalgebra import PBWElement
from hcft.verify import random_superfunction

settings.register_profile(
    "hcft", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("hcft")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def monomials(n: int, max_z: int = 2):
    """Strategy for PBW basis monomials ``z^k a_I`` in dimension ``n``."""
    return st.builds(
        lambda m, k: PBWElement.from_mask(n, m, k),
        st.integers(0, (1 << n) - 1),
        st.integers(0, max_z),
    )


def superfunctions(n: int):
    """Strategy for random Gaussian-polynomial superfunctions, driven by a seed."""
    return st.integers(0, 2**32 - 1).map(lambda s: random_superfunction(n, np.random.default_rng(s)))
