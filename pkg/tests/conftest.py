"""
Shared fixtures for the MAHH Jump laboratory tests.
"""
import numpy as np
import pytest

from src.bench_core import jump
from src.level_chain import build_level_chain
from src.search_engines import baseline_config


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_jump():
    """Jump(n=4, m=2), the smallest instance with a real gap."""
    return jump(4, 2)


@pytest.fixture
def small_chain():
    """One-bit level chain for n=4, m=2, p=1/2."""
    return build_level_chain(4, 2, "1/2")


@pytest.fixture
def onebit_config():
    def make(n: int, m: int, p: float):
        return baseline_config("mahh-onebit", n, m, p)
    return make
