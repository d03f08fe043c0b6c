"""Shared fixtures"""

import pytest

from vsslab.algebra.field import FieldParams
from vsslab.netsim.engine_config import EngineConfig
from vsslab.utils.rng import SeededRng


@pytest.fixture
def rng():
    return SeededRng(7, "tests")


@pytest.fixture
def small_params():
    """Seven parties over GF(97)"""
    return FieldParams.default(7, 97)


def engine_config(n: int, t: int, p: int = 2**31 - 1, seed: int = 1, dealer: int = 1) -> EngineConfig:
    return EngineConfig(params=FieldParams.default(n, p), t=t, seed=seed, dealer=dealer)


@pytest.fixture
def make_config():
    return engine_config
