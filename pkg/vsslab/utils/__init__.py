"""Utility modules for vsslab"""

from vsslab.utils.config import CONFIG, find_config, load_config
from vsslab.utils.rng import CountingRng, RandomSource, SeededRng, TapeRng

__all__ = [
    "CONFIG",
    "find_config",
    "load_config",
    "CountingRng",
    "RandomSource",
    "SeededRng",
    "TapeRng",
]
