import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_normal_matrix, random_skew, random_spd  # noqa: E402


@pytest.fixture(scope="session")
def spd_corpus():
    """200 SPD matrices, even dimensions 2..32, seeds 0..199."""
    return [(seed, random_spd(seed)) for seed in range(200)]


@pytest.fixture(scope="session")
def normal_corpus():
    """100 normal matrices from random block data, dimensions 2..12."""
    return [(seed,) + random_normal_matrix(seed) for seed in range(100)]


@pytest.fixture(scope="session")
def skew_corpus():
    """100 skew matrices, dimensions 2..12."""
    return [(seed, random_skew(seed)) for seed in range(100)]
