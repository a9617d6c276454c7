import random
from fractions import Fraction

import pytest

from emdkit import DistTuple, validate_distribution
from emdkit.selftest import random_rational_distribution, random_rational_tuple

__all__ = ["random_rational_distribution", "random_rational_tuple"]

#: The six-member reference tuple used throughout the golden tests
#: (n = 3, d = 6; EMD 7/2, gap polynomial (4/5)q + (9/10)q^2 + (3/10)q^3).
GOLDEN_ROWS = [
    ("0.2", "0.2", "0.2", "0.4"),
    ("0.3", "0.0", "0.4", "0.3"),
    ("0.6", "0.0", "0.3", "0.1"),
    ("0.0", "0.2", "0.1", "0.7"),
    ("0.7", "0.1", "0.2", "0.0"),
    ("0.1", "0.4", "0.0", "0.5"),
]


def golden_tuple() -> DistTuple:
    return DistTuple(
        tuple(
            validate_distribution([Fraction(v) for v in row]) for row in GOLDEN_ROWS
        )
    )


@pytest.fixture
def golden() -> DistTuple:
    return golden_tuple()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xE3D)
