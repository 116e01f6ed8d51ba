import random
from fractions import Fraction

import pytest


def _nonzero():
    return [k for k in range(-50, 51) if k]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def rat(rng):
    """Random nonzero rational with numerator and denominator in [-50, 50]."""
    pool = _nonzero()

    def draw():
        return Fraction(rng.choice(pool), rng.choice(pool))

    return draw


@pytest.fixture
def distinct(rat):
    """n pairwise distinct rationals, none q^{+-2}-related to another (checked by caller if needed)."""

    def draw(n):
        while True:
            vals = [rat() for _ in range(n)]
            if len(set(vals)) == n and all(abs(v) != 1 for v in vals):
                return vals

    return draw
