import random
from fractions import Fraction

import pytest

from uauprod.words import Letter


def letters(owner, m=1, gens=(1,)):
    return [Letter(g, f, owner) for g in gens for f in range(1, m + 1)]


@pytest.fixture
def rng():
    return random.Random(20240611)


def frac(s):
    return Fraction(s)
