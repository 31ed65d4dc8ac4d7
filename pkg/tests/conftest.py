import random
from fractions import Fraction

import pytest
from hypothesis import settings

from weilinv.cyclo import Cyclo
from weilinv.fqm import from_jordan_symbol
from weilinv.weil import GroupAlgebraVector

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

#: even-signature forms small enough for exhaustive checks
SMALL_EVEN_SYMBOLS = [
    "",
    "2_II^+2",
    "2_II^-2",
    "2_0^+2",
    "2_4^-2",
    "4_II^+2",
    "3^+2",
    "3^-2",
    "3^+3",
    "5^+1.5^-1",
    "2_II^+2.3^-1",
    "2_2^+2.4_II^+2",
]


@pytest.fixture(scope="session")
def rng():
    return random.Random(20240817)


def form(symbol):
    return from_jordan_symbol(symbol)


def random_vector(form_, rng, density=0.5, pool=None):
    coeffs = {}
    pool = pool or [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-3, 2)]
    for el in form_.elements():
        if rng.random() < density:
            coeffs[el] = Cyclo.rational(rng.choice(pool))
    return GroupAlgebraVector(form_, coeffs)
