"""Random coefficients and elements shared by the test modules."""

import random
from fractions import Fraction

from oqcompact.freealg import DegreeScheme, NcPoly, enumerate_words
from oqcompact.ring import LaurentPoly, RationalFunction


def random_laurent(rng: random.Random, span=3, width=3) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.randint(-width, width) for _ in range(rng.randint(0, 3))})


def random_ratfunc(rng: random.Random) -> RationalFunction:
    num = random_laurent(rng)
    den = random_laurent(rng)
    while den.is_zero():
        den = random_laurent(rng)
    if rng.random() < 0.2:
        num = num * Fraction(rng.randint(1, 5), rng.randint(1, 5))
    return RationalFunction(num, den)


def random_element(rng: random.Random, alphabet, scheme: DegreeScheme, max_degree: int, terms=4) -> NcPoly:
    words = _words(alphabet, scheme, max_degree)
    x = NcPoly.zero(alphabet)
    for _ in range(rng.randint(1, terms)):
        w = rng.choice(words)
        c = random_laurent(rng, span=2, width=2)
        x = x + NcPoly.from_word(w, alphabet, RationalFunction(c))
    return x


_WORDS = {}


def _words(alphabet, scheme, bound):
    key = (alphabet, scheme, bound)
    if key not in _WORDS:
        _WORDS[key] = enumerate_words(alphabet, scheme, bound)
    return _WORDS[key]
