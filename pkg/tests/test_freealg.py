import random

import pytest

from oqcompact.elements import morphism
from oqcompact.freealg import (
    Alphabet,
    AlphabetMismatch,
    DegreeScheme,
    NcPoly,
    G,
    Gt,
    W,
    commutator,
    degree,
    enumerate_words,
    q_commutator,
)
from oqcompact.ring import Q, q_int

from helpers import random_element

ALT = Alphabet.ALT


def letter(g):
    return NcPoly.letter(g)


def test_product_is_concatenation():
    x = letter(W(0)) * letter(W(1))
    assert x.terms == {(W(0), W(1)): 1}


def test_subtraction_cancels():
    x = letter(W(0)) * 3 + letter(G(2))
    assert (x - x).is_zero()


def test_distributes():
    a, b = letter(W(0)), letter(W(1))
    expected = a * a - a * b + b * a - b * b
    assert (a + b) * (a - b) == expected


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        letter(W(0)) + letter(W(0, Alphabet.OQ))
    with pytest.raises(AlphabetMismatch):
        letter(W(0)) * letter(W(0, Alphabet.ESS))


def test_commutators():
    x, y = letter(W(0)), letter(W(1))
    assert q_commutator(x, x) == (x * x).scale(Q - Q ** -1)
    assert (commutator(x, y) + commutator(y, x)).is_zero()
    assert q_commutator(x, y) == (x * y).scale(Q) - (y * x).scale(Q ** -1)


def test_triple_q_commutator_expansion():
    x, y = letter(W(0)), letter(W(1))
    lhs = commutator(x, q_commutator(x, q_commutator(x, y), -1))
    c3 = q_int(3)
    rhs = x * x * x * y - (x * x * y * x).scale(c3) + (x * y * x * x).scale(c3) - y * x * x * x
    assert lhs == rhs


def test_degrees():
    assert degree([W(-2)], DegreeScheme.ALT_DEG) == 5
    assert degree([W(3)], DegreeScheme.ALT_DEG) == 5
    assert degree([], DegreeScheme.ALT_DEG) == 0
    assert degree([Gt(3, Alphabet.ESS), W(0, Alphabet.ESS)], DegreeScheme.ESS_DEG) == 7
    assert degree(NcPoly.zero(ALT), DegreeScheme.ALT_DEG) == 0


def test_enumerate_small_bounds():
    assert enumerate_words(ALT, DegreeScheme.ALT_DEG, 0) == [()]
    assert enumerate_words(ALT, DegreeScheme.ALT_DEG, 1) == [(), (W(0),), (W(1),)]


@pytest.mark.parametrize("n", range(1, 9))
def test_word_counts_per_degree(n):
    words = enumerate_words(ALT, DegreeScheme.ALT_DEG, n)
    exact = [w for w in words if degree(w, DegreeScheme.ALT_DEG) == n]
    assert len(exact) == 2 * 3 ** (n - 1)


def test_word_order_is_degree_then_length():
    words = enumerate_words(ALT, DegreeScheme.ALT_DEG, 4)
    keys = [(degree(w, DegreeScheme.ALT_DEG), len(w)) for w in words]
    assert keys == sorted(keys)


def test_morphism_examples():
    sigma, tau = morphism("sigma"), morphism("tau")
    assert sigma(letter(W(-2))) == letter(W(3))
    assert tau(letter(Gt(2))) == letter(Gt(2))
    assert tau.anti and not sigma.anti


def test_dagger_is_an_involution():
    rng = random.Random(7)
    dagger = morphism("dagger")
    for _ in range(25):
        x = random_element(rng, ALT, DegreeScheme.ALT_DEG, 6)
        assert dagger(dagger(x)) == x


def test_anti_morphism_reverses_products():
    tau = morphism("tau")
    a, b = letter(W(0)), letter(W(-1))
    assert tau(a * b) == tau(b) * tau(a)


def test_morphism_rejects_wrong_source():
    with pytest.raises(AlphabetMismatch):
        morphism("sigma")(letter(W(0, Alphabet.OQ)))
