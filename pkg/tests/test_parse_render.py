import random

import pytest

from oqcompact.elements import b_delta_element
from oqcompact.freealg import Alphabet, DegreeScheme, NcPoly, G, Gt, W, gg0, q_commutator
from oqcompact.parse import ParseError, parse, parse_scalar
from oqcompact.render import render_poly
from oqcompact.ring import Q

from helpers import random_element


def test_q_commutator_syntax():
    assert parse("[W[0], W[1]]_q") == q_commutator(W(0), W(1))
    assert parse("[W[0], W[1]]_q^-1") == q_commutator(W(0), W(1), -1)
    assert parse("[W[0], W[1]]_q-1") == q_commutator(W(0), W(1), -1)


def test_index_zero_g_is_a_scalar():
    assert parse("Gt[0]") == NcPoly.scalar(Alphabet.ALT, gg0())
    assert parse("G[0]") == parse("-(q-q^-1)*(q+q^-1)^2")


def test_trivial_cancellation():
    assert parse("W[0]*W[0] - W[0]^2").is_zero()


def test_scalar_division():
    x = parse("(G[1]-Gt[1])/(q+q^-1)")
    assert x.coeff((G(1),)) == 1 / (Q + Q ** -1)
    assert parse_scalar("q^-2") == Q ** -2


def test_essential_alphabet_and_root_vectors():
    assert parse("Bd[1]", Alphabet.ESS) == b_delta_element(1)
    with pytest.raises(ParseError, match="only has W"):
        parse("W[2]", Alphabet.ESS)
    with pytest.raises(ParseError, match="unknown generator 'G'"):
        parse("G[1]", Alphabet.ESS)


@pytest.mark.parametrize("text,fragment", [
    ("W[1]*", "end of input"),
    ("W[1] / W[0]", "division is only defined by scalars"),
    ("W[0]^-1", "negative powers"),
    ("X[1]", "unknown generator"),
    ("W[0] $ 2", "unexpected character"),
    ("1/(q-q)", "division by zero"),
    ("z[1]", "unknown generator 'z'"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match="position") as info:
        parse(text)
    assert fragment in str(info.value)
    assert "<here>" in str(info.value)


def test_render_examples():
    assert render_poly(NcPoly.zero(Alphabet.ALT)) == "0"
    x = parse("q^4*W[-1] - 2*W[-1] + q^-4*W[-1]")
    assert render_poly(x) == "(q^4 - 2 + q^-4)*W[-1]"


def test_render_parse_roundtrip():
    rng = random.Random(3)
    for alphabet, scheme in [(Alphabet.ALT, DegreeScheme.ALT_DEG), (Alphabet.ESS, DegreeScheme.ESS_DEG)]:
        for _ in range(40):
            x = random_element(rng, alphabet, scheme, 6)
            x = x.scale(1 / (Q + 2))
            assert parse(render_poly(x), alphabet) == x


def test_letters_print_as_they_parse():
    for g in (W(-3), W(4), G(2), Gt(5)):
        assert render_poly(NcPoly.letter(g)) == repr(g) or parse(render_poly(NcPoly.letter(g))) == NcPoly.letter(g)
