import pytest

from oqcompact.elements import (
    MORPHISMS,
    W_VARIANTS,
    b_delta_element,
    b_element,
    essential_G,
    essential_W,
    expected_dims,
    morphism,
    partition_count,
    partitions,
    pbw_count,
    tilde_b_element,
    w_closed_form,
)
from oqcompact.freealg import Alphabet, DegreeScheme, NcPoly, Gt, W, commutator, gg0, z, q_commutator
from oqcompact.presentations import PresentationId
from oqcompact.quotient import build
from oqcompact.ring import Q, RationalFunction

ESS = Alphabet.ESS


def ess(n):
    return NcPoly.letter(W(n, ESS))


def d2():
    d = Q ** 2 - Q ** -2
    return d * d


def test_partitions():
    assert [p.parts for p in partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
    assert [partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partitions(0)[0].parts == ()


def test_pbw_counts():
    assert pbw_count(DegreeScheme.ALT_DEG, 0) == 1
    assert pbw_count(DegreeScheme.ALT_DEG, 4) == 38
    assert expected_dims(DegreeScheme.ALT_DEG, 8) == [1, 3, 8, 18, 38, 74, 139, 249, 434]
    assert expected_dims(DegreeScheme.LEN_DEG, 8) == [1, 3, 7, 15, 29, 53, 93, 157, 257]
    assert expected_dims(DegreeScheme.Z_DEG, 8) == [1, 2, 4, 7, 12, 19, 30, 45, 67]


def test_essential_W_small_cases():
    assert essential_W(0) == ess(0) and essential_W(1) == ess(1)
    g1 = NcPoly.letter(Gt(1, ESS))
    assert essential_W(-1) == ess(1) - q_commutator(g1, ess(0)).scale(1 / d2())
    assert essential_W(2) == ess(0) - q_commutator(ess(1), g1).scale(1 / d2())


def test_essential_G():
    assert essential_G(0) == gg0()
    assert essential_G(1) == NcPoly.letter(Gt(1, ESS)) + commutator(ess(1), ess(0)).scale(Q + Q ** -1)
    with pytest.raises(ValueError):
        essential_G(-1)


def test_root_vector_bases():
    assert b_element("alpha0", 0) == ess(0)
    assert b_element("a0", -1) == ess(1)
    bd = b_delta_element(1)
    assert bd == (ess(1) * ess(0)).scale(Q ** -2) - ess(0) * ess(1)
    fac = 1 / ((Q - Q ** -1) * (Q ** 2 - Q ** -2))
    assert b_element("alpha0", 1) == ess(1) + commutator(bd, ess(0)).scale(Q * fac)
    assert tilde_b_element("alpha0", 0) == ess(1)
    assert tilde_b_element("alpha1", 0) == ess(0)


def test_b_delta_formulas_agree_modulo_q_onsager():
    tq = build(PresentationId.OQ_DG, 6)
    for n in (1, 2, 3):
        a = b_delta_element(n, "via_alpha1", Alphabet.OQ)
        b = b_delta_element(n, "via_alpha0", Alphabet.OQ)
        assert tq.equal(a, b)


def test_closed_form_at_zero_collapses():
    assert w_closed_form(0, "WWalt_minus") == ess(0)
    for variant in W_VARIANTS:
        x = w_closed_form(0, variant)
        assert len(x.terms) == 1
        (w, c), = x.terms.items()
        assert len(w) == 1 and c == RationalFunction(1)


def test_unknown_names():
    with pytest.raises(ValueError):
        b_element("alpha2", 0)
    with pytest.raises(ValueError):
        w_closed_form(1, "nope")
    with pytest.raises(ValueError, match="unknown morphism"):
        morphism("nope")


def test_morphism_table():
    assert {"sigma", "dagger", "tau", "iota", "natural", "flat", "sharp"} <= set(MORPHISMS)
    assert morphism("σ") is morphism("sigma")
    assert morphism("natural")(NcPoly.letter(Gt(2, ESS))) == NcPoly.letter(Gt(2))
    assert morphism("sharp")(NcPoly.letter(z(3))) == NcPoly.letter(Gt(3, ESS))
    assert morphism("iota")(NcPoly.letter(W(1, Alphabet.OQ))) == NcPoly.letter(W(1))
