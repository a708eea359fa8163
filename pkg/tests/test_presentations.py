import pytest

from oqcompact.freealg import Alphabet, DegreeScheme, NcPoly, G, Gt, W, commutator, degree
from oqcompact.presentations import PresentationId, get, instantiate, instantiate_labeled, qdg
from oqcompact.ring import Q


def test_alt_full_bound_two_is_one_relation():
    rels = instantiate(PresentationId.ALT_FULL, 2)
    assert len(rels) == 1
    expected = commutator(W(0), W(1)).scale(Q + Q ** -1) - NcPoly.letter(Gt(1)) + NcPoly.letter(G(1))
    assert rels[0] in (expected, -expected)


def test_oq_has_nothing_below_four():
    assert instantiate(PresentationId.OQ_DG, 3) == []
    assert len(instantiate(PresentationId.OQ_DG, 4)) == 2


def test_compact_bound_three():
    labels = sorted(r.label for r in instantiate_labeled(PresentationId.ESS_COMPACT, 3))
    assert labels == ["G1_W1", "W0_G1"]


def test_relation_degrees():
    scheme = DegreeScheme.ALT_DEG
    by_label = {}
    for r in instantiate_labeled(PresentationId.ALT_FULL, 9):
        by_label.setdefault((r.label, r.k), []).append(degree(r.poly, scheme))
    for k in range(3):
        assert set(by_label[("WW_cross", k)]) == {2 * k + 2}
        assert set(by_label[("W0_G", k)]) == {2 * k + 3}
    assert degree(qdg(W(0, Alphabet.OQ), W(1, Alphabet.OQ)), DegreeScheme.LEN_DEG) == 4


def test_instances_respect_bound_and_alphabet():
    for pid in PresentationId:
        pres = get(pid)
        for p in instantiate(pid, 6):
            assert p.alphabet is pres.alphabet
            assert degree(p, pres.scheme) <= 6


def test_reduced_is_a_subset():
    full = {frozenset(p.terms.items()) for p in instantiate(PresentationId.ALT_FULL, 6)}
    red = instantiate(PresentationId.ALT_REDUCED, 6)
    # deduplication keeps whichever sign came first
    assert red and all(frozenset(p.terms.items()) in full or frozenset((-p).terms.items()) in full for p in red)
    assert len(red) < len(full)


def test_unknown_presentation():
    with pytest.raises(ValueError, match="unknown presentation"):
        get("NOPE")
