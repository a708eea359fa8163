"""The six presentations as instantiable relation families.

``instantiate(pid, bound)`` returns the relation polynomials (left side minus
right side) whose degree is at most ``bound``, ordered by family number and
then by the family indices ``(k, l)``.  A chained equality ``A = B = C``
contributes ``A - C`` and ``B - C``.  Instances that vanish identically, or
that repeat an earlier instance up to sign, are dropped.  Denominators are
cleared: the ``(q + q^-1)`` family is multiplied through by ``q + q^-1`` and
the compact families with ``(q^2 - q^-2)^2`` in the denominator by that
square.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List

from .freealg import (
    Alphabet,
    DegreeScheme,
    NcPoly,
    W,
    G,
    Gt,
    z,
    commutator,
    degree,
    q_commutator,
)
from .ring import Q, as_ratfunc, rho

__all__ = [
    "PresentationId",
    "Presentation",
    "Relation",
    "PRESENTATIONS",
    "get",
    "instantiate",
    "instantiate_labeled",
    "relation_degree",
]


class PresentationId(str, enum.Enum):
    OQ_DG = "OQ_DG"
    ALT_FULL = "ALT_FULL"
    ALT_REDUCED = "ALT_REDUCED"
    ESS_COMPACT = "ESS_COMPACT"
    ESS_COMPACT_SIGMA = "ESS_COMPACT_SIGMA"
    POLY_Z = "POLY_Z"


@dataclass(frozen=True)
class Relation:
    """A labelled relation instance, e.g. ``label='W0_G', k=1, l=None, side=1``."""

    label: str
    k: int | None
    l: int | None
    side: int
    poly: NcPoly

    @property
    def name(self) -> str:
        idx = ",".join(str(i) for i in (self.k, self.l) if i is not None)
        s = f"({self.label})"
        if idx:
            s += f"[{idx}]"
        if self.side:
            s += f".{self.side}"
        return s


def _qq() -> object:
    return Q + Q ** -1


def _d2() -> object:
    d = Q ** 2 - Q ** -2
    return d * d


# ---------------------------------------------------------------------------
# q-Dolan/Grady


def qdg(x, y) -> NcPoly:
    """``[x,[x,[x,y]_q]_{q^-1}] - (q^2-q^-2)^2 [y, x]``."""
    return commutator(x, q_commutator(x, q_commutator(x, y), -1)) - commutator(y, x).scale(_d2())


def _oq_dg(bound: int, alphabet: Alphabet = Alphabet.OQ) -> Iterator[Relation]:
    w0, w1 = W(0, alphabet), W(1, alphabet)
    yield Relation("qOns1", None, None, 0, qdg(w0, w1))
    yield Relation("qOns2", None, None, 0, qdg(w1, w0))


# ---------------------------------------------------------------------------
# alternating presentation


def _alt_families() -> Dict[str, Callable[[int, int], List[NcPoly]]]:
    A = Alphabet.ALT
    r = as_ratfunc(rho())

    def Wm(k):
        return W(-k, A)

    def Wp(k):
        return W(k + 1, A)

    def f1(k, l):
        rhs = Gt(k + 1) - G(k + 1)
        return [
            commutator(W(0), Wp(k)).scale(_qq()) - rhs,
            commutator(Wm(k), W(1)).scale(_qq()) - rhs,
        ]

    def f2(k, l):
        rhs = (NcPoly.letter(Wm(k + 1)) - NcPoly.letter(Wp(k))).scale(r)
        return [q_commutator(W(0), G(k + 1)) - rhs, q_commutator(Gt(k + 1), W(0)) - rhs]

    def f3(k, l):
        rhs = (NcPoly.letter(Wp(k + 1)) - NcPoly.letter(Wm(k))).scale(r)
        return [q_commutator(G(k + 1), W(1)) - rhs, q_commutator(W(1), Gt(k + 1)) - rhs]

    def f4(k, l):
        return [commutator(Wm(k), Wm(l)), commutator(Wp(k), Wp(l))]

    def f5(k, l):
        return [commutator(Wm(k), Wp(l)) + commutator(Wp(k), Wm(l))]

    def f6(k, l):
        return [commutator(Wm(k), G(l + 1)) + commutator(G(k + 1), Wm(l))]

    def f7(k, l):
        return [commutator(Wm(k), Gt(l + 1)) + commutator(Gt(k + 1), Wm(l))]

    def f8(k, l):
        return [commutator(Wp(k), G(l + 1)) + commutator(G(k + 1), Wp(l))]

    def f9(k, l):
        return [commutator(Wp(k), Gt(l + 1)) + commutator(Gt(k + 1), Wp(l))]

    def f10(k, l):
        return [commutator(G(k + 1), G(l + 1)), commutator(Gt(k + 1), Gt(l + 1))]

    def f11(k, l):
        return [commutator(Gt(k + 1), G(l + 1)) + commutator(G(k + 1), Gt(l + 1))]

    return {
        "WW_cross": f1, "W0_G": f2, "G_W1": f3, "WW_same": f4, "WmWp": f5, "Wm_G": f6,
        "Wm_Gt": f7, "Wp_G": f8, "Wp_Gt": f9, "GG_same": f10, "GtG_mixed": f11,
    }


_ONE_INDEX = {"WW_cross", "W0_G", "G_W1"}


def _alt_full(bound: int, reduced: bool = False) -> Iterator[Relation]:
    fams = _alt_families()
    # every family member has degree >= 2k+2 (or 2(k+l)+2), so k, l <= bound/2
    top = bound // 2 + 1
    for label, fam in fams.items():
        if reduced and label not in ("WW_cross", "W0_G", "G_W1", "WW_same", "GG_same"):
            continue
        if label in _ONE_INDEX:
            for k in range(top):
                for side, p in enumerate(fam(k, 0), start=1):
                    yield Relation(label, k, None, side, p)
            continue
        for k in range(top):
            for l in range(top):
                if reduced and label == "WW_same" and l != 0:
                    continue
                res = fam(k, l)
                for side, p in enumerate(res, start=1):
                    if reduced and label == "GG_same" and side != 2:
                        continue
                    yield Relation(label, k, l, side if len(res) > 1 else 0, p)


# ---------------------------------------------------------------------------
# compact presentations


def _compact(bound: int, sigma: bool) -> Iterator[Relation]:
    A = Alphabet.ESS_SIGMA if sigma else Alphabet.ESS
    w0, w1 = W(0, A), W(1, A)
    if sigma:
        # sigma swaps W0 <-> W1 and Gt <-> G
        w0, w1 = w1, w0
        gk = lambda k: G(k, A)  # noqa: E731
    else:
        gk = lambda k: Gt(k, A)  # noqa: E731
    yield Relation("qdg_W0", None, None, 0, qdg(w0, w1))
    yield Relation("qdg_W1", None, None, 0, qdg(w1, w0))
    yield Relation("W0_G1", None, None, 0, commutator(w0, gk(1)) - commutator(w0, q_commutator(w0, w1)))
    yield Relation("G1_W1", None, None, 0, commutator(gk(1), w1) - commutator(q_commutator(w0, w1), w1))
    top = bound // 2 + 1
    for k in range(1, top):
        yield Relation(
            "G_step_W0", k, None, 0,
            commutator(gk(k + 1), w0).scale(_d2())
            - commutator(w0, q_commutator(w0, q_commutator(w1, gk(k)))),
        )
    for k in range(1, top):
        yield Relation(
            "G_step_W1", k, None, 0,
            commutator(w1, gk(k + 1)).scale(_d2())
            - commutator(q_commutator(q_commutator(gk(k), w0), w1), w1),
        )
    for k in range(top):
        for l in range(top):
            yield Relation("GG", k, l, 0, commutator(gk(k + 1), gk(l + 1)))


def _poly_z(bound: int) -> Iterator[Relation]:
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            yield Relation("zcomm", m, n, 0, commutator(z(m), z(n)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    id: PresentationId
    alphabet: Alphabet
    scheme: DegreeScheme
    _families: Callable[[int], Iterator[Relation]]

    def relations(self, bound: int) -> List[Relation]:
        return instantiate_labeled(self, bound)

    def instantiate(self, bound: int) -> List[NcPoly]:
        return instantiate(self, bound)


PRESENTATIONS: Dict[PresentationId, Presentation] = {
    PresentationId.OQ_DG: Presentation(PresentationId.OQ_DG, Alphabet.OQ, DegreeScheme.LEN_DEG, _oq_dg),
    PresentationId.ALT_FULL: Presentation(
        PresentationId.ALT_FULL, Alphabet.ALT, DegreeScheme.ALT_DEG, _alt_full
    ),
    PresentationId.ALT_REDUCED: Presentation(
        PresentationId.ALT_REDUCED, Alphabet.ALT, DegreeScheme.ALT_DEG,
        lambda b: _alt_full(b, reduced=True),
    ),
    PresentationId.ESS_COMPACT: Presentation(
        PresentationId.ESS_COMPACT, Alphabet.ESS, DegreeScheme.ESS_DEG,
        lambda b: _compact(b, sigma=False),
    ),
    PresentationId.ESS_COMPACT_SIGMA: Presentation(
        PresentationId.ESS_COMPACT_SIGMA, Alphabet.ESS_SIGMA, DegreeScheme.ESS_DEG,
        lambda b: _compact(b, sigma=True),
    ),
    PresentationId.POLY_Z: Presentation(PresentationId.POLY_Z, Alphabet.Z, DegreeScheme.Z_DEG, _poly_z),
}


def get(pid) -> Presentation:
    if isinstance(pid, Presentation):
        return pid
    try:
        return PRESENTATIONS[PresentationId(pid)]
    except ValueError:
        raise ValueError(
            f"unknown presentation {pid!r}; choose from {', '.join(p.value for p in PresentationId)}"
        ) from None


def _sign_key(p: NcPoly):
    return frozenset(p.terms.items())


def instantiate_labeled(pres, bound: int) -> List[Relation]:
    pres = get(pres)
    if bound < 0:
        return []
    out: List[Relation] = []
    seen = set()
    for rel in pres._families(bound):
        p = rel.poly
        if p.is_zero() or degree(p, pres.scheme) > bound:
            continue
        key = _sign_key(p)
        if key in seen or _sign_key(-p) in seen:
            continue
        seen.add(key)
        out.append(rel)
    return out


def instantiate(pres, bound: int) -> List[NcPoly]:
    """Relation polynomials of degree ``<= bound`` (see module docstring)."""
    return [r.poly for r in instantiate_labeled(pres, bound)]


def relation_degree(r: NcPoly, scheme: DegreeScheme) -> int:
    return degree(r, scheme)
