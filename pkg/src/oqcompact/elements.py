"""Derived elements and named maps.

Everything here is a plain constructor returning an :class:`NcPoly`.  The
essential-generator expressions live over ``ESS``; root-vector elements
(``b_element`` and friends) only involve ``W[0]`` and ``W[1]`` and can be built
over any alphabet that has those two letters (``ESS`` by default, ``OQ`` when
they are to be compared modulo the q-Dolan/Grady ideal).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Tuple

from .freealg import (
    Alphabet,
    DegreeScheme,
    Family,
    Generator,
    Morphism,
    NcPoly,
    G,
    Gt,
    W,
    commutator,
    gg0,
    lincomb,
    q_commutator,
)
from .ring import Q, ONE, RationalFunction, as_ratfunc, q_int

__all__ = [
    "Partition",
    "partitions",
    "partition_count",
    "pbw_count",
    "expected_dims",
    "essential_W",
    "essential_G",
    "b_element",
    "b_delta_element",
    "tilde_b_element",
    "tilde_b_delta_element",
    "w_closed_form",
    "w_target",
    "W_VARIANTS",
    "MORPHISMS",
    "morphism",
    "PHI_NOTE",
]


# ---------------------------------------------------------------------------
# partitions and PBW counts


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts) or list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError(f"not a partition: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def partitions(n: int) -> List[Partition]:
    """Partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


@functools.lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    return len(partitions(n)) if n < 30 else _series((1,) * (n + 1), n)[n]


def _series(mult: Tuple[int, ...], top: int) -> List[int]:
    """Coefficients of prod_{d>=1} (1 - x^d)^(-mult[d]) up to x^top."""
    coef = [1] + [0] * top
    for d in range(1, top + 1):
        for _ in range(mult[d] if d < len(mult) else 0):
            for i in range(d, top + 1):
                coef[i] += coef[i - d]
    return coef


def _multiplicities(scheme: DegreeScheme, top: int) -> Tuple[int, ...]:
    """How many PBW generators of each degree a scheme's presentation has."""
    if scheme in (DegreeScheme.ALT_DEG, DegreeScheme.ESS_DEG):
        return (0,) + (2,) * top
    if scheme is DegreeScheme.LEN_DEG:
        # root vectors: two of each odd degree, one of each even degree
        return (0,) + tuple(2 if d % 2 else 1 for d in range(1, top + 1))
    if scheme is DegreeScheme.Z_DEG:
        return (0,) + (1,) * top
    raise ValueError(scheme)


def pbw_count(scheme, d: int) -> int:
    """Number of PBW monomials of degree ``<= d``."""
    scheme = DegreeScheme(scheme)
    if d < 0:
        return 0
    return sum(_series(_multiplicities(scheme, d), d))


def expected_dims(scheme, D: int) -> List[int]:
    scheme = DegreeScheme(scheme)
    coef = _series(_multiplicities(scheme, D), D)
    out, acc = [], 0
    for c in coef:
        acc += c
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# essential-generator expressions


def _d2() -> RationalFunction:
    d = Q ** 2 - Q ** -2
    return d * d


def essential_W(n: int) -> NcPoly:
    """``W[n]`` written in ``W[0]``, ``W[1]`` and the ``Gt[k]`` (over ``ESS``)."""
    A = Alphabet.ESS
    w0, w1 = NcPoly.letter(W(0, A)), NcPoly.letter(W(1, A))
    if n in (0, 1):
        return w0 if n == 0 else w1
    k = -n if n <= 0 else n - 1
    inv = -_d2().inverse()
    gt = lambda j: Gt(j, A)  # noqa: E731
    parts = []
    if k % 2:
        r = (k - 1) // 2
        if n <= 0:
            base = w1
            parts += [(q_commutator(gt(2 * l + 1), w0), inv) for l in range(r + 1)]
            parts += [(q_commutator(w1, gt(2 * l)), inv) for l in range(1, r + 1)]
        else:
            base = w0
            parts += [(q_commutator(w1, gt(2 * l + 1)), inv) for l in range(r + 1)]
            parts += [(q_commutator(gt(2 * l), w0), inv) for l in range(1, r + 1)]
    else:
        r = k // 2
        if n <= 0:
            base = w0
            parts += [(q_commutator(w1, gt(2 * l + 1)), inv) for l in range(r)]
            parts += [(q_commutator(gt(2 * l), w0), inv) for l in range(1, r + 1)]
        else:
            base = w1
            parts += [(q_commutator(gt(2 * l + 1), w0), inv) for l in range(r)]
            parts += [(q_commutator(w1, gt(2 * l)), inv) for l in range(1, r + 1)]
    return lincomb(A, [(base, ONE)] + parts)


def essential_G(k: int):
    """``G[k]`` over ``ESS``; ``k = 0`` gives the scalar standing in for ``G[0]``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return gg0()
    A = Alphabet.ESS
    qq = as_ratfunc(q_int(2))
    return NcPoly.letter(Gt(k, A)) + commutator(W(1, A), essential_W(-(k - 1))).scale(qq)


# ---------------------------------------------------------------------------
# root-vector elements


def _bfac() -> RationalFunction:
    """``q / ((q - q^-1)(q^2 - q^-2))``."""
    return Q / ((Q - Q ** -1) * (Q ** 2 - Q ** -2))


class _RootVectors:
    """Memoized recursions for one alphabet; ``swap`` exchanges ``W[0]`` and ``W[1]``."""

    def __init__(self, alphabet: Alphabet, swap: bool):
        a, b = NcPoly.letter(W(0, alphabet)), NcPoly.letter(W(1, alphabet))
        self.alphabet = alphabet
        self.w0, self.w1 = (b, a) if swap else (a, b)
        self.delta = (self.w1 * self.w0).scale(Q ** -2) - self.w0 * self.w1
        self.fac = _bfac()
        self.memo: Dict[Tuple[str, int], NcPoly] = {}

    def alpha(self, kind: str, n: int) -> NcPoly:
        if n < 0:
            # B_{n delta + alpha0} = B_{(-n-1) delta + alpha1} and vice versa
            return self.alpha("a1" if kind == "a0" else "a0", -n - 1)
        key = (kind, n)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        sign = 1 if kind == "a0" else -1
        if n == 0:
            out = self.w0 if kind == "a0" else self.w1
        else:
            prev2 = (self.w1 if kind == "a0" else self.w0) if n == 1 else self.alpha(kind, n - 2)
            br = commutator(self.delta, self.alpha(kind, n - 1))
            out = lincomb(self.alphabet, [(prev2, ONE), (br, self.fac * sign)])
        self.memo[key] = out
        return out

    def delta_n(self, n: int, formula: str) -> NcPoly:
        if n < 1:
            raise ValueError("B_{n delta} needs n >= 1")
        key = (formula, n)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if formula == "via_alpha1":
            b = self.alpha("a1", n - 1)
            head = [((b * self.w0), Q ** -2), ((self.w0 * b), -ONE)]
            kind = "a1"
        elif formula == "via_alpha0":
            b = self.alpha("a0", n - 1)
            head = [((self.w1 * b), Q ** -2), ((b * self.w1), -ONE)]
            kind = "a0"
        else:
            raise ValueError(f"unknown formula {formula!r}; use via_alpha1 or via_alpha0")
        c = Q ** -2 - 1
        tail = [(self.alpha(kind, l) * self.alpha(kind, n - l - 2), c) for l in range(n - 1)]
        out = lincomb(self.alphabet, head + tail)
        self.memo[key] = out
        return out


@functools.lru_cache(maxsize=None)
def _roots(alphabet: Alphabet, swap: bool) -> _RootVectors:
    return _RootVectors(Alphabet(alphabet), swap)


def _kind(kind) -> str:
    k = str(kind).lower()
    if k in ("alpha0", "a0"):
        return "a0"
    if k in ("alpha1", "a1"):
        return "a1"
    raise ValueError(f"unknown root kind {kind!r}; use alpha0 or alpha1")


def b_element(kind, n: int, alphabet: Alphabet = Alphabet.ESS) -> NcPoly:
    """``B_{n delta + alpha_i}`` for any integer ``n``."""
    return _roots(alphabet, False).alpha(_kind(kind), n)


def b_delta_element(n: int, formula: str = "via_alpha1", alphabet: Alphabet = Alphabet.ESS) -> NcPoly:
    """``B_{n delta}``, ``n >= 1``, from either of its two defining sums."""
    return _roots(alphabet, False).delta_n(n, formula)


def tilde_b_element(kind, n: int, alphabet: Alphabet = Alphabet.ESS) -> NcPoly:
    """Image of :func:`b_element` under the swap ``W[0] <-> W[1]``."""
    return _roots(alphabet, True).alpha(_kind(kind), n)


def tilde_b_delta_element(n: int, formula: str = "via_alpha1", alphabet: Alphabet = Alphabet.ESS) -> NcPoly:
    return _roots(alphabet, True).delta_n(n, formula)


# ---------------------------------------------------------------------------
# double-sum formulas for W[-n], W[n+1]

# variant -> (tilde B?, root kind, sign of the q exponent (+1: q^(k-2l)), B on the left?)
W_VARIANTS = {
    "WWalt_minus": (False, "a0", 1, True),
    "WWalt_plus": (False, "a1", -1, True),
    "WWalta_minus": (False, "a0", -1, False),
    "WWalta_plus": (False, "a1", 1, False),
    "sigma_minus": (True, "a0", 1, True),
    "sigma_plus": (True, "a1", -1, True),
    "sigma_a_minus": (True, "a0", -1, False),
    "sigma_a_plus": (True, "a1", 1, False),
}


def w_target(n: int, variant: str) -> int:
    """The index ``m`` such that ``w_closed_form(n, variant)`` equals ``W[m]``."""
    tilde, kind, _, _ = W_VARIANTS[variant]
    minus = kind == "a0"
    if tilde:
        minus = not minus
    return -n if minus else n + 1


def w_closed_form(n: int, variant: str) -> NcPoly:
    """Double-sum expression for ``W[-n]`` or ``W[n+1]``.

    Plain variants live over ``ESS`` (``B`` and ``Gt``); the ``sigma_*``
    variants are their images under the swap, over ``ESS_SIGMA`` (``tilde B``
    and ``G``).  See :func:`w_target` for which generator each one gives.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    try:
        tilde, kind, esign, b_left = W_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}; choose from {', '.join(W_VARIANTS)}") from None
    A = Alphabet.ESS_SIGMA if tilde else Alphabet.ESS
    roots = _roots(A, tilde)
    two = as_ratfunc(q_int(2))
    pre = -(Q - Q ** -1).inverse()
    parts = []
    for k in range(n + 1):
        j = n - k
        if j == 0:
            gfac, gpoly = gg0(), NcPoly.one(A)
        else:
            gfac, gpoly = ONE, NcPoly.letter(G(j, A) if tilde else Gt(j, A))
        for l in range(k + 1):
            c = pre * comb(k, l) * Q ** (esign * (k - 2 * l)) * two ** (-k - 2) * gfac
            b = roots.alpha(kind, k - 2 * l)
            parts.append((b * gpoly if b_left else gpoly * b, c))
    return lincomb(A, parts)


# ---------------------------------------------------------------------------
# named maps


def _alt_sigma(g: Generator) -> NcPoly:
    A = Alphabet.ALT
    if g.family is Family.Wminus:
        return W(g.index + 1, A)
    if g.family is Family.Wplus:
        return W(-g.index, A)
    if g.family is Family.Gcal:
        return Gt(g.index, A)
    return G(g.index, A)


def _alt_dagger(g: Generator) -> NcPoly:
    if g.family is Family.Gcal:
        return Gt(g.index)
    if g.family is Family.Gtil:
        return G(g.index)
    return g


def _alt_tau(g: Generator) -> NcPoly:
    if g.family in (Family.Gcal, Family.Gtil):
        return g
    return _alt_sigma(g)


def _rename(target: Alphabet, swap_w: bool = False, gfam: Family | None = None):
    def f(g: Generator):
        if g.family in (Family.Wminus, Family.Wplus):
            n = 0 if g.family is Family.Wminus else 1
            if swap_w:
                n = 1 - n
            return W(n, target)
        if gfam is Family.Gcal:
            return G(g.index, target)
        if gfam is Family.Gtil:
            return Gt(g.index, target)
        raise KeyError(g)
    return f


def _build_morphisms() -> Dict[str, Morphism]:
    ALT, OQ, ESS, ESS_S, Z = Alphabet.ALT, Alphabet.OQ, Alphabet.ESS, Alphabet.ESS_SIGMA, Alphabet.Z
    return {
        "sigma": Morphism("sigma", ALT, ALT, _alt_sigma),
        "dagger": Morphism("dagger", ALT, ALT, _alt_dagger, anti=True),
        "tau": Morphism("tau", ALT, ALT, _alt_tau, anti=True),
        "sigma_oq": Morphism("sigma_oq", OQ, OQ, _rename(OQ, swap_w=True)),
        "dagger_oq": Morphism("dagger_oq", OQ, OQ, _rename(OQ), anti=True),
        "tau_oq": Morphism("tau_oq", OQ, OQ, _rename(OQ, swap_w=True), anti=True),
        "iota": Morphism("iota", OQ, ALT, _rename(ALT)),
        "natural": Morphism("natural", ESS, ALT, _rename(ALT, gfam=Family.Gtil)),
        "natural_sigma": Morphism("natural_sigma", ESS_S, ALT, _rename(ALT, gfam=Family.Gcal)),
        "flat": Morphism("flat", OQ, ESS, _rename(ESS)),
        "sharp": Morphism("sharp", Z, ESS, lambda g: Gt(g.index, ESS)),
        "sigma_ess": Morphism("sigma_ess", ESS, ESS_S, _rename(ESS_S, swap_w=True, gfam=Family.Gcal)),
    }


MORPHISMS: Dict[str, Morphism] = _build_morphisms()

_ALIASES = {
    "σ": "sigma", "†": "dagger", "τ": "tau", "ι": "iota", "♮": "natural", "♭": "flat", "♯": "sharp",
}


def morphism(name: str) -> Morphism:
    key = _ALIASES.get(name, name)
    try:
        return MORPHISMS[key]
    except KeyError:
        raise ValueError(f"unknown morphism {name!r}; choose from {', '.join(MORPHISMS)}") from None


PHI_NOTE = (
    "The isomorphism from O_q tensor F[z1, z2, ...] onto the alternating algebra is not "
    "constructed here: the central elements it uses have no formula in this package. "
    "Only its dimension consequence is checked (check_tensor_dim)."
)
