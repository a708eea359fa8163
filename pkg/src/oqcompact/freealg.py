"""Free algebras over ``Q(q)`` on the generator alphabets used throughout.

Words are plain tuples of :class:`Generator`; an :class:`NcPoly` is a finite
map from words to nonzero :class:`~oqcompact.ring.RationalFunction`
coefficients.  The alphabets are

``ALT``  the alternating generators ``G[k]``, ``W[-k]``, ``W[k+1]``, ``Gt[k]``
``ESS``  the essential generators ``W[0]``, ``W[1]``, ``Gt[k]``
``ESS_SIGMA``  ``W[0]``, ``W[1]``, ``G[k]``
``OQ``   ``W[0]``, ``W[1]`` for the q-Onsager algebra itself
``Z``    commuting indeterminates ``z[n]``

Generators are interned, so identity comparison is valid and cheap.
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .ring import ONE, ZERO, Q, RationalFunction, as_ratfunc, q_int

__all__ = [
    "Alphabet",
    "Family",
    "Generator",
    "gen",
    "W",
    "G",
    "Gt",
    "z",
    "Word",
    "NcPoly",
    "DegreeScheme",
    "Morphism",
    "AlphabetMismatch",
    "commutator",
    "q_commutator",
    "degree",
    "word_degree",
    "word_key",
    "generators",
    "enumerate_words",
    "gg0",
    "lincomb",
    "default_scheme",
]


class Alphabet(str, enum.Enum):
    ALT = "ALT"
    ESS = "ESS"
    ESS_SIGMA = "ESS_SIGMA"
    OQ = "OQ"
    Z = "Z"


class Family(enum.IntEnum):
    # the numeric values give the lexicographic generator order
    Gcal = 0
    Wminus = 1
    Wplus = 2
    Gtil = 3
    z = 4


_ALLOWED = {
    Alphabet.ALT: {Family.Gcal, Family.Wminus, Family.Wplus, Family.Gtil},
    Alphabet.ESS: {Family.Wminus, Family.Wplus, Family.Gtil},
    Alphabet.ESS_SIGMA: {Family.Wminus, Family.Wplus, Family.Gcal},
    Alphabet.OQ: {Family.Wminus, Family.Wplus},
    Alphabet.Z: {Family.z},
}


class AlphabetMismatch(ValueError):
    pass


class Generator:
    """One letter of an alphabet; obtain instances through :func:`gen`."""

    __slots__ = ("alphabet", "family", "index", "code", "_name", "__weakref__")

    def __init__(self, alphabet: Alphabet, family: Family, index: int):
        self.alphabet = alphabet
        self.family = family
        self.index = index
        self.code = (int(family), index)
        if family is Family.Wminus:
            self._name = f"W[{-index}]"
        elif family is Family.Wplus:
            self._name = f"W[{index + 1}]"
        elif family is Family.Gcal:
            self._name = f"G[{index}]"
        elif family is Family.Gtil:
            self._name = f"Gt[{index}]"
        else:
            self._name = f"z[{index}]"

    def __repr__(self):
        return self._name

    __str__ = __repr__

    def __lt__(self, other: "Generator"):
        return self.code < other.code

    def __reduce__(self):
        return (gen, (self.alphabet, self.family, self.index))

    # arithmetic promotes the letter to a one-term NcPoly
    def __add__(self, other):
        return NcPoly.letter(self) + other

    def __radd__(self, other):
        return NcPoly.letter(self) + other

    def __sub__(self, other):
        return NcPoly.letter(self) - other

    def __rsub__(self, other):
        return (-NcPoly.letter(self)) + other

    def __neg__(self):
        return -NcPoly.letter(self)

    def __mul__(self, other):
        return NcPoly.letter(self) * other

    def __rmul__(self, other):
        return NcPoly.letter(self).__rmul__(other)

    def __pow__(self, n):
        return NcPoly.letter(self) ** n


@lru_cache(maxsize=None)
def gen(alphabet: Alphabet, family: Family, index: int) -> Generator:
    alphabet = Alphabet(alphabet)
    family = Family(family)
    if family not in _ALLOWED[alphabet]:
        raise ValueError(f"family {family.name} is not part of alphabet {alphabet.value}")
    if index < 0:
        raise ValueError("generator index must be >= 0")
    if family in (Family.Gcal, Family.Gtil, Family.z) and index < 1:
        raise ValueError(f"{family.name} generators are indexed from 1")
    if alphabet in (Alphabet.ESS, Alphabet.ESS_SIGMA, Alphabet.OQ):
        if family in (Family.Wminus, Family.Wplus) and index != 0:
            raise ValueError(f"alphabet {alphabet.value} only has W[0] and W[1]")
    return Generator(alphabet, family, index)


Word = Tuple[Generator, ...]


class DegreeScheme(str, enum.Enum):
    """Letter-degree rules.

    ``ALT_DEG`` and ``ESS_DEG`` agree on shared letters (``W[0]``, ``W[1]`` have
    degree 1, ``G[k]`` and ``Gt[k]`` degree ``2k``, ``W[-k]`` and ``W[k+1]``
    degree ``2k+1``); ``LEN_DEG`` counts letters and ``Z_DEG`` gives ``z[n]``
    degree ``n``.
    """

    ALT_DEG = "ALT_DEG"
    ESS_DEG = "ESS_DEG"
    LEN_DEG = "LEN_DEG"
    Z_DEG = "Z_DEG"

    def of(self, g: Generator) -> int:
        if self is DegreeScheme.LEN_DEG:
            return 1
        if self is DegreeScheme.Z_DEG:
            if g.family is not Family.z:
                raise ValueError("Z_DEG only applies to the Z alphabet")
            return g.index
        if g.family is Family.z:
            raise ValueError(f"{self.value} does not apply to the Z alphabet")
        if g.family in (Family.Gcal, Family.Gtil):
            return 2 * g.index
        return 2 * g.index + 1


def word_degree(w: Sequence[Generator], scheme: DegreeScheme) -> int:
    return sum(scheme.of(g) for g in w)


def word_key(w: Sequence[Generator], scheme: DegreeScheme):
    """Sort key of the canonical monomial order: degree, then length, then letters."""
    return (word_degree(w, scheme), len(w), tuple(g.code for g in w))


# ---------------------------------------------------------------------------
# convenient constructors


def W(n: int, alphabet: Alphabet = Alphabet.ALT) -> Generator:
    """``W[n]``: ``n <= 0`` is ``W_{-k}``, ``n >= 1`` is ``W_{k+1}``."""
    if n <= 0:
        return gen(alphabet, Family.Wminus, -n)
    return gen(alphabet, Family.Wplus, n - 1)


def G(k: int, alphabet: Alphabet = Alphabet.ALT) -> Generator:
    return gen(alphabet, Family.Gcal, k)


def Gt(k: int, alphabet: Alphabet = Alphabet.ALT) -> Generator:
    return gen(alphabet, Family.Gtil, k)


def z(n: int) -> Generator:
    return gen(Alphabet.Z, Family.z, n)


def gg0() -> RationalFunction:
    """The scalar ``-(q - q^-1)[2]_q^2`` standing in for ``G_0`` and ``Gt_0``."""
    qq = as_ratfunc(q_int(2))
    return -(Q - Q ** -1) * qq * qq


# ---------------------------------------------------------------------------


class NcPoly:
    """Finite linear combination of words over one alphabet.

    ``NcPoly`` values are treated as immutable; arithmetic returns new
    objects.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] | None = None):
        self.alphabet = Alphabet(alphabet)
        clean: Dict[Word, RationalFunction] = {}
        if terms:
            for w, c in terms.items():
                c = as_ratfunc(c)
                if c:
                    w = tuple(w)
                    for g in w:
                        if g.alphabet is not self.alphabet:
                            raise AlphabetMismatch(
                                f"letter {g} of alphabet {g.alphabet.value} in a {self.alphabet.value} polynomial"
                            )
                    clean[w] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, alphabet: Alphabet, terms: Dict[Word, RationalFunction]) -> "NcPoly":
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, alphabet: Alphabet, c) -> "NcPoly":
        c = as_ratfunc(c)
        return cls._wrap(Alphabet(alphabet), {(): c} if c else {})

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NcPoly":
        return cls.scalar(alphabet, ONE)

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NcPoly":
        return cls._wrap(Alphabet(alphabet), {})

    @classmethod
    def from_word(cls, w: Sequence[Generator], alphabet: Alphabet | None = None, c=ONE) -> "NcPoly":
        w = tuple(w)
        if alphabet is None:
            if not w:
                raise ValueError("alphabet required for the empty word")
            alphabet = w[0].alphabet
        return cls(alphabet, {w: c})

    @classmethod
    def letter(cls, g: Generator) -> "NcPoly":
        return cls._wrap(g.alphabet, {(g,): ONE})

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, w: Sequence[Generator]) -> RationalFunction:
        return self.terms.get(tuple(w), ZERO)

    def letters(self) -> set:
        return {g for w in self.terms for g in w}

    def words(self) -> List[Word]:
        return list(self.terms)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "NcPoly"):
        if self.alphabet is not other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.value} vs {other.alphabet.value}")

    def _lift(self, other) -> "NcPoly":
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        if isinstance(other, Generator):
            other = NcPoly.letter(other)
            self._check(other)
            return other
        return NcPoly.scalar(self.alphabet, as_ratfunc(other))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcPoly._wrap(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._wrap(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, c) -> "NcPoly":
        c = as_ratfunc(c)
        if not c:
            return NcPoly.zero(self.alphabet)
        if c.is_one():
            return self
        return NcPoly._wrap(self.alphabet, {w: a * c for w, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (NcPoly, Generator)):
            return self.scale(other)
        other = self._lift(other)
        out: Dict[Word, RationalFunction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                c = a * b
                s = out.get(w)
                if s is None:
                    out[w] = c
                else:
                    s = s + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return NcPoly._wrap(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, Generator):
            return NcPoly.letter(other) * self
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(as_ratfunc(1) / as_ratfunc(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in a free algebra")
        out = NcPoly.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alphabet is other.alphabet and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def sorted_terms(self, scheme: DegreeScheme | None = None):
        """Terms in descending canonical order (largest word first)."""
        scheme = scheme or default_scheme(self.alphabet)
        return sorted(self.terms.items(), key=lambda t: word_key(t[0], scheme), reverse=True)

    def __repr__(self):
        from .render import render_poly

        return render_poly(self)

    __str__ = __repr__


def default_scheme(alphabet: Alphabet) -> DegreeScheme:
    if alphabet is Alphabet.OQ:
        return DegreeScheme.LEN_DEG
    if alphabet is Alphabet.Z:
        return DegreeScheme.Z_DEG
    if alphabet is Alphabet.ALT:
        return DegreeScheme.ALT_DEG
    return DegreeScheme.ESS_DEG


PolyLike = Union[NcPoly, Generator]


def lincomb(alphabet: Alphabet, parts: Iterable[Tuple[NcPoly, object]]) -> NcPoly:
    """``sum(c * p for p, c in parts)`` accumulated in a single pass."""
    out: Dict[Word, RationalFunction] = {}
    for p, c in parts:
        c = as_ratfunc(c)
        if not c:
            continue
        if p.alphabet is not alphabet:
            raise AlphabetMismatch(f"{p.alphabet.value} vs {alphabet.value}")
        one = c.is_one()
        for w, a in p.terms.items():
            t = a if one else a * c
            s = out.get(w)
            if s is None:
                out[w] = t
            else:
                s = s + t
                if s:
                    out[w] = s
                else:
                    del out[w]
    return NcPoly._wrap(Alphabet(alphabet), out)


def _poly(x: PolyLike) -> NcPoly:
    return NcPoly.letter(x) if isinstance(x, Generator) else x


def commutator(a: PolyLike, b: PolyLike) -> NcPoly:
    """``ab - ba``."""
    a, b = _poly(a), _poly(b)
    return a * b - b * a


def q_commutator(a: PolyLike, b: PolyLike, power: int = 1) -> NcPoly:
    """``[a, b]_{q^power} = q^power ab - q^-power ba``."""
    a, b = _poly(a), _poly(b)
    return (a * b).scale(Q ** power) - (b * a).scale(Q ** -power)


def degree(x: Union[NcPoly, Sequence[Generator]], scheme: DegreeScheme) -> int:
    """Maximum letter-degree sum over the words of ``x``; zero maps to 0."""
    if isinstance(x, NcPoly):
        if not x.terms:
            return 0
        return max(word_degree(w, scheme) for w in x.terms)
    return word_degree(x, scheme)


# ---------------------------------------------------------------------------
# word enumeration


def generators(alphabet: Alphabet, scheme: DegreeScheme, max_degree: int) -> List[Generator]:
    """Letters of ``alphabet`` with scheme-degree at most ``max_degree``, in code order."""
    alphabet = Alphabet(alphabet)
    out: List[Generator] = []
    fams = sorted(_ALLOWED[alphabet])
    for fam in fams:
        if alphabet in (Alphabet.ESS, Alphabet.ESS_SIGMA, Alphabet.OQ) and fam in (Family.Wminus, Family.Wplus):
            idx: Iterable[int] = [0]
        elif fam in (Family.Gcal, Family.Gtil, Family.z):
            idx = itertools.count(1)
        else:
            idx = itertools.count(0)
        for i in idx:
            g = gen(alphabet, fam, i)
            if scheme.of(g) > max_degree:
                break
            out.append(g)
    return out


def enumerate_words(alphabet: Alphabet, scheme: DegreeScheme, bound: int) -> List[Word]:
    """All words of scheme-degree ``<= bound`` in ascending canonical order."""
    if bound < 0:
        return []
    gens = generators(alphabet, scheme, bound)
    by_deg: Dict[int, List[Word]] = {0: [()]}
    degs = [(g, scheme.of(g)) for g in gens]
    for d in range(1, bound + 1):
        layer: List[Word] = []
        for g, dg in degs:
            if dg <= d:
                layer.extend((g,) + w for w in by_deg[d - dg])
        by_deg[d] = layer
    words = [w for d in range(bound + 1) for w in by_deg[d]]
    words.sort(key=lambda w: word_key(w, scheme))
    return words


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """Generator assignment extended multiplicatively (or anti-multiplicatively).

    ``images`` may be a mapping or a callable ``Generator -> NcPoly``; the
    callable form lets maps on infinite alphabets produce images on demand.
    """

    def __init__(
        self,
        name: str,
        source: Alphabet,
        target: Alphabet,
        images: Union[Mapping[Generator, NcPoly], Callable[[Generator], NcPoly]],
        anti: bool = False,
    ):
        self.name = name
        self.source = Alphabet(source)
        self.target = Alphabet(target)
        self.anti = anti
        self._images = images
        self._cache: Dict[Generator, NcPoly] = {}

    @property
    def flavor(self) -> str:
        return "antiautomorphism" if self.anti else "automorphism"

    def image(self, g: Generator) -> NcPoly:
        if g.alphabet is not self.source:
            raise AlphabetMismatch(f"{self.name} acts on {self.source.value}, got {g}")
        img = self._cache.get(g)
        if img is None:
            if callable(self._images):
                img = self._images(g)
            else:
                if g not in self._images:
                    raise KeyError(f"{self.name} has no image for {g}")
                img = self._images[g]
            if img is None:
                raise KeyError(f"{self.name} has no image for {g}")
            img = _poly(img)
            if img.alphabet is not self.target:
                raise AlphabetMismatch(f"image of {g} under {self.name} is not over {self.target.value}")
            self._cache[g] = img
        return img

    def __call__(self, x: PolyLike) -> NcPoly:
        x = _poly(x)
        if x.alphabet is not self.source:
            raise AlphabetMismatch(f"{self.name} acts on {self.source.value}, got {x.alphabet.value}")
        parts = []
        for w, c in x.terms.items():
            img = NcPoly.one(self.target)
            letters = reversed(w) if self.anti else w
            for g in letters:
                img = img * self.image(g)
            parts.append((img, c))
        return lincomb(self.target, parts)

    def __repr__(self):
        return f"Morphism({self.name}: {self.source.value} -> {self.target.value}, {self.flavor})"
