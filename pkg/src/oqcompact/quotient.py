"""Degree-truncated quotients of free algebras.

For a presentation and a bound ``N = D + H`` we compute a reduced row-echelon
basis of an ideal component inside the span of all words of degree ``<= N``.
Columns are words in the canonical order; a row's pivot is its largest word,
so a row with pivot degree ``d`` only involves words of degree ``<= d``.

Rows live over ``Z[q]`` and are projective: a row stands for its
``Q(q)``-multiples, is kept primitive (entry gcd 1) and is updated by
fraction-free elimination.  Conversion to :class:`RationalFunction`
coefficients happens only when a normal form is handed back to the caller.

Row generation starts from the relation instances of degree ``<= N`` and
closes the span under left and right multiplication by generators, as long as
the product stays within degree ``N``.  Each vector that enters the basis is
queued once per admissible generator and side; queue entries are processed in
ascending order of their leading word.  The result contains every product
``w r w'`` of degree ``<= N``.
"""

from __future__ import annotations

import bisect
import heapq
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from .freealg import Alphabet, DegreeScheme, NcPoly, Word, degree, enumerate_words, generators
from .presentations import Presentation, PresentationId, get, instantiate
from .ring import RationalFunction

__all__ = [
    "TruncatedQuotient",
    "ResourceLimitExceeded",
    "DegreeOverflow",
    "build",
    "certified_build",
    "SparseEchelon",
]

log = logging.getLogger(__name__)

_Z1 = flint.fmpz_poly([1])

Vec = Dict[int, "flint.fmpz_poly"]


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, msg: str, progress: dict):
        super().__init__(msg)
        self.progress = progress


class DegreeOverflow(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse fraction-free echelon kernel


def _is_unit(p) -> bool:
    return p.degree() == 0 and abs(int(p.coeffs()[0])) == 1


def _normalize(v: Vec) -> Vec:
    """Divide out the gcd of all entries; make the pivot's leading coefficient positive."""
    if not v:
        return v
    g = None
    for a in v.values():
        g = a if g is None else g.gcd(a)
        if g.degree() == 0 and abs(int(g.coeffs()[0])) == 1:
            g = None
            break
    if g is not None and not (g.degree() == 0 and int(g.coeffs()[0]) == 1):
        if g.leading_coefficient() < 0:
            g = -g
        v = {c: a // g for c, a in v.items()}
    piv = max(v)
    if v[piv].leading_coefficient() < 0:
        v = {c: -a for c, a in v.items()}
    return v


class SparseEchelon:
    """Fully reduced sparse echelon form over ``Z[q]`` with projective rows.

    ``rows[p]`` is the row whose pivot (largest column) is ``p``; no row
    contains the pivot column of another row.
    """

    def __init__(self):
        self.rows: Dict[int, Vec] = {}
        self.order: List[int] = []  # sorted pivots
        self.back_substitutions = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vec) -> Tuple[Vec, "flint.fmpz_poly"]:
        """Reduce ``v`` against every row.

        Returns ``(r, m)`` with ``m * v - r`` in the row span, before the final
        content normalization (which the caller may apply with ``_normalize``).
        """
        rows = self.rows
        hits = [c for c in v if c in rows]
        if not hits:
            return dict(v), _Z1
        L = _Z1
        for c in hits:
            pc = rows[c][c]
            if not _is_unit(pc):
                g = L.gcd(pc)
                L = L * (pc // g)
        unit_L = _is_unit(L)
        if unit_L:
            out = {c: a for c, a in v.items() if c not in rows}
            if int(L.coeffs()[0]) == -1:
                out = {c: -a for c, a in out.items()}
        else:
            out = {c: a * L for c, a in v.items() if c not in rows}
        for c in hits:
            p = rows[c]
            pc = p[c]
            f = v[c] * L if _is_unit(pc) and int(pc.coeffs()[0]) == 1 else (v[c] * L) // pc
            for col, b in p.items():
                if col == c:
                    continue
                t = out.get(col)
                if t is None:
                    out[col] = -(f * b)
                else:
                    t = t - f * b
                    if t.is_zero():
                        del out[col]
                    else:
                        out[col] = t
        return out, L

    def insert(self, v: Vec) -> int:
        """Add a reduced, nonzero, normalized vector; back-substitute its pivot."""
        piv = max(v)
        a = v[piv]
        rows = self.rows
        pos = bisect.bisect_right(self.order, piv)
        for other in self.order[pos:]:
            r = rows[other]
            b = r.get(piv)
            if b is None:
                continue
            self.back_substitutions += 1
            g = a.gcd(b)
            fa, fb = a // g, b // g
            new = {}
            for col, x in r.items():
                if col == piv:
                    continue
                new[col] = x * fa if not _is_unit(fa) or int(fa.coeffs()[0]) != 1 else x
            for col, y in v.items():
                if col == piv:
                    continue
                t = new.get(col)
                val = -(fb * y) if t is None else t - fb * y
                if val.is_zero():
                    new.pop(col, None)
                else:
                    new[col] = val
            rows[other] = _normalize(new)
        rows[piv] = v
        self.order.insert(pos, piv)
        return piv

    def add(self, v: Vec) -> Optional[int]:
        """Reduce, and insert when nonzero.  Returns the new pivot or ``None``."""
        r, _ = self.reduce(v)
        if not r:
            return None
        r = _normalize(r)
        return self.insert(r)


# ---------------------------------------------------------------------------
# conversions between NcPoly and integer vectors


def _rf_parts(c: RationalFunction):
    """``c = q**s * N / M`` with ``N, M`` in ``Z[q]``."""
    num, den = c.num, c.den
    n = num.numer()
    m = den.numer()
    # num = n / dn, den = m / dm  ->  c = q^s * n * dm / (m * dn)
    dn = num.denom()
    dm = den.denom()
    return c.shift, n * dm, m * dn


def poly_to_vector(x: NcPoly, index: Dict[Word, int]) -> Tuple[Vec, RationalFunction]:
    """Integer vector ``v`` and scalar ``s`` with ``x = s * sum(v[c] * word_c)``."""
    if not x.terms:
        return {}, RationalFunction(1)
    parts = []
    smin = None
    M = _Z1
    for w, c in x.terms.items():
        try:
            col = index[w]
        except KeyError:
            raise DegreeOverflow(f"word {w} is outside the truncation") from None
        s, n, m = _rf_parts(c)
        parts.append((col, s, n, m))
        smin = s if smin is None else min(smin, s)
        if not (m.degree() == 0 and int(m.coeffs()[0]) == 1):
            M = M * (m // M.gcd(m))
    v: Vec = {}
    for col, s, n, m in parts:
        e = n * (M // m)
        if s > smin:
            e = e.left_shift(s - smin)
        v[col] = e
    scale = RationalFunction.q(smin) / RationalFunction.from_polys(M, _Z1)
    return v, scale


def vector_to_poly(v: Vec, scale: RationalFunction, words: Sequence[Word], alphabet: Alphabet) -> NcPoly:
    out = {}
    one = flint.fmpz_poly([1])
    for col, a in v.items():
        out[words[col]] = RationalFunction.from_polys(a, one) * scale
    return NcPoly._wrap(alphabet, out)


# ---------------------------------------------------------------------------


@dataclass
class BuildStats:
    relations: int = 0
    rows_generated: int = 0
    zero_reductions: int = 0
    pivots: int = 0
    back_substitutions: int = 0
    elimination_seconds: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TruncatedQuotient:
    """Reduced echelon basis of an ideal component up to degree ``N = D + H``."""

    presentation: Presentation
    D: int
    H: int
    words: List[Word]
    index: Dict[Word, int]
    word_deg: List[int]
    echelon: SparseEchelon
    stats: BuildStats = field(default_factory=BuildStats)

    @property
    def N(self) -> int:
        return self.D + self.H

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    @property
    def scheme(self) -> DegreeScheme:
        return self.presentation.scheme

    @property
    def pid(self) -> PresentationId:
        return self.presentation.id

    def dims(self) -> List[int]:
        """``dims()[d]`` = #words of degree <= d minus #pivots of degree <= d."""
        nw = [0] * (self.D + 1)
        npv = [0] * (self.D + 1)
        for d in self.word_deg:
            if d <= self.D:
                nw[d] += 1
        for p in self.echelon.rows:
            d = self.word_deg[p]
            if d <= self.D:
                npv[d] += 1
        out, w, pv = [], 0, 0
        for d in range(self.D + 1):
            w += nw[d]
            pv += npv[d]
            out.append(w - pv)
        return out

    def pivot_words(self, max_degree: int | None = None) -> List[Word]:
        m = self.D if max_degree is None else max_degree
        return [self.words[p] for p in self.echelon.order if self.word_deg[p] <= m]

    def standard_words(self, max_degree: int | None = None) -> List[Word]:
        """Non-pivot words of degree ``<= max_degree`` (a basis of the quotient component)."""
        m = self.D if max_degree is None else max_degree
        rows = self.echelon.rows
        return [w for i, w in enumerate(self.words) if self.word_deg[i] <= m and i not in rows]

    def _check_degree(self, x: NcPoly):
        if x.alphabet is not self.alphabet:
            raise ValueError(f"expected a {self.alphabet.value} polynomial, got {x.alphabet.value}")
        d = degree(x, self.scheme)
        if d > self.D:
            raise DegreeOverflow(f"degree {d} exceeds the quotient bound D={self.D}")

    def reduce_vector(self, x: NcPoly) -> Tuple[Vec, RationalFunction]:
        self._check_degree(x)
        v, scale = poly_to_vector(x, self.index)
        r, L = self.echelon.reduce(v)
        if not (L.degree() == 0 and int(L.coeffs()[0]) == 1):
            scale = scale / RationalFunction.from_polys(L, _Z1)
        return r, scale

    def normal_form(self, x: NcPoly) -> NcPoly:
        """Canonical representative of ``x`` modulo the computed ideal component."""
        r, scale = self.reduce_vector(x)
        return vector_to_poly(r, scale, self.words, self.alphabet)

    def is_zero(self, x: NcPoly) -> bool:
        r, _ = self.reduce_vector(x)
        return not r

    def equal(self, x: NcPoly, y: NcPoly) -> bool:
        return self.is_zero(x - y)

    def rank_of(self, xs: Iterable[NcPoly]) -> int:
        """Rank of the normal-form coordinate vectors of ``xs``."""
        ech = SparseEchelon()
        for x in xs:
            r, _ = self.reduce_vector(x)
            if r:
                ech.add(r)
        return len(ech)

    def rank_levels(self, groups: Sequence[Iterable[NcPoly]]) -> Tuple[List[int], List[Optional[NcPoly]]]:
        """Cumulative ranks after each group, and per group the first dependent element.

        ``groups[i]`` is added on top of all earlier groups; the second list
        holds, for each group, the first element that did not raise the rank
        (``None`` if every element was independent).
        """
        ech = SparseEchelon()
        ranks, dependents = [], []
        for grp in groups:
            first = None
            for x in grp:
                r, _ = self.reduce_vector(x)
                if not r or ech.add(r) is None:
                    if first is None:
                        first = x
            ranks.append(len(ech))
            dependents.append(first)
        return ranks, dependents

    def report(self) -> dict:
        return {
            "presentation": self.pid.value,
            "D": self.D,
            "H": self.H,
            "dims": self.dims(),
            "words": len(self.words),
            **self.stats.as_dict(),
        }


def build(
    pres,
    D: int,
    H: int = 0,
    *,
    max_rows: int | None = None,
    time_limit: float | None = None,
) -> TruncatedQuotient:
    """Compute the truncated quotient of ``pres`` up to degree ``D`` with headroom ``H``."""
    pres = get(pres)
    if D < 0 or H < 0:
        raise ValueError("D and H must be >= 0")
    N = D + H
    scheme = pres.scheme
    t0 = time.perf_counter()
    words = enumerate_words(pres.alphabet, scheme, N)
    index = {w: i for i, w in enumerate(words)}
    word_deg = [sum(scheme.of(g) for g in w) for w in words]
    gens = generators(pres.alphabet, scheme, N)
    gdeg = [scheme.of(g) for g in gens]
    stats = BuildStats()
    ech = SparseEchelon()

    rels = instantiate(pres, N)
    stats.relations = len(rels)
    heap: list = []
    seq = 0
    for r in rels:
        v, _ = poly_to_vector(r, index)
        heapq.heappush(heap, (max(v), seq, v, -1, 0))
        seq += 1

    def progress():
        return {"presentation": pres.id.value, "D": D, "H": H, **stats.as_dict(),
                "queued": len(heap), "elapsed": time.perf_counter() - t0}

    while heap:
        _lead, _s, src, gi, side = heapq.heappop(heap)
        if gi < 0:
            v = src
        else:
            g = gens[gi]
            if side == 0:
                v = {index[(g,) + words[c]]: a for c, a in src.items()}
            else:
                v = {index[words[c] + (g,)]: a for c, a in src.items()}
        stats.rows_generated += 1
        if max_rows is not None and stats.rows_generated > max_rows:
            raise ResourceLimitExceeded("row limit exceeded", progress())
        if time_limit is not None and (stats.rows_generated & 255) == 0:
            if time.perf_counter() - t0 > time_limit:
                raise ResourceLimitExceeded("time limit exceeded", progress())
        r, _ = ech.reduce(v)
        if not r:
            stats.zero_reductions += 1
            continue
        r = _normalize(r)
        piv = ech.insert(r)
        stats.pivots += 1
        room = N - word_deg[piv]
        pw = words[piv]
        for gi2, dg in enumerate(gdeg):
            if dg > room:
                continue
            g = gens[gi2]
            heapq.heappush(heap, (index[(g,) + pw], seq, r, gi2, 0))
            seq += 1
            heapq.heappush(heap, (index[pw + (g,)], seq, r, gi2, 1))
            seq += 1
    stats.elimination_seconds = time.perf_counter() - t0
    stats.back_substitutions = ech.back_substitutions
    log.info("built %s D=%d H=%d: %s", pres.id.value, D, H, stats.as_dict())
    return TruncatedQuotient(pres, D, H, words, index, word_deg, ech, stats)


def certified_build(pres, D: int, H: int = 0, *, expected=None, max_headroom: int = 4, **kw) -> TruncatedQuotient:
    """Build, raising the headroom by 2 while some level exceeds ``expected``.

    ``expected`` is a sequence of reference dimensions indexed by degree (the
    PBW counts); without it this is a plain :func:`build`.
    """
    while True:
        tq = build(pres, D, H, **kw)
        if expected is None:
            return tq
        dims = tq.dims()
        if all(dims[d] <= expected[d] for d in range(D + 1)) or H + 2 > max_headroom:
            return tq
        log.info("dims %s exceed %s; raising headroom to %d", dims, list(expected[: D + 1]), H + 2)
        H += 2
