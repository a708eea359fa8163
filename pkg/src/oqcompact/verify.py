"""Named checks, each certifying one family of identities up to a degree bound.

A check returns a :class:`CheckReport`.  Identity checks reduce a list of
elements in a truncated quotient and fail with the offending normal forms as
witnesses; dimension checks compare level dimensions or ranks and fail with a
word or element pinpointing the first bad level.

Every identity check accepts ``mutate=True``, which multiplies the largest
term of each identity by ``q`` before reducing; a sound harness must then
report failure.
"""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .elements import (
    W_VARIANTS,
    b_delta_element,
    b_element,
    essential_G,
    essential_W,
    expected_dims,
    morphism,
    partition_count,
    w_closed_form,
    w_target,
)
from .freealg import (
    Alphabet,
    DegreeScheme,
    NcPoly,
    G,
    Gt,
    W,
    commutator,
    degree,
    generators,
    q_commutator,
)
from .presentations import PresentationId, get, instantiate, instantiate_labeled, qdg
from .quotient import ResourceLimitExceeded, TruncatedQuotient, certified_build
from .render import render_poly
from .ring import Q, as_ratfunc

__all__ = [
    "CheckReport",
    "Witness",
    "CHECKS",
    "MUTABLE_CHECKS",
    "run_check",
    "run_suite",
    "quotient",
    "clear_cache",
    "set_build_limits",
]

log = logging.getLogger(__name__)

ALT = PresentationId.ALT_FULL
OQ = PresentationId.OQ_DG

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-resource"


@dataclass
class Witness:
    description: str
    expression: Optional[NcPoly]
    normal_form: Optional[NcPoly]

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "expression": None if self.expression is None else render_poly(self.expression),
            "normal_form": None if self.normal_form is None else render_poly(self.normal_form),
        }


@dataclass
class CheckReport:
    check: str
    presentation: str
    D: int
    H: int
    status: str
    witnesses: List[Witness] = field(default_factory=list)
    millis: int = 0
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, timings: bool = True) -> dict:
        return {
            "check": self.check,
            "presentation": self.presentation,
            "D": self.D,
            "H": self.H,
            "status": self.status,
            "witnesses": [w.to_json() for w in self.witnesses],
            "millis": self.millis if timings else 0,
        }


# ---------------------------------------------------------------------------
# build cache


_cache: Dict[Tuple[str, int, int], TruncatedQuotient] = {}
_cache_lock = threading.Lock()
_key_locks: Dict[Tuple[str, int, int], threading.Lock] = {}


_limits: Dict[str, object] = {}


def set_build_limits(max_rows: Optional[int] = None, time_limit: Optional[float] = None):
    """Resource limits applied to every build made through :func:`quotient`."""
    _limits.clear()
    if max_rows is not None:
        _limits["max_rows"] = max_rows
    if time_limit is not None:
        _limits["time_limit"] = time_limit


def clear_cache():
    with _cache_lock:
        _cache.clear()
        _key_locks.clear()


def quotient(pid, D: int, H: int = 0, **kw) -> TruncatedQuotient:
    """Certified, cached build keyed by ``(presentation, D, H)``."""
    pres = get(pid)
    key = (pres.id.value, D, H)
    with _cache_lock:
        hit = _cache.get(key)
        if hit is not None:
            return hit
        lock = _key_locks.setdefault(key, threading.Lock())
    with lock:
        with _cache_lock:
            hit = _cache.get(key)
        if hit is not None:
            return hit
        opts = {**_limits, **kw}
        tq = certified_build(pres, D, H, expected=expected_dims(pres.scheme, D), **opts)
        with _cache_lock:
            _cache[key] = tq
        return tq


# ---------------------------------------------------------------------------
# helpers


def _perturb(x: NcPoly) -> NcPoly:
    """Multiply the largest term of ``x`` by ``q``."""
    if not x.terms:
        return x
    w, c = x.sorted_terms()[0]
    terms = dict(x.terms)
    terms[w] = c * Q
    return NcPoly._wrap(x.alphabet, terms)


class _Run:
    """Accumulates witnesses for one check invocation."""

    def __init__(self, mutate: bool):
        self.mutate = mutate
        self.witnesses: List[Witness] = []
        self.count = 0
        self.H = 0
        self.notes: Dict[str, object] = {}

    def use(self, tq: TruncatedQuotient) -> TruncatedQuotient:
        self.H = max(self.H, tq.H)
        return tq

    def zero(self, tq: TruncatedQuotient, label: str, x: NcPoly, rhs: Optional[NcPoly] = None):
        """Record a witness unless ``x - rhs`` (or ``x``) vanishes in ``tq``.

        Under mutation the left side is multiplied by ``q``; a lone relation
        gets its largest term scaled instead.
        """
        if self.mutate:
            x = _perturb(x) if rhs is None else x.scale(Q)
        if rhs is not None:
            x = x - rhs
        if degree(x, tq.scheme) > tq.D:
            return
        self.count += 1
        nf = tq.normal_form(x)
        if nf.terms:
            self.witnesses.append(Witness(label, x, nf))

    def fail(self, label: str, expression=None, nf=None):
        self.witnesses.append(Witness(label, expression, nf))


def _dims_equal(run: _Run, name_a: str, a: Sequence[int], name_b: str, b: Sequence[int], tq_for_witness=None):
    for d, (x, y) in enumerate(zip(a, b)):
        if x != y:
            expr = None
            if tq_for_witness is not None:
                std = [w for w in tq_for_witness.standard_words(d) if sum(tq_for_witness.scheme.of(g) for g in w) == d]
                if std:
                    expr = NcPoly.from_word(std[-1], tq_for_witness.alphabet)
            run.fail(f"level {d}: {name_a} has {x}, {name_b} has {y}", expr, expr)
            return False
    return True


def _ranks_match(run: _Run, label: str, tq: TruncatedQuotient, groups, target: Sequence[int]):
    ranks, dependents = tq.rank_levels(groups)
    run.notes.setdefault("ranks", {})[label] = ranks
    for d, (r, t) in enumerate(zip(ranks, target)):
        if r != t:
            x = dependents[d]
            nf = tq.normal_form(x) if x is not None else None
            run.fail(f"{label}: rank {r} at level {d}, expected {t}", x, nf)
            return False
    return True


def _scheme_deg(scheme: DegreeScheme, w) -> int:
    return sum(scheme.of(g) for g in w)


def _by_level(words, scheme: DegreeScheme, D: int, alphabet: Alphabet) -> List[List[NcPoly]]:
    groups: List[List[NcPoly]] = [[] for _ in range(D + 1)]
    for w in words:
        d = _scheme_deg(scheme, w)
        if d <= D:
            groups[d].append(NcPoly.from_word(w, alphabet))
    return groups


def _d2():
    d = Q ** 2 - Q ** -2
    return d * d


def _qq():
    return as_ratfunc(Q + Q ** -1)


# ---------------------------------------------------------------------------
# checks


def check_pbw_dims(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    dims = tq.dims()
    run.notes["dims"] = dims
    if not _dims_equal(run, "ALT_FULL", dims, "PBW count", expected_dims(DegreeScheme.ALT_DEG, D), tq):
        return
    # non-decreasing words in the generator order are the PBW monomials
    sorted_words = [w for w in tq.words if all(w[i].code <= w[i + 1].code for i in range(len(w) - 1))]
    _ranks_match(run, "PBW monomials", tq, _by_level(sorted_words, tq.scheme, D, tq.alphabet), dims)


def check_newrels1(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    w0, w1, g1 = W(0), W(1), Gt(1)
    run.zero(tq, "[W0,Gt1] = [W0,[W0,W1]_q]", commutator(w0, g1), commutator(w0, q_commutator(w0, w1)))
    run.zero(tq, "[Gt1,W1] = [[W0,W1]_q,W1]", commutator(g1, w1), commutator(q_commutator(w0, w1), w1))


def check_qdg_in_O(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    run.zero(tq, "q-Dolan/Grady in W0", qdg(W(0), W(1)))
    run.zero(tq, "q-Dolan/Grady in W1", qdg(W(1), W(0)))


def check_alt_expressions(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    nat = morphism("natural")
    k = 0
    while 2 * k + 1 <= D:
        for n in (-k, k + 1):
            run.zero(tq, f"W[{n}] from essential generators", nat(essential_W(n)), NcPoly.letter(W(n)))
        k += 1
    k = 1
    while 2 * k <= D:
        run.zero(tq, f"G[{k}] from essential generators", nat(essential_G(k)), NcPoly.letter(G(k)))
        k += 1


def check_newrels(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    w0, w1 = W(0), W(1)
    k = 1
    while 2 * k + 3 <= D:
        run.zero(tq, f"[Gt{k + 1},W0] identity, k={k}", commutator(Gt(k + 1), w0).scale(_d2()),
                 commutator(w0, q_commutator(w0, q_commutator(w1, Gt(k)))))
        run.zero(tq, f"[W1,Gt{k + 1}] identity, k={k}", commutator(w1, Gt(k + 1)).scale(_d2()),
                 commutator(q_commutator(q_commutator(Gt(k), w0), w1), w1))
        k += 1


def check_natural_welldef(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    nat = morphism("natural")
    for rel in instantiate_labeled(PresentationId.ESS_COMPACT, D):
        run.zero(tq, f"natural image of compact relation {rel.name}", nat(rel.poly))


def check_dims_match(run: _Run, D: int, H: int):
    alt = run.use(quotient(ALT, D, H))
    ess = run.use(quotient(PresentationId.ESS_COMPACT, D, H))
    run.notes["dims"] = ess.dims()
    if not _dims_equal(run, "ESS_COMPACT", ess.dims(), "ALT_FULL", alt.dims(), ess):
        return
    nat = morphism("natural")
    groups = _by_level(ess.standard_words(D), ess.scheme, D, ess.alphabet)
    _ranks_match(run, "natural images of an ESS basis", alt, [[nat(x) for x in g] for g in groups], alt.dims())


def check_mingen(run: _Run, D: int, H: int):
    full = run.use(quotient(ALT, D, H))
    red = run.use(quotient(PresentationId.ALT_REDUCED, D, H))
    run.notes["dims"] = red.dims()
    _dims_equal(run, "ALT_REDUCED", red.dims(), "ALT_FULL", full.dims(), red)
    for rel in instantiate_labeled(ALT, D):
        run.zero(red, f"relation {rel.name} in the reduced quotient", rel.poly)


def _factor_groups(tq: TruncatedQuotient, D: int, single_degree_letters: Callable) -> List[List[NcPoly]]:
    """Per level ``d``: the ``E_d`` element and every word of degree ``d`` that is a
    product of two shorter words; single letters of degree ``d`` are deferred to
    the next level, where they are part of ``O_{d-1}``."""
    groups: List[List[NcPoly]] = [[] for _ in range(D + 2)]
    for w in tq.words:
        d = _scheme_deg(tq.scheme, w)
        if d > D:
            continue
        x = NcPoly.from_word(w, tq.alphabet)
        if len(w) == 1 and d >= 2:
            groups[d + 1].append(x)
        else:
            groups[d].append(x)
    for d in range(2, D + 1, 2):
        groups[d].insert(0, NcPoly.letter(single_degree_letters(d // 2)))
    return groups[: D + 1]


def check_factor_recursion(run: _Run, D: int, H: int):
    for pid, gt in ((ALT, lambda n: Gt(n)), (PresentationId.ESS_COMPACT, lambda n: Gt(n, Alphabet.ESS))):
        tq = run.use(quotient(pid, D, H))
        _ranks_match(run, f"{pid.value} factor spans", tq, _factor_groups(tq, D, gt), tq.dims())


def check_sorted_spanning(run: _Run, D: int, H: int):
    tq = run.use(quotient(PresentationId.ESS_COMPACT, D, H))

    def sorted_shape(w):
        seen_big = False
        for g in w:
            if tq.scheme.of(g) == 1:
                if seen_big:
                    return False
            else:
                seen_big = True
        return True

    words = [w for w in tq.words if sorted_shape(w)]
    _ranks_match(run, "sorted-shape monomials", tq, _by_level(words, tq.scheme, D, tq.alphabet), tq.dims())


def check_tensor_dim(run: _Run, D: int, H: int):
    alt = run.use(quotient(ALT, D, H))
    oq = run.use(quotient(OQ, D, H))
    zq = run.use(quotient(PresentationId.POLY_Z, D // 2, H))
    zd = zq.dims()
    zcount = [zd[0]] + [zd[k] - zd[k - 1] for k in range(1, len(zd))]
    for k, c in enumerate(zcount):
        if c != partition_count(k):
            run.fail(f"polynomial ring level {k}: {c} monomials, {partition_count(k)} partitions")
            return
    od = oq.dims()
    predicted = [sum(od[d - 2 * k] * zcount[k] for k in range(d // 2 + 1)) for d in range(D + 1)]
    run.notes["dims_OQ"] = od
    run.notes["predicted"] = predicted
    _dims_equal(run, "ALT_FULL", alt.dims(), "tensor count", predicted, alt)


def check_morphisms(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    sig, dag, tau = morphism("sigma"), morphism("dagger"), morphism("tau")
    for rel in instantiate_labeled(ALT, D):
        for m in (sig, dag, tau):
            run.zero(tq, f"{m.name} image of relation {rel.name}", m(rel.poly))
    oqq = run.use(quotient(OQ, D, H))
    for m in ("sigma_oq", "dagger_oq", "tau_oq"):
        mm = morphism(m)
        for i, rel in enumerate(instantiate(OQ, D)):
            run.zero(oqq, f"{m} image of q-Dolan/Grady relation {i + 1}", mm(rel))
    # structural identities hold in the free algebra; test them exactly
    if run.mutate:
        return
    iota = morphism("iota")
    for a, b in (("sigma", "sigma_oq"), ("dagger", "dagger_oq"), ("tau", "tau_oq")):
        for g in generators(Alphabet.OQ, DegreeScheme.LEN_DEG, 1):
            lhs, rhs = iota(morphism(b)(g)), morphism(a)(iota(g))
            if lhs != rhs:
                run.fail(f"diagram {a} and iota disagree on {g}", lhs - rhs, lhs - rhs)
    for g in generators(Alphabet.ALT, DegreeScheme.ALT_DEG, D):
        x = NcPoly.letter(g)
        for m in (sig, dag, tau):
            if m(m(x)) != x:
                run.fail(f"{m.name} squared moves {g}", m(m(x)) - x, m(m(x)) - x)
        if sig(dag(x)) != tau(x) or dag(sig(x)) != tau(x):
            run.fail(f"tau is not sigma after dagger on {g}", sig(dag(x)) - tau(x), sig(dag(x)) - tau(x))


def _alt_bdelta() -> NcPoly:
    return b_delta_element(1, alphabet=Alphabet.ALT)


def check_central_G1(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    c = NcPoly.letter(Gt(1)) + _alt_bdelta().scale(Q)
    for g in generators(Alphabet.ALT, DegreeScheme.ALT_DEG, D - 2):
        run.zero(tq, f"[Gt1 + q B_delta, {g}]", commutator(c, g))


def check_gwcom_wind(run: _Run, D: int, H: int):
    tq = run.use(quotient(ALT, D, H))
    bd = _alt_bdelta()
    w0, w1 = W(0), W(1)
    qm = as_ratfunc(Q - Q ** -1)
    inv = _d2().inverse()
    k = 0
    while 2 * k + 3 <= D:
        g = Gt(k + 1)
        run.zero(tq, f"[Gt{k + 1},W0]_q rewrite, k={k}",
                 q_commutator(g, w0), (w0 * g).scale(qm) - commutator(bd, W(-k)).scale(Q ** 2))
        run.zero(tq, f"[W1,Gt{k + 1}]_q rewrite, k={k}",
                 q_commutator(w1, g), (w1 * g).scale(qm) + commutator(bd, W(k + 1)))
        k += 1
    n = 1
    while 2 * n + 1 <= D:
        g = Gt(n)
        run.zero(tq, f"W[-{n}] recursion",
                 NcPoly.letter(W(-n)), W(n) - (w0 * g).scale(qm * inv) + commutator(bd, W(1 - n)).scale(Q ** 2 * inv))
        run.zero(tq, f"W[{n + 1}] recursion",
                 NcPoly.letter(W(n + 1)), W(1 - n) - (w1 * g).scale(qm * inv) - commutator(bd, W(n)).scale(inv))
        n += 1


def _b_fac():
    return Q / ((Q - Q ** -1) * (Q ** 2 - Q ** -2))


def check_nnot(run: _Run, D: int, H: int):
    tq = run.use(quotient(OQ, D, H))
    A = Alphabet.OQ
    bd = b_delta_element(1, alphabet=A)
    fac = _b_fac()
    deg = lambda x: degree(x, tq.scheme)  # noqa: E731
    for n in range(-D, D + 1):
        for kind, sign in (("a0", 1), ("a1", -1)):
            up, mid, down = (b_element(kind, m, A) for m in (n + 1, n, n - 1))
            if max(deg(up), deg(down), deg(mid) + 2) > D:
                continue
            # alpha0: step up minus step down; alpha1: the reverse
            rhs = (up - down).scale(as_ratfunc(sign))
            run.zero(tq, f"{kind} step, n={n}", commutator(bd, mid).scale(fac), rhs)


def check_wwalt(run: _Run, D: int, H: int):
    ess = run.use(quotient(PresentationId.ESS_COMPACT, D, H))
    ess_s = run.use(quotient(PresentationId.ESS_COMPACT_SIGMA, D, H))
    to_sigma = morphism("sigma_ess")
    n = 0
    while 2 * n + 1 <= D:
        for v in W_VARIANTS:
            m = w_target(n, v)
            cf = w_closed_form(n, v)
            if v.startswith("sigma"):
                # the swap sends W[j] to W[1-j]
                run.zero(ess_s, f"{v}, n={n} gives W[{m}]", cf, to_sigma(essential_W(1 - m)))
            else:
                run.zero(ess, f"{v}, n={n} gives W[{m}]", cf, essential_W(m))
        n += 1


def _root_vectors(D: int, A: Alphabet) -> List[Tuple[int, NcPoly]]:
    """``(degree, element)`` for the root vectors of degree ``<= D``, in a fixed order."""
    out = []
    for n in range(D):
        if 2 * n + 1 <= D:
            out.append((2 * n + 1, b_element("a0", n, A)))
    for n in range(1, D):
        if 2 * n <= D:
            out.append((2 * n, b_delta_element(n, alphabet=A)))
    for n in range(D):
        if 2 * n + 1 <= D:
            out.append((2 * n + 1, b_element("a1", n, A)))
    return out


def check_damiani_independence(run: _Run, D: int, H: int):
    tq = run.use(quotient(OQ, D, H))
    A = Alphabet.OQ
    roots = _root_vectors(D, A)
    groups: List[List[NcPoly]] = [[] for _ in range(D + 1)]

    def extend(start, deg, acc):
        groups[deg].append(acc)
        for i in range(start, len(roots)):
            d, r = roots[i]
            if deg + d <= D:
                extend(i, deg + d, acc * r)

    extend(0, 0, NcPoly.one(A))
    counts, total = [], 0
    for g in groups:
        total += len(g)
        counts.append(total)
    run.notes["monomials"] = counts
    _ranks_match(run, "ordered root-vector monomials", tq, groups, counts)
    _dims_equal(run, "monomial count", counts, "OQ_DG", tq.dims(), tq)


def check_sigma_variants(run: _Run, D: int, H: int):
    alt = run.use(quotient(ALT, D, H))
    sig = run.use(quotient(PresentationId.ESS_COMPACT_SIGMA, D, H))
    nat = morphism("natural_sigma")
    for rel in instantiate_labeled(PresentationId.ESS_COMPACT_SIGMA, D):
        run.zero(alt, f"image of swapped compact relation {rel.name}", nat(rel.poly))
    run.notes["dims"] = sig.dims()
    _dims_equal(run, "ESS_COMPACT_SIGMA", sig.dims(), "ALT_FULL", alt.dims(), sig)


# name -> (function, presentations, default D, mutable)
CHECKS: Dict[str, Tuple[Callable, str, int, bool]] = {
    "check_pbw_dims": (check_pbw_dims, "ALT_FULL", 8, False),
    "check_newrels1": (check_newrels1, "ALT_FULL", 8, True),
    "check_qdg_in_O": (check_qdg_in_O, "ALT_FULL", 8, True),
    "check_alt_expressions": (check_alt_expressions, "ALT_FULL", 8, True),
    "check_newrels": (check_newrels, "ALT_FULL", 8, True),
    "check_natural_welldef": (check_natural_welldef, "ESS_COMPACT->ALT_FULL", 8, True),
    "check_dims_match": (check_dims_match, "ESS_COMPACT,ALT_FULL", 8, False),
    "check_mingen": (check_mingen, "ALT_REDUCED,ALT_FULL", 8, True),
    "check_factor_recursion": (check_factor_recursion, "ALT_FULL,ESS_COMPACT", 8, False),
    "check_sorted_spanning": (check_sorted_spanning, "ESS_COMPACT", 8, False),
    "check_tensor_dim": (check_tensor_dim, "ALT_FULL,OQ_DG,POLY_Z", 8, False),
    "check_morphisms": (check_morphisms, "ALT_FULL,OQ_DG", 8, True),
    "check_central_G1": (check_central_G1, "ALT_FULL", 8, True),
    "check_gwcom_wind": (check_gwcom_wind, "ALT_FULL", 8, True),
    "check_nnot": (check_nnot, "OQ_DG", 6, True),
    "check_wwalt": (check_wwalt, "ESS_COMPACT,ESS_COMPACT_SIGMA", 8, True),
    "check_damiani_independence": (check_damiani_independence, "OQ_DG", 6, False),
    "check_sigma_variants": (check_sigma_variants, "ESS_COMPACT_SIGMA->ALT_FULL", 8, True),
}

MUTABLE_CHECKS = [name for name, (_, _, _, m) in CHECKS.items() if m]


def run_check(name: str, D: Optional[int] = None, H: int = 0, *, mutate: bool = False) -> CheckReport:
    try:
        fn, pres, default_D, mutable = CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}") from None
    if mutate and not mutable:
        raise ValueError(f"{name} compares dimensions and has no identity to perturb")
    D = default_D if D is None else D
    if D < 0:
        raise ValueError("D must be >= 0")
    run = _Run(mutate)
    run.H = H
    t0 = time.perf_counter()
    status = PASS
    try:
        fn(run, D, H)
        if run.witnesses:
            status = FAIL
    except ResourceLimitExceeded as exc:
        status = SKIPPED
        run.notes["progress"] = exc.progress
    millis = int(round((time.perf_counter() - t0) * 1000))
    run.notes["instances"] = run.count
    rep = CheckReport(name, pres, D, run.H, status, run.witnesses, millis, run.notes)
    log.info("%s D=%d: %s (%d ms)", name, D, status, millis)
    return rep


def run_suite(names: Optional[Iterable[str]] = None, D: Optional[int] = None, H: int = 0,
              threads: int = 1) -> List[CheckReport]:
    """Run checks in the given order (all of them when ``names`` is None).

    ``D`` overrides every check's default bound.  With ``threads > 1`` checks
    run concurrently and share the build cache; the report order is unchanged.
    """
    names = list(CHECKS) if names is None else list(names)
    for n in names:
        if n not in CHECKS:
            raise ValueError(f"unknown check {n!r}; choose from {', '.join(CHECKS)}")
    if threads <= 1 or len(names) <= 1:
        return [run_check(n, D, H) for n in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: run_check(n, D, H), names))
