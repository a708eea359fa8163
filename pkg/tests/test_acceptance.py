"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line and then asserts.  The
module also runs as a script: ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import nullcontext

import pytest

from oqcompact import verify
from oqcompact.freealg import Alphabet, DegreeScheme, degree
from oqcompact.presentations import PresentationId
from oqcompact.quotient import certified_build
from oqcompact.ring import ONE, ZERO

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from helpers import random_element, random_ratfunc  # noqa: E402

D_MAX = 8
IDENTITY_SUITE = [
    "check_newrels1", "check_qdg_in_O", "check_alt_expressions", "check_newrels",
    "check_natural_welldef", "check_mingen", "check_factor_recursion", "check_sorted_spanning",
    "check_morphisms", "check_central_G1", "check_gwcom_wind", "check_nnot", "check_wwalt",
    "check_damiani_independence", "check_sigma_variants",
]


def report(capsys, number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    with capsys.disabled() if capsys is not None else nullcontext():
        print("\n" + line, flush=True)
    assert ok, line


# independent oracles: plain integer series arithmetic, no package code


def series_inverse_square(top):
    """Coefficients of prod_{d>=1} (1 - x^d)^-2 up to x^top."""
    coef = [1] + [0] * top
    for d in range(1, top + 1):
        for _ in range(2):
            for i in range(d, top + 1):
                coef[i] += coef[i - d]
    return coef


def partition_numbers(top):
    p = [1] + [0] * top
    for part in range(1, top + 1):
        for i in range(part, top + 1):
            p[i] += p[i - part]
    return p


def cumulative(xs):
    out, acc = [], 0
    for x in xs:
        acc += x
        out.append(acc)
    return out


@pytest.fixture(scope="module")
def alt_full():
    verify.clear_cache()
    t0 = time.perf_counter()
    tq = verify.quotient(PresentationId.ALT_FULL, D_MAX)
    return tq, time.perf_counter() - t0


# -- 1 ----------------------------------------------------------------------


def test_pbw_dimension_table(alt_full, capsys):
    tq, seconds = alt_full
    oracle = cumulative(series_inverse_square(D_MAX))
    dims = tq.dims()
    ok = dims == oracle == [1, 3, 8, 18, 38, 74, 139, 249, 434] and seconds <= 300
    report(capsys, 1, "PBW dimension table of ALT_FULL, d = 0..8", ok,
           f"dims {dims}, build {seconds:.1f} s, limit 300 s")


# -- 2 ----------------------------------------------------------------------


def test_compact_presentation_equivalence(alt_full, capsys):
    tq, _ = alt_full
    ess = verify.quotient(PresentationId.ESS_COMPACT, D_MAX)
    rep = verify.run_check("check_dims_match", D_MAX)
    ok = ess.dims() == tq.dims() and rep.passed
    report(capsys, 2, "ESS_COMPACT dims equal ALT_FULL dims and natural images have full rank", ok,
           f"ESS {ess.dims()}, rank check {rep.status}")


# -- 3 ----------------------------------------------------------------------


def test_tensor_factorization(alt_full, capsys):
    tq, _ = alt_full
    oq = certified_build(PresentationId.OQ_DG, D_MAX)
    od = oq.dims()
    p = partition_numbers(D_MAX)
    predicted = [sum(od[d - 2 * k] * p[k] for k in range(d // 2 + 1)) for d in range(D_MAX + 1)]
    ok = tq.dims() == predicted and od[:6] == [1, 3, 7, 15, 29, 53]
    report(capsys, 3, "ALT_FULL dims factor as O_q dims times partition counts", ok,
           f"OQ {od}, predicted {predicted}")


# -- 4 ----------------------------------------------------------------------


def test_identity_suite_and_mutations(capsys):
    t0 = time.perf_counter()
    reports = verify.run_suite(IDENTITY_SUITE)
    failed = [r.check for r in reports if not r.passed]
    mutated = [verify.run_check(n, mutate=True) for n in IDENTITY_SUITE if n in verify.MUTABLE_CHECKS]
    survived = [r.check for r in mutated if r.status != verify.FAIL or not r.witnesses]
    seconds = time.perf_counter() - t0
    bounds = sorted({(r.check, r.D) for r in reports}, key=lambda t: t[1])
    ok = not failed and not survived and seconds <= 900 and all(d >= 6 for _, d in bounds)
    report(capsys, 4, "identity suite passes at default bounds and every mutation is caught", ok,
           f"{len(reports) - len(failed)}/{len(reports)} pass, {len(mutated) - len(survived)}/{len(mutated)} "
           f"mutations caught, {seconds:.1f} s, limit 900 s"
           + (f", failed {failed}" if failed else "") + (f", survived {survived}" if survived else ""))


# -- 5 ----------------------------------------------------------------------


def test_normal_form_contract(alt_full, capsys):
    tq, _ = alt_full
    rng = random.Random(20240611)
    scheme = DegreeScheme.ALT_DEG
    problems = []
    for i in range(200):
        a = random_element(rng, Alphabet.ALT, scheme, 6)
        b = random_element(rng, Alphabet.ALT, scheme, 6)
        na, nb = tq.normal_form(a), tq.normal_form(b)
        if tq.normal_form(na) != na:
            problems.append((i, "idempotence"))
        s, t = random_ratfunc(rng), random_ratfunc(rng)
        if tq.normal_form(a.scale(s) + b.scale(t)) != na.scale(s) + nb.scale(t):
            problems.append((i, "linearity"))
        # products must stay inside the truncation, so pair with a short right factor
        c = random_element(rng, Alphabet.ALT, scheme, max(0, D_MAX - degree(a, scheme)))
        if tq.normal_form(a * c) != tq.normal_form(na * c):
            problems.append((i, "multiplicativity"))
    report(capsys, 5, "normal form is idempotent, linear and multiplicative on 200 random elements", not problems,
           f"{len(problems)} violations" + (f", first {problems[:3]}" if problems else ""))


# -- 6 ----------------------------------------------------------------------


def test_coefficient_kernel(capsys):
    rng = random.Random(99)
    cases = 10_000
    bad = 0
    for _ in range(cases):
        a, b, c = random_ratfunc(rng), random_ratfunc(rng), random_ratfunc(rng)
        ok = (
            a + b == b + a and a * b == b * a
            and (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            and a * (b + c) == a * b + a * c
            and a + ZERO == a and a * ONE == a and a - a == ZERO
            and (not a or a * a.inverse() == ONE)
            and a.canonicalize().parts() == a.parts()
            and a.canonicalize().canonicalize().parts() == a.parts()
        )
        bad += not ok
    report(capsys, 6, "coefficient field axioms and canonical forms", bad == 0,
           f"{cases - bad}/{cases} random cases")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
