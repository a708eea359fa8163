"""Command-line front end.

Exit codes: 0 success or pass, 1 a check failed or expressions differ,
2 usage or parse error, 3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from typing import List, Optional

from . import __version__
from .elements import (
    W_VARIANTS,
    b_delta_element,
    essential_G,
    essential_W,
    expected_dims,
    tilde_b_delta_element,
    w_closed_form,
)
from .freealg import Alphabet, degree
from .parse import ParseError, parse
from .presentations import PresentationId, get
from .quotient import DegreeOverflow, ResourceLimitExceeded
from .render import render_poly
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

THREADS_ENV = "OQCOMPACT_THREADS"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _out(text: str):
    sys.stdout.write(text + "\n")


def _presentation(name: str):
    try:
        return get(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_expr(text: str) -> str:
    return sys.stdin.read() if text == "-" else text


def _quotient(pres, D: int, H: int):
    return verify.quotient(pres.id, D, H)


# ---------------------------------------------------------------------------
# commands


def cmd_normalize(args) -> int:
    pres = _presentation(args.presentation)
    x = parse(_read_expr(args.expr), pres.alphabet)
    D = degree(x, pres.scheme) if args.degree is None else args.degree
    tq = _quotient(pres, D, args.headroom)
    nf = tq.normal_form(x)
    if args.format == "json":
        _out(_dump({"presentation": pres.id.value, "D": D, "H": tq.H,
                    "input": render_poly(x), "normal_form": render_poly(nf)}))
    else:
        _out(render_poly(nf))
    return EXIT_OK


def cmd_equal(args) -> int:
    pres = _presentation(args.presentation)
    xs = [parse(_read_expr(e), pres.alphabet) for e in args.exprs]
    D = max(degree(x, pres.scheme) for x in xs) if args.degree is None else args.degree
    tq = _quotient(pres, D, args.headroom)
    diffs = [tq.normal_form(x - xs[0]) for x in xs[1:]]
    same = all(not d.terms for d in diffs)
    if args.format == "json":
        _out(_dump({"presentation": pres.id.value, "D": D, "H": tq.H, "equal": same,
                    "differences": [render_poly(d) for d in diffs]}))
    else:
        _out("equal" if same else "not equal")
        for i, d in enumerate(diffs, start=2):
            if d.terms:
                _out(f"  expr{i} - expr1 = {render_poly(d)}")
    return EXIT_OK if same else EXIT_FAIL


def cmd_dims(args) -> int:
    pres = _presentation(args.presentation)
    D = 8 if args.degree is None else args.degree
    tq = _quotient(pres, D, args.headroom)
    dims = tq.dims()
    expected = expected_dims(pres.scheme, D)
    if args.figures:
        from .plots import dims_figure

        path = dims_figure(args.figures, {pres.id.value: dims}, expected,
                           name=f"dims_{pres.id.value}_D{D}.png", title=f"{pres.id.value} level dimensions")
        print(f"wrote {path}", file=sys.stderr)
    if args.format == "json":
        stats = tq.stats.as_dict()
        if args.no_timings:
            stats["elimination_seconds"] = 0.0
        _out(_dump({"presentation": pres.id.value, "D": D, "H": tq.H, "dims": dims,
                    "pbw": expected, "words": len(tq.words), "stats": stats}))
    else:
        _out(" ".join(str(d) for d in dims))
    return EXIT_OK


_WCLOSED = re.compile(r"^\s*wclosed\[\s*(\w+)\s*,\s*(\d+)\s*\]\s*$")
_INDEXED = re.compile(r"^\s*(W|G|Bd|tBd)\[\s*(-?\d+)\s*\]\s*$")


def cmd_element(args) -> int:
    name = args.name
    m = _WCLOSED.match(name)
    if m:
        if m.group(1) not in W_VARIANTS:
            raise UsageError(f"unknown variant {m.group(1)!r}; choose from {', '.join(W_VARIANTS)}")
        x = w_closed_form(int(m.group(2)), m.group(1))
    else:
        m = _INDEXED.match(name)
        if m and m.group(1) == "W":
            x = essential_W(int(m.group(2)))
        elif m and m.group(1) == "G":
            k = int(m.group(2))
            if k < 0:
                raise UsageError("G index must be >= 0")
            x = parse("G[0]", Alphabet.ESS) if k == 0 else essential_G(k)
        elif m and m.group(1) in ("Bd", "tBd"):
            n = int(m.group(2))
            if n < 1:
                raise UsageError("Bd index must be >= 1")
            f = b_delta_element if m.group(1) == "Bd" else tilde_b_delta_element
            x = f(n, args.formula)
        else:
            x = parse(name, Alphabet.ESS)
    if args.format == "json":
        _out(_dump({"element": name.strip(), "alphabet": x.alphabet.value,
                    "degree": degree(x, get(PresentationId.ESS_COMPACT).scheme), "value": render_poly(x)}))
    else:
        _out(render_poly(x))
    return EXIT_OK


def _check_names(raw: Optional[List[str]]) -> Optional[List[str]]:
    if not raw:
        return None
    names = [n.strip() for chunk in raw for n in chunk.split(",") if n.strip()]
    if names == ["all"]:
        return None
    for n in names:
        if n not in verify.CHECKS:
            raise UsageError(f"unknown check {n!r}; choose from {', '.join(verify.CHECKS)}")
    return names


def cmd_verify(args) -> int:
    names = _check_names(args.checks)
    threads = args.threads if args.threads is not None else int(os.environ.get(THREADS_ENV, "1") or 1)
    if args.mutate:
        names = [n for n in (names or verify.CHECKS) if n in verify.MUTABLE_CHECKS]
        reports = [verify.run_check(n, args.degree, args.headroom, mutate=True) for n in names]
    else:
        reports = verify.run_suite(names, args.degree, args.headroom, threads=max(1, threads))
    if args.format == "json":
        _out(_dump([r.to_json(timings=not args.no_timings) for r in reports]))
    else:
        width = max((len(r.check) for r in reports), default=0)
        for r in reports:
            ms = "" if args.no_timings else f"  {r.millis} ms"
            _out(f"{r.check:<{width}}  {r.status:<16}  D={r.D} H={r.H}{ms}")
            for w in r.witnesses[: args.max_witnesses]:
                _out(f"    witness: {w.description}")
                if w.normal_form is not None:
                    _out(f"      normal form: {render_poly(w.normal_form)}")
        passed = sum(r.passed for r in reports)
        _out(f"{passed}/{len(reports)} checks passed")
    if args.figures:
        _verify_figures(args.figures, reports)
    if any(r.status == verify.SKIPPED for r in reports):
        return EXIT_RESOURCE
    if args.mutate:
        return EXIT_OK if all(r.status == verify.FAIL for r in reports) else EXIT_FAIL
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _verify_figures(directory: str, reports):
    from .plots import dims_figure, timing_figure

    paths = [timing_figure(directory, [r.check for r in reports], [r.millis for r in reports],
                           [r.status for r in reports])]
    series = {}
    for r in reports:
        if r.check == "check_pbw_dims" and "dims" in r.notes:
            series["ALT_FULL"] = r.notes["dims"]
        elif r.check == "check_dims_match" and "dims" in r.notes:
            series["ESS_COMPACT"] = r.notes["dims"]
        elif r.check == "check_mingen" and "dims" in r.notes:
            series["ALT_REDUCED"] = r.notes["dims"]
        elif r.check == "check_tensor_dim" and "predicted" in r.notes:
            series["tensor count"] = r.notes["predicted"]
    if series:
        top = min(len(v) for v in series.values())
        series = {k: list(v)[:top] for k, v in series.items()}
        paths.append(dims_figure(directory, series, expected_dims("ALT_DEG", top - 1), name="suite_dims.png",
                                 title="dimension tables from the suite"))
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", default="ALT_FULL",
                        help="one of: " + ", ".join(p.value for p in PresentationId))
    common.add_argument("--degree", type=int, default=None, help="degree bound D")
    common.add_argument("--headroom", type=int, default=0, help="initial headroom H (raised automatically)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads for the suite (default ${THREADS_ENV} or 1)")
    common.add_argument("--max-rows", type=int, default=None, help="abort a build after this many rows")
    common.add_argument("--time-limit", type=float, default=None, help="abort a build after this many seconds")
    common.add_argument("--no-timings", action="store_true", help="zero out timing fields in reports")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="oqcompact", description="Exact normal forms and identity checks "
                                 "for the alternating central extension of the q-Onsager algebra.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of an expression")
    p.add_argument("expr", help="expression, or - to read stdin")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equal", parents=[common], help="test expressions for equality in the quotient")
    p.add_argument("exprs", nargs="+", metavar="expr")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("dims", parents=[common], help="print the level dimensions 0..D")
    p.add_argument("--figures", metavar="DIR", help="also write a PNG of the table to DIR")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("element", parents=[common], help="print a derived element over the essential generators")
    p.add_argument("name", help="W[n], G[k], B[a0,n], B[a1,n], Bd[n], tB[a0,n], tBd[n], wclosed[VARIANT,n]")
    p.add_argument("--formula", choices=("via_alpha1", "via_alpha0"), default="via_alpha1",
                   help="which sum defines Bd[n]")
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("verify", parents=[common], help="run named checks")
    p.add_argument("--checks", action="append", help="comma-separated check names (default: all)")
    p.add_argument("--mutate", action="store_true",
                   help="perturb every identity by a factor q; succeeds when all checks fail")
    p.add_argument("--figures", metavar="DIR", help="write PNG dimension and timing figures to DIR")
    p.add_argument("--max-witnesses", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if (args.degree is not None and args.degree < 0) or args.headroom < 0:
        print("error: --degree and --headroom must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    verify.set_build_limits(args.max_rows, args.time_limit)
    try:
        return args.func(args)
    except (UsageError, ParseError, DegreeOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(_dump(exc.progress), file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
