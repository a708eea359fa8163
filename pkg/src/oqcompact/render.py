"""Text rendering in the expression grammar understood by :mod:`oqcompact.parse`."""

from __future__ import annotations

from .ring import RationalFunction


def render_coeff(c: RationalFunction) -> str:
    return str(c)


def _coeff_prefix(c: RationalFunction) -> tuple[str, str]:
    """Split a coefficient into a sign and a multiplicative prefix for a word."""
    if c.is_one():
        return "+", ""
    if (-c).is_one():
        return "-", ""
    s = str(c)
    neg = False
    shift, num, den = c.parts()
    if len(num) == 1 and next(iter(num.values())) < 0:
        neg = True
        s = str(-c)
    if c.is_laurent() and len(num) == 1:
        return ("-" if neg else "+"), s + "*"
    if not c.is_laurent() and len(num) == 1:
        return ("-" if neg else "+"), s + "*"
    return "+", f"({s})*"


def render_word(w) -> str:
    return "*".join(str(g) for g in w)


def render_poly(p, scheme=None) -> str:
    """Deterministic rendering, largest word first."""
    if not p.terms:
        return "0"
    out = []
    for i, (w, c) in enumerate(p.sorted_terms(scheme)):
        if not w:
            body = str(c)
            sign = "+"
            if not c.is_laurent() or len(c.parts()[1]) > 1:
                body = f"({body})"
            elif body.startswith("-"):
                sign, body = "-", body[1:]
        else:
            sign, prefix = _coeff_prefix(c)
            body = prefix + render_word(w)
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
