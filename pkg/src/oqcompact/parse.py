"""Expression parser for the command line.

Grammar::

    expr    := ('+'|'-')? term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := atom ('^' int)?
    atom    := int | 'q' | gen | '[' expr ',' expr ']' ('_q' | '_q-1')? | '(' expr ')'
    gen     := ('W'|'G'|'Gt'|'z') '[' int ']'
             | ('B'|'tB') '[' ('a0'|'a1') ',' int ']'
             | ('Bd'|'tBd') '[' int ']'

Division and negative powers are only allowed for scalars.  ``G[0]`` and
``Gt[0]`` stand for the scalar ``-(q - q^-1)(q + q^-1)^2``.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from .freealg import Alphabet, NcPoly, G, Gt, W, commutator, gg0, q_commutator, z
from .ring import Q, as_ratfunc

__all__ = ["ParseError", "parse"]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<qbr>_q(?:\^?-1)?)|(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<sym>[-+*/^\[\](),]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()), text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


_ROOT_KINDS = {"a0": "a0", "a1": "a1", "alpha0": "a0", "alpha1": "a1"}


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = Alphabet(alphabet)
        self.toks = _tokenize(text)
        self.i = 0

    # -- token helpers ---------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, pos=None):
        raise ParseError(msg, self.peek()[2] if pos is None else pos, self.text)

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def at(self, value) -> bool:
        return self.peek()[1] == value

    # -- grammar ---------------------------------------------------------
    def parse(self) -> NcPoly:
        x = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return x

    def expr(self) -> NcPoly:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        x = self.term()
        if sign < 0:
            x = -x
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> NcPoly:
        x = self.factor()
        while self.at("*") or self.at("/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            y = self.factor()
            if op == "*":
                x = x * y
            else:
                c = self._scalar_of(y, pos, "division is only defined by scalars")
                if not c:
                    raise ParseError("division by zero", pos, self.text)
                x = x.scale(c.inverse())
        return x

    def factor(self) -> NcPoly:
        x = self.atom()
        if self.at("^"):
            self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("expected an integer exponent", pos, self.text)
            n = int(val)
            if neg:
                c = self._scalar_of(x, pos, "negative powers are only defined for scalars")
                if not c:
                    raise ParseError("zero to a negative power", pos, self.text)
                return NcPoly.scalar(self.alphabet, c.inverse() ** n)
            x = x ** n
        return x

    def _scalar_of(self, x: NcPoly, pos, msg):
        if any(w for w in x.terms):
            raise ParseError(msg, pos, self.text)
        return x.coeff(())

    def atom(self) -> NcPoly:
        kind, val, pos = self.take()
        if kind == "int":
            return NcPoly.scalar(self.alphabet, int(val))
        if val == "(":
            x = self.expr()
            self.expect(")")
            return x
        if val == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            if self.peek()[0] == "qbr":
                power = 1 if self.take()[1] == "_q" else -1
                return q_commutator(a, b, power)
            return commutator(a, b)
        if kind == "name":
            if val == "q":
                return NcPoly.scalar(self.alphabet, Q)
            return self.generator(val, pos)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)

    def _int_arg(self) -> int:
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected an integer index", pos, self.text)
        return -int(val) if neg else int(val)

    def generator(self, name: str, pos: int) -> NcPoly:
        from . import elements  # local import keeps the parser usable standalone

        A = self.alphabet
        if name not in ("W", "G", "Gt", "z", "B", "tB", "Bd", "tBd"):
            raise ParseError(f"unknown generator {name!r}", pos, self.text)
        self.expect("[")
        ipos = self.peek()[2]
        if name in ("B", "tB"):
            kind_tok = self.take()
            kind = _ROOT_KINDS.get(kind_tok[1])
            if kind is None:
                raise ParseError("root kind must be a0 or a1", kind_tok[2], self.text)
            self.expect(",")
            n = self._int_arg()
            self.expect("]")
            self._need_w(name, pos)
            f = elements.b_element if name == "B" else elements.tilde_b_element
            return f(kind, n, A)
        n = self._int_arg()
        self.expect("]")
        try:
            if name in ("Bd", "tBd"):
                if n < 1:
                    raise ParseError("index out of range (needs n >= 1)", ipos, self.text)
                self._need_w(name, pos)
                f = elements.b_delta_element if name == "Bd" else elements.tilde_b_delta_element
                return f(n, alphabet=A)
            if name == "W":
                if A in (Alphabet.ESS, Alphabet.ESS_SIGMA, Alphabet.OQ) and n not in (0, 1):
                    raise ParseError(f"index out of range: {A.value} only has W[0] and W[1]", ipos, self.text)
                if A is Alphabet.Z:
                    raise ParseError("unknown generator 'W' for the Z alphabet", pos, self.text)
                return NcPoly.letter(W(n, A))
            if name in ("G", "Gt"):
                if n < 0:
                    raise ParseError("index out of range (needs k >= 0)", ipos, self.text)
                if n == 0:
                    return NcPoly.scalar(A, gg0())
                allowed = {"G": (Alphabet.ALT, Alphabet.ESS_SIGMA), "Gt": (Alphabet.ALT, Alphabet.ESS)}[name]
                if A not in allowed:
                    raise ParseError(f"unknown generator {name!r} for the {A.value} alphabet", pos, self.text)
                return NcPoly.letter(G(n, A) if name == "G" else Gt(n, A))
            if name == "z":
                if A is not Alphabet.Z:
                    raise ParseError(f"unknown generator 'z' for the {A.value} alphabet", pos, self.text)
                if n < 1:
                    raise ParseError("index out of range (needs n >= 1)", ipos, self.text)
                return NcPoly.letter(z(n))
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), ipos, self.text) from None
        raise ParseError(f"unknown generator {name!r}", pos, self.text)

    def _need_w(self, name, pos):
        if self.alphabet is Alphabet.Z:
            raise ParseError(f"unknown generator {name!r} for the Z alphabet", pos, self.text)


def parse(text: str, alphabet=Alphabet.ALT) -> NcPoly:
    """Parse ``text`` into a polynomial over ``alphabet``."""
    return _Parser(text, alphabet).parse()


def parse_scalar(text: str):
    """Parse a coefficient expression in ``q`` alone."""
    x = parse(text, Alphabet.ALT)
    if any(w for w in x.terms):
        raise ParseError("expected a scalar", 0, text)
    return as_ratfunc(x.coeff(()))
