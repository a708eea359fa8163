"""Exact coefficient arithmetic in one variable ``q``.

Two types live here:

* :class:`LaurentPoly` -- Laurent polynomials in ``q`` with rational
  coefficients, stored as ``q**shift * p(q)`` with ``p(0) != 0``.
* :class:`RationalFunction` -- elements of ``Q(q)``, stored as
  ``q**shift * num / den`` with ``den`` monic, ``num(0) != 0 != den(0)`` and
  ``gcd(num, den) == 1``.  Every field element has exactly one such form, so
  equality and hashing are structural.

Polynomial arithmetic is delegated to FLINT (``python-flint``); everything
else (canonical forms, rendering, the Laurent bookkeeping) is done here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Tuple, Union

import flint

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "q_int",
    "rho",
    "Q",
    "ONE",
    "ZERO",
    "as_ratfunc",
]

_QPOLY_ZERO = flint.fmpq_poly([])
_QPOLY_ONE = flint.fmpq_poly([1])

Scalar = Union[int, Fraction, "LaurentPoly", "RationalFunction"]


def _valuation(p) -> int:
    """Index of the lowest nonzero coefficient of a nonzero flint polynomial."""
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("valuation of zero polynomial")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _to_fmpq(c) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _strip(p) -> Tuple[int, "flint.fmpq_poly"]:
    """Split ``p = q**v * p'`` with ``p'(0) != 0``."""
    if p.is_zero():
        return 0, _QPOLY_ZERO
    v = _valuation(p)
    if v:
        p = p.right_shift(v)
    return v, p


def _fmt_coeff(c: Fraction, exp: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if exp == 0:
        body = str(a)
    else:
        mono = "q" if exp == 1 else f"q^{exp}"
        if a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


def _render_terms(terms: Mapping[int, Fraction]) -> str:
    if not terms:
        return "0"
    out = []
    for i, e in enumerate(sorted(terms, reverse=True)):
        out.append(_fmt_coeff(terms[e], e, i == 0))
    return "".join(out)


class LaurentPoly:
    """A Laurent polynomial in ``q`` over the rationals.

    Construct from a mapping ``{exponent: coefficient}``; zero coefficients are
    dropped.  ``LaurentPoly.q()`` is the variable itself.
    """

    __slots__ = ("_shift", "_poly")

    def __init__(self, terms: Mapping[int, object] | None = None):
        terms = {int(e): Fraction(c) for e, c in (terms or {}).items() if c != 0}
        if not terms:
            self._shift, self._poly = 0, _QPOLY_ZERO
            return
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = _to_fmpq(c)
        self._shift = lo
        self._poly = flint.fmpq_poly(coeffs)

    @classmethod
    def _make(cls, shift: int, poly) -> "LaurentPoly":
        v, poly = _strip(poly)
        obj = cls.__new__(cls)
        obj._shift = shift + v if not poly.is_zero() else 0
        obj._poly = poly
        return obj

    @classmethod
    def q(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    # -- structure -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, Fraction]:
        out = {}
        for i, c in enumerate(self._poly.coeffs()):
            if c != 0:
                out[self._shift + i] = _to_fraction(c)
        return out

    @property
    def shift(self) -> int:
        return self._shift

    @property
    def poly(self):
        """The polynomial part ``p`` (a ``flint.fmpq_poly``) of ``q**shift * p``."""
        return self._poly

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __bool__(self) -> bool:
        return not self._poly.is_zero()

    def min_exp(self) -> int:
        return self._shift

    def max_exp(self) -> int:
        return self._shift + self._poly.degree()

    def _aligned(self, other: "LaurentPoly"):
        s = min(self._shift, other._shift)
        a = self._poly.left_shift(self._shift - s) if self._shift > s else self._poly
        b = other._poly.left_shift(other._shift - s) if other._shift > s else other._poly
        return s, a, b

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        s, a, b = self._aligned(other)
        return LaurentPoly._make(s, a + b)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self._shift, -self._poly)

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        return LaurentPoly._make(self._shift + other._shift, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self._poly.degree() != 0:
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            c = self._poly.coeffs()[0]
            return LaurentPoly._make(self._shift * n, flint.fmpq_poly([c ** n]))
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            if isinstance(other, RationalFunction):
                return NotImplemented
            return False
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self):
        return hash(("L", self._shift, tuple(str(c) for c in self._poly.coeffs())))

    def bar(self) -> "LaurentPoly":
        """The image under the substitution ``q -> q**-1``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def __repr__(self):
        return f"LaurentPoly({_render_terms(self.terms)})"

    def __str__(self):
        return _render_terms(self.terms)


def _coerce_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


class RationalFunction:
    """An element of ``Q(q)`` in the canonical form ``q**shift * num / den``."""

    __slots__ = ("_shift", "_num", "_den")

    def __init__(self, num: Scalar = 0, den: Scalar = 1):
        n = as_ratfunc(num) if not isinstance(num, RationalFunction) else num
        if isinstance(den, int) and den == 1:
            self._shift, self._num, self._den = n._shift, n._num, n._den
            return
        r = n / (as_ratfunc(den) if not isinstance(den, RationalFunction) else den)
        self._shift, self._num, self._den = r._shift, r._num, r._den

    @classmethod
    def _raw(cls, shift, num, den) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj._shift, obj._num, obj._den = shift, num, den
        return obj

    @classmethod
    def _canonical(cls, shift: int, num, den) -> "RationalFunction":
        """Canonicalize ``q**shift * num / den`` for flint ``fmpq_poly`` inputs."""
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return cls._raw(0, _QPOLY_ZERO, _QPOLY_ONE)
        vn, num = _strip(num)
        vd, den = _strip(den)
        shift += vn - vd
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls._raw(shift, num, den)

    @classmethod
    def from_laurent(cls, x: LaurentPoly) -> "RationalFunction":
        if x.is_zero():
            return cls._raw(0, _QPOLY_ZERO, _QPOLY_ONE)
        return cls._raw(x.shift, x.poly, _QPOLY_ONE)

    @classmethod
    def q(cls, power: int = 1) -> "RationalFunction":
        return cls._raw(power, _QPOLY_ONE, _QPOLY_ONE)

    @classmethod
    def from_polys(cls, num, den, shift: int = 0) -> "RationalFunction":
        """Build from integer or rational flint polynomials (``fmpz_poly``/``fmpq_poly``)."""
        return cls._canonical(shift, flint.fmpq_poly(num), flint.fmpq_poly(den))

    # -- structure -------------------------------------------------------
    @property
    def shift(self) -> int:
        return self._shift

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    def parts(self) -> Tuple[int, Dict[int, Fraction], Dict[int, Fraction]]:
        """``(shift, num_terms, den_terms)`` with plain Python coefficients."""
        def t(p):
            return {i: _to_fraction(c) for i, c in enumerate(p.coeffs()) if c != 0}
        return self._shift, t(self._num), t(self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self):
        return not self._num.is_zero()

    def is_laurent(self) -> bool:
        return self._den.degree() == 0

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return LaurentPoly._make(self._shift, self._num)

    def is_one(self) -> bool:
        return self._shift == 0 and self._den.degree() == 0 and self._num.is_one()

    def canonicalize(self) -> "RationalFunction":
        return RationalFunction._canonical(self._shift, self._num, self._den)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other._num.is_zero():
            return self
        if self._num.is_zero():
            return other
        s = min(self._shift, other._shift)
        a = self._num.left_shift(self._shift - s) if self._shift > s else self._num
        b = other._num.left_shift(other._shift - s) if other._shift > s else other._num
        if self._den.degree() == 0 and other._den.degree() == 0:
            n = a + b
            if n.is_zero():
                return ZERO
            v, n = _strip(n)
            return RationalFunction._raw(s + v, n, _QPOLY_ONE)
        if self._den == other._den:
            return RationalFunction._canonical(s, a + b, self._den)
        return RationalFunction._canonical(s, a * other._den + b * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(self._shift, -self._num, self._den)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self._num.is_zero() or other._num.is_zero():
            return ZERO
        s = self._shift + other._shift
        if self._den.degree() == 0 and other._den.degree() == 0:
            return RationalFunction._raw(s, self._num * other._num, _QPOLY_ONE)
        return RationalFunction._canonical(s, self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction._canonical(-self._shift, self._den, self._num)

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other._num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if self._num.is_zero():
            return ZERO
        return RationalFunction._canonical(
            self._shift - other._shift, self._num * other._den, self._den * other._num
        )

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return False
        return (
            self._shift == other._shift
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self):
        if self._den.degree() == 0:
            return hash(LaurentPoly._make(self._shift, self._num))
        return hash(("R", self._shift, str(self._num), str(self._den)))

    def bar(self) -> "RationalFunction":
        """The image under ``q -> q**-1``."""
        s, n, d = self.parts()
        num = LaurentPoly({-e: c for e, c in n.items()})
        den = LaurentPoly({-e: c for e, c in d.items()})
        return RationalFunction.q(-s) * as_ratfunc(num) / as_ratfunc(den)

    def __str__(self):
        s, n, d = self.parts()
        num = _render_terms({e + s: c for e, c in n.items()})
        if self._den.degree() == 0:
            return num
        den = _render_terms(d)
        if len(n) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.from_laurent(x)
    if isinstance(x, int):
        if x == 0:
            return ZERO
        return RationalFunction._raw(0, flint.fmpq_poly([x]), _QPOLY_ONE)
    if isinstance(x, Fraction):
        if x == 0:
            return ZERO
        return RationalFunction._raw(0, flint.fmpq_poly([_to_fmpq(x)]), _QPOLY_ONE)
    return NotImplemented


def as_ratfunc(x: Scalar) -> RationalFunction:
    """Coerce an int, Fraction, LaurentPoly or RationalFunction into ``Q(q)``."""
    r = _coerce_rf(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function in q")
    return r


ZERO = RationalFunction._raw(0, _QPOLY_ZERO, _QPOLY_ONE)
ONE = RationalFunction._raw(0, _QPOLY_ONE, _QPOLY_ONE)
Q = RationalFunction.q(1)


def q_int(n: int) -> LaurentPoly:
    """The balanced q-integer ``[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)``."""
    if n < 0:
        raise ValueError("q_int expects n >= 0")
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def rho() -> LaurentPoly:
    """``-(q^2 - q^-2)^2``."""
    d = LaurentPoly({2: 1, -2: -1})
    return -(d * d)
