"""Exact arithmetic on numbers of the form  sum_i  q_i * sqrt(r_i),  q_i, r_i rational.

The ladder-operator bracket identities cancel symbolically: every product of
band entries appearing in a tridiagonal commutator pairs square roots with
equal radicands, so the whole computation stays in this ring and a correct
band case analysis yields residuals that are *exactly* zero, independent of
the ~|K| N^2 entry scale that would swamp a floating-point check.
"""

from __future__ import annotations

import math
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _fold_square(rad: Fraction) -> tuple[Fraction, Fraction]:
    """Write sqrt(rad) = scale * sqrt(core), folding perfect squares into scale."""
    if rad < 0:
        raise ValueError("negative radicand")
    n, d = rad.numerator, rad.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd), _ONE
    return _ONE, rad


class Radical:
    """A finite sum of rational multiples of square roots of rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict = None):
        self.terms = {} if terms is None else terms

    @classmethod
    def rational(cls, q) -> "Radical":
        q = Fraction(q)
        return cls({} if q == 0 else {_ONE: q})

    @classmethod
    def sqrt(cls, rad, coeff=1) -> "Radical":
        """coeff * sqrt(rad)."""
        coeff, rad = Fraction(coeff), Fraction(rad)
        if coeff == 0 or rad == 0:
            return cls()
        scale, core = _fold_square(rad)
        return cls({core: coeff * scale})

    def __add__(self, other: "Radical") -> "Radical":
        terms = dict(self.terms)
        for core, q in other.terms.items():
            acc = terms.get(core, _ZERO) + q
            if acc == 0:
                terms.pop(core, None)
            else:
                terms[core] = acc
        return Radical(terms)

    def __sub__(self, other: "Radical") -> "Radical":
        return self + (-other)

    def __neg__(self) -> "Radical":
        return Radical({core: -q for core, q in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Radical()
            return Radical({core: q * other for core, q in self.terms.items()})
        if not isinstance(other, Radical):
            return NotImplemented
        out: dict = {}
        for c1, q1 in self.terms.items():
            for c2, q2 in other.terms.items():
                scale, core = _fold_square(c1 * c2)
                acc = out.get(core, _ZERO) + q1 * q2 * scale
                if acc == 0:
                    out.pop(core, None)
                else:
                    out[core] = acc
        return Radical(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self) -> float:
        return math.fsum(float(q) * math.sqrt(float(core)) for core, q in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "Radical(0)"
        parts = [f"{q}*sqrt({core})" for core, q in sorted(self.terms.items())]
        return "Radical(" + " + ".join(parts) + ")"


class ComplexRadical:
    """Complex number with exact Radical real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Radical = None, im: Radical = None):
        self.re = re if re is not None else Radical()
        self.im = im if im is not None else Radical()

    @classmethod
    def real_sqrt(cls, rad, coeff=1) -> "ComplexRadical":
        return cls(Radical.sqrt(rad, coeff))

    @classmethod
    def imag_sqrt(cls, rad, coeff=1) -> "ComplexRadical":
        return cls(im=Radical.sqrt(rad, coeff))

    @classmethod
    def rational(cls, re=0, im=0) -> "ComplexRadical":
        return cls(Radical.rational(re), Radical.rational(im))

    def __add__(self, other: "ComplexRadical") -> "ComplexRadical":
        return ComplexRadical(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRadical") -> "ComplexRadical":
        return ComplexRadical(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexRadical":
        return ComplexRadical(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexRadical(self.re * other, self.im * other)
        if not isinstance(other, ComplexRadical):
            return NotImplemented
        return ComplexRadical(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexRadical":
        return ComplexRadical(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        return f"ComplexRadical({self.re!r}, {self.im!r})"


CR_ZERO = ComplexRadical()
