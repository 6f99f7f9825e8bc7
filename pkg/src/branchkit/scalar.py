"""Exact Gaussian rationals, the coefficient field Q(i) used throughout."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "I", "ONE", "ZERO", "as_gaussian", "power_of_i", "field_inverse"]


class GaussianRational:
    """The number (a + b*i)/d, stored with gcd(a, b, d) = 1 and d > 0.

    Instances are immutable and hashable. ``re`` and ``im`` return reduced
    Fractions. Arithmetic accepts ints, Fractions and other GaussianRationals.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        if a == 0 and b == 0:
            d = 1
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, a, b, d):
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def denominator_lcm(self) -> int:
        return self._d

    # arithmetic

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d = self._d * o._d
        return GaussianRational._raw(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, d)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * field_inverse(o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * field_inverse(self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return field_inverse(self) ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison and hashing

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return render(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational._raw(x, 0, 1)
    if isinstance(x, Rational):
        return GaussianRational._raw(x.numerator, 0, x.denominator)
    return None


def as_gaussian(x) -> GaussianRational:
    """Convert an int, Fraction, GaussianRational or text to a GaussianRational."""
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; pass re and im separately")
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
    return g


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
_I_POWERS = (ONE, I, -ONE, -I)


def power_of_i(k: int) -> GaussianRational:
    """Return i**k, which depends only on k mod 4."""
    return _I_POWERS[k % 4]


def field_inverse(x) -> GaussianRational:
    """Exact inverse in Q(i). Raises ZeroDivisionError on zero."""
    x = as_gaussian(x)
    if x.is_zero():
        raise ZeroDivisionError("GaussianRational division by zero")
    a, b, d = x._a, x._b, x._d
    # 1/((a+bi)/d) = d(a-bi)/(a^2+b^2)
    return GaussianRational._raw(d * a, -d * b, a * a + b * b)


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render(x: GaussianRational) -> str:
    """Render as "a/b + c/d*i", dropping zero parts."""
    re_, im_ = x.re, x.im
    if im_ == 0:
        return _frac_text(re_)
    mag = abs(im_)
    imag = "i" if mag == 1 else f"{_frac_text(mag)}*i"
    if re_ == 0:
        return imag if im_ > 0 else "-" + imag
    return f"{_frac_text(re_)} {'+' if im_ > 0 else '-'} {imag}"


_NUM = r"\d+(?:/\d+)?"
_TOKEN = re.compile(rf"\s*([+-]?)\s*(?:({_NUM})\s*(\*\s*i|i)?|(i))\s*")


def parse(text: str) -> GaussianRational:
    """Inverse of ``str``. Also accepts a unicode minus and forms like "2i"."""
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    re_ = Fraction(0)
    im_ = Fraction(0)
    first = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        sign, num, itail, ionly = m.groups()
        if not sign and not first:
            raise ValueError(f"cannot parse scalar {text!r}")
        val = Fraction(num) if num else Fraction(1)
        if sign == "-":
            val = -val
        if itail or ionly:
            im_ += val
        else:
            re_ += val
        pos = m.end()
        first = False
    return GaussianRational(re_, im_)
