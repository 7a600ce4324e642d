"""Gaussian-rational scalars: complex numbers a + b*i with a, b exact rationals.

All coefficient arithmetic in the package runs over this field, so every
polynomial identity is decided exactly (no floating point anywhere except in
the numeric cross-check layer).
"""

from __future__ import annotations

import math
from fractions import Fraction


class GaussianRational:
    """An element of Q(i), stored as exact real and imaginary Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("Gaussian rationals take exact parts, not floats")
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors ------------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot coerce {value!r} to a Gaussian rational")

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        if exponent < 0:
            return GaussianRational(1) / self ** (-exponent)
        out = GaussianRational(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imtxt = "i" if mag == 1 else f"{mag}*i"
        return f"{self.re}{sign}{imtxt}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def sqrt_fraction(q: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def sqrt_gaussian(q: GaussianRational):
    """Exact square root of a Gaussian rational within Q(i), or None.

    Solving (u + v*i)^2 = a + b*i needs u^2 + v^2 = sqrt(a^2 + b^2) rational
    and both u^2 = (a + N)/2, v^2 = (N - a)/2 to be rational squares.
    """
    a, b = q.re, q.im
    n = sqrt_fraction(a * a + b * b)
    if n is None:
        return None
    u2 = (a + n) / 2
    v2 = (n - a) / 2
    u = sqrt_fraction(u2)
    v = sqrt_fraction(v2)
    if u is None or v is None:
        return None
    # fix relative sign so that 2uv == b
    if 2 * u * v != b:
        v = -v
    if 2 * u * v != b:
        return None
    root = GaussianRational(u, v)
    return canonical_sign(root)


def canonical_sign(q: GaussianRational) -> GaussianRational:
    """Pick the representative of {q, -q} whose first nonzero part is positive."""
    if q.re != 0:
        return q if q.re > 0 else -q
    return q if q.im >= 0 else -q
