"""Polynomials in ``q`` with integer coefficients, plus q-integers,
q-factorials and q-multinomials.

``QPoly`` is immutable; coefficient ``i`` is the coefficient of ``q**i``.
Division is exact-or-raise: :meth:`QPoly.exact_div` raises
:class:`DivisionError` when a remainder would be left over.  ``QFraction`` is
a small ratio type used only inside the q-determinant engine.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from .errors import DivisionError

Number = Union[int, Fraction]


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"QPoly coefficients must be int, got {type(c).__name__}")
        self.coeffs = _trim(coeffs)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> QPoly:
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls([0] * exponent + [coeff])

    @classmethod
    def const(cls, c: int) -> QPoly:
        return cls([c])

    # -- protocol -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                base = "q" if e == 1 else f"q^{e}"
                term = base if mag == 1 else f"{mag}{base}"
            sign = "-" if c < 0 else "+"
            if not out:
                out.append(term if c > 0 else "-" + term)
            else:
                out.append(sign + term)
        return "".join(out)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, q: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def at_one(self) -> int:
        return sum(self.coeffs)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> QPoly:
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly([other])
        return NotImplemented

    def __add__(self, other) -> QPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> QPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> QPoly:
        return -self + other

    def __mul__(self, other) -> QPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QPoly:
        if k < 0:
            raise ValueError("negative power")
        result = QPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> QPoly:
        """Multiply by ``q**k``."""
        return QPoly([0] * k + list(self.coeffs)) if self.coeffs else self

    def divmod_exact_lead(self, divisor: QPoly) -> tuple[QPoly, QPoly]:
        """Long division, requiring every quotient coefficient to be integral."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = divisor.coeffs
        lead = d[-1]
        if len(rem) < len(d):
            return QPoly(), self
        quot = [0] * (len(rem) - len(d) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                raise DivisionError(f"non-integral quotient dividing {self} by {divisor}")
            f = c // lead
            quot[i] = f
            for j, dj in enumerate(d):
                rem[i + j] -= f * dj
        return QPoly(quot), QPoly(rem)

    def exact_div(self, divisor: QPoly | int) -> QPoly:
        if isinstance(divisor, int):
            divisor = QPoly([divisor])
        quot, rem = self.divmod_exact_lead(divisor)
        if rem:
            raise DivisionError(f"{self} is not divisible by {divisor}")
        return quot

    def divides(self, other: QPoly) -> bool:
        if not self:
            return not other
        try:
            other.exact_div(self)
        except DivisionError:
            return False
        return True

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> QPoly:
        g = self.content()
        if g == 0:
            return self
        if self.coeffs[-1] < 0:
            g = -g
        return QPoly([c // g for c in self.coeffs])


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Primitive gcd in Z[q] (positive leading coefficient), via pseudo-remainders."""
    a, b = a.primitive(), b.primitive()
    if not a:
        return b
    if not b:
        return a
    while b:
        if a.degree < b.degree:
            a, b = b, a
        # pseudo-remainder: scale a so long division stays integral
        scale = b.coeffs[-1] ** (a.degree - b.degree + 1)
        _, r = (a * scale).divmod_exact_lead(b)
        a, b = b, r.primitive()
    return a.primitive()


# -- q-integers -----------------------------------------------------------


@lru_cache(maxsize=None)
def q_int(n: int) -> QPoly:
    """``[n]_q = 1 + q + ... + q**(n-1)``; ``[0]_q = 0``."""
    if n < 0:
        raise ValueError("q-integer of a negative number")
    return QPoly([1] * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise ValueError("q-factorial of a negative number")
    if n <= 1:
        return QPoly([1])
    return q_factorial(n - 1) * q_int(n)


def q_multinomial(m: int, parts: Iterable[int]) -> QPoly:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != m:
        raise ValueError(f"parts {parts} do not sum to {m}")
    denom = QPoly([1])
    for p in parts:
        denom = denom * q_factorial(p)
    return q_factorial(m).exact_div(denom)


@lru_cache(maxsize=None)
def q_binomial(m: int, k: int) -> QPoly:
    """Gaussian binomial; zero outside ``0 <= k <= m``."""
    if k < 0 or m < 0 or k > m:
        return QPoly()
    return q_multinomial(m, (k, m - k))


def q_hook_quotient(n: int, hooks: Iterable[int]) -> QPoly:
    """``[n]_q! / prod [h]_q`` with an exactness check."""
    denom = QPoly([1])
    for h in hooks:
        denom = denom * q_int(h)
    return q_factorial(n).exact_div(denom)


class QFraction:
    """Ratio of two QPoly values, reduced by polynomial gcd on construction."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly | int, den: QPoly | int = 1, reduce: bool = True):
        num = QPoly._coerce(num)
        den = QPoly._coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num:
            g = poly_gcd(num, den)
            if g.degree > 0 or g.coeffs != (1,):
                num = num.exact_div(g)
                den = den.exact_div(g)
        if den.coeffs[-1] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, QPoly)):
            other = QFraction(other)
        if not isinstance(other, QFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __repr__(self) -> str:
        return f"QFraction({self.num}, {self.den})"

    def __mul__(self, other) -> QFraction:
        if isinstance(other, (int, QPoly)):
            other = QFraction(other)
        return QFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def to_poly(self) -> QPoly:
        """The polynomial value, raising :class:`DivisionError` otherwise."""
        return self.num.exact_div(self.den)

    def at_one(self) -> Fraction:
        return Fraction(self.num.at_one(), self.den.at_one())
