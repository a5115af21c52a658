"""Exact scalars: rationals (``fractions.Fraction``) and the rational-function
field Q(c) in a single formal parameter ``c``.

A scalar is either a ``Fraction`` or a ``RationalFunction``.  Rational
functions that turn out constant are demoted back to ``Fraction`` so that
equality is always decided on canonical forms.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

PARAMETER = "c"


class ScalarError(ValueError):
    """Malformed scalar (e.g. zero denominator)."""


class PoleError(ArithmeticError):
    """The denominator vanishes at the substituted parameter value."""


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Univariate polynomial over Q, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(Fraction(a) for a in coeffs)

    @classmethod
    def const(cls, a):
        return cls((a,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self):
        return Poly(-a for a in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self or not other:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    def scale(self, a) -> "Poly":
        return Poly(x * a for x in self.coeffs)

    def divmod(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            a = rem[k]
            if a:
                f = a * inv
                quot[k - dq] = f
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= f * b
        return Poly(quot), Poly(rem[:dq])

    def monic(self) -> "Poly":
        return self.scale(1 / self.lead()) if self else self

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def render(self) -> str:
        if not self:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            mono = "" if k == 0 else (PARAMETER if k == 1 else f"{PARAMETER}^{k}")
            mag = abs(a)
            if not mono:
                body = _render_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_render_fraction(mag)}*{mono}"
            parts.append(("-" if a < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({self.render()})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _render_fraction(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class RationalFunction:
    """Element num/den of Q(c) with gcd(num, den) = 1 and den monic.

    Construct through :func:`make_rational_function`, which also demotes
    constants to ``Fraction``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den

    # arithmetic -------------------------------------------------------
    def _parts(self):
        return self.num, self.den

    def __add__(self, other):
        n2, d2 = _as_parts(other)
        if n2 is None:
            return NotImplemented
        return make_rational_function(self.num * d2 + n2 * self.den, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        n2, d2 = _as_parts(other)
        if n2 is None:
            return NotImplemented
        return make_rational_function(self.num * d2 - n2 * self.den, self.den * d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return RationalFunction(self.num.scale(other), self.den)
        n2, d2 = _as_parts(other)
        if n2 is None:
            return NotImplemented
        return make_rational_function(self.num * n2, self.den * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return RationalFunction(self.num.scale(1 / Fraction(other)), self.den)
        n2, d2 = _as_parts(other)
        if n2 is None:
            return NotImplemented
        if not n2:
            raise ZeroDivisionError("division by zero scalar")
        return make_rational_function(self.num * d2, self.den * n2)

    def __rtruediv__(self, other):
        n2, d2 = _as_parts(other)
        if n2 is None:
            return NotImplemented
        return make_rational_function(n2 * self.den, d2 * self.num)

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out = Fraction(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return False  # canonical forms: a true RationalFunction is never constant

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return True

    def render(self) -> str:
        num = self.num.render()
        if self.den == Poly((1,)):
            return num
        return f"({num})/({self.den.render()})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()})"


Scalar = Union[Fraction, RationalFunction]


def _as_parts(x):
    if isinstance(x, RationalFunction):
        return x.num, x.den
    if isinstance(x, (int, Fraction)):
        return Poly.const(x), Poly((1,))
    return None, None


def make_rational_function(num: Poly, den: Poly) -> Scalar:
    """Canonicalize num/den; returns a Fraction when the value is constant."""
    if not den:
        raise ScalarError("zero denominator")
    if not num:
        return Fraction(0)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.divmod(g)[0], den.divmod(g)[0]
    lc = den.lead()
    num, den = num.scale(1 / lc), den.scale(1 / lc)
    if den.degree == 0 and num.degree == 0:
        return num.coeffs[0]
    return RationalFunction(num, den)


PARAM = RationalFunction(Poly((0, 1)), Poly((1,)))  # the formal parameter c


def normalize(s) -> Scalar:
    """Canonical form of ``s``; idempotent."""
    if isinstance(s, RationalFunction):
        return make_rational_function(s.num, s.den)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    raise ScalarError(f"not a scalar: {s!r}")


def evaluate_parameter(s: Scalar, value) -> Fraction:
    """Substitute ``c = value``; raises PoleError at a root of the denominator."""
    if not isinstance(s, RationalFunction):
        return Fraction(s)
    value = Fraction(value)
    den = s.den(value)
    if not den:
        raise PoleError(f"denominator {s.den.render()} vanishes at c={value}")
    return s.num(value) / den


def scalar_equals(a, b) -> bool:
    d = normalize(a) - normalize(b)
    return not d


def is_constant(s) -> bool:
    return not isinstance(s, RationalFunction)


def render_scalar(s) -> str:
    if isinstance(s, RationalFunction):
        return s.render()
    return _render_fraction(Fraction(s))


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`render_scalar` (accepts any arithmetic in c)."""
    from .expressions import parse_scalar_text

    return parse_scalar_text(text)
