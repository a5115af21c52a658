"""Linear and formal automorphisms of S(W) and their pullback on cochains.

A linear automorphism is the block matrix (q; r, s, t, u):

    w1 -> q w1,   w2 -> r w2 + s w3,   w3 -> t w2 + u w3,

invertible iff q (ru - st) != 0.  It acts on cochains by
lambda*(phi) = lambda^{-1} o phi o lambda.  Formal automorphisms are
lambda * prod exp(alpha_k) with even alpha_k of weight >= 2, acting through
exp(-ad alpha).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .cochains import (DEFAULT_DEPTH, Cochain, Coderivation, ParityError, as_series,
                       basis_keys, bracket, key_weight)
from .graded_space import EVEN, enumerate_monomials, multiindex_factorial
from .scalars import normalize, render_scalar


class SingularAutomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class LinearAutomorphism:
    q: object = Fraction(1)
    r: object = Fraction(1)
    s: object = Fraction(0)
    t: object = Fraction(0)
    u: object = Fraction(1)

    def __post_init__(self):
        for name in "qrstu":
            object.__setattr__(self, name, normalize(getattr(self, name)))
        if not self.q or not self.delta:
            raise SingularAutomorphismError("need q(ru - st) != 0")

    @property
    def delta(self):
        return self.r * self.u - self.s * self.t

    def image(self, j: int) -> dict:
        """lambda(w_j) as {generator: coefficient}."""
        if j == 1:
            return {1: self.q}
        if j == 2:
            return {2: self.r, 3: self.s}
        return {2: self.t, 3: self.u}

    def compose(self, other: "LinearAutomorphism") -> "LinearAutomorphism":
        """self o other (apply other first)."""
        a, b = self, other
        return LinearAutomorphism(a.q * b.q,
                                  a.r * b.r + a.t * b.s, a.s * b.r + a.u * b.s,
                                  a.r * b.t + a.t * b.u, a.s * b.t + a.u * b.u)

    __mul__ = compose

    def render(self) -> str:
        return "lin({}; {},{},{},{})".format(*(render_scalar(x) for x in
                                              (self.q, self.r, self.s, self.t, self.u)))


IDENTITY = LinearAutomorphism()


def invert_linear(lam: LinearAutomorphism) -> LinearAutomorphism:
    D = lam.delta
    return LinearAutomorphism(1 / lam.q, lam.u / D, -lam.s / D, -lam.t / D, lam.r / D)


def apply_linear_to_monomial(lam: LinearAutomorphism, m) -> dict:
    """lambda(w1^z w2^x w3^y) expanded in the monomial basis."""
    z, x, y = m
    out: dict = {}
    qz = lam.q ** z
    for i in range(x + 1):
        a = comb(x, i) * lam.r ** i * lam.s ** (x - i)
        if not a:
            continue
        for j in range(y + 1):
            b = comb(y, j) * lam.t ** j * lam.u ** (y - j)
            if not b:
                continue
            key = (z, i + j, x + y - i - j)
            v = out.get(key, 0) + qz * a * b
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def pullback_linear(lam: LinearAutomorphism, f):
    """lambda^{-1} o f o lambda; componentwise on series."""
    if isinstance(f, Coderivation):
        return Coderivation({w: pullback_linear(lam, c) for w, c in f.components.items()}, f.depth)
    if not f:
        return f
    inv = invert_linear(lam)
    n = f.weight
    even, odd = enumerate_monomials(n)
    out: dict = {}
    for J in even + odd:
        val = {}
        for K, a in apply_linear_to_monomial(lam, J).items():
            kfact = None
            for j in (1, 2, 3):
                c = f.terms.get((*K, j))
                if not c:
                    continue
                if kfact is None:
                    kfact = multiindex_factorial(K)
                for g, b in inv.image(j).items():
                    if b:
                        val[g] = val.get(g, 0) + a * c * kfact * b
        jf = multiindex_factorial(J)
        for g, v in val.items():
            if v:
                out[(*J, g)] = v / jf
    return Cochain(out)


def closed_form_pullback(lam: LinearAutomorphism, z: int, a: int, b: int, j: int) -> Cochain:
    """Expansion of lambda*(phi^{z,a,b}_j) through the V_i coefficients

        V_i = r^i s^{x-i} t^{a-i} u^{b+i-x} C(x,i) C(a+b-x, a-i),

    which are the coefficients in the unnormalized basis w_J -> delta w_j.
    Here they are converted to the factorial-normalized basis (factor
    I!/J!) and the factor q^z from w1 is included.
    """
    q, r, s, t, u, D = lam.q, lam.r, lam.s, lam.t, lam.u, lam.delta
    n = a + b
    if j == 1:
        out_vec = {1: 1 / q}
    elif j == 2:
        out_vec = {2: u / D, 3: -s / D}
    else:
        out_vec = {2: -t / D, 3: r / D}
    terms: dict = {}
    for x in range(n + 1):
        V = Fraction(0)
        for i in range(max(0, x - b), min(a, x) + 1):
            V += r ** i * s ** (x - i) * t ** (a - i) * u ** (b + i - x) * comb(x, i) * comb(n - x, a - i)
        if not V:
            continue
        scale = Fraction(factorial(a) * factorial(b), factorial(x) * factorial(n - x)) * q ** z
        for g, c in out_vec.items():
            v = terms.get((z, x, n - x, g), 0) + V * scale * c
            terms[(z, x, n - x, g)] = v
    return Cochain(terms)


# -- formal automorphisms -----------------------------------------------------------

def exp_ad(alpha, x, depth: int | None = None) -> Coderivation:
    """exp(-ad alpha)(x) = sum_i (-ad alpha)^i (x) / i!, truncated at depth."""
    alpha = as_series(alpha, depth)
    depth = depth if depth is not None else min(alpha.depth, as_series(x).depth)
    if alpha.parity not in (None, EVEN):
        raise ParityError("exp_ad needs an even generator")
    if alpha and alpha.order < 2:
        raise ValueError("formal generators must have weight >= 2")
    term = as_series(x, depth)
    total = term
    i = 0
    while term:
        i += 1
        term = bracket(alpha, term, depth) * Fraction(-1, i)
        total = total + term
    return total


@dataclass
class FormalAutomorphism:
    """g = lambda * exp(alpha_1) * exp(alpha_2) * ..., factors stored in order.

    Each factor is an even series whose components have weight >= 2.
    """

    linear: LinearAutomorphism = IDENTITY
    factors: list = field(default_factory=list)
    depth: int = DEFAULT_DEPTH

    def __post_init__(self):
        for f in self.factors:
            if f and as_series(f).parity != EVEN:
                raise ParityError("exponential factors must be even")

    @property
    def generators(self) -> dict:
        """weight -> alpha_k, available when every factor is homogeneous."""
        out = {}
        for f in self.factors:
            f = as_series(f)
            if len(f.components) == 1:
                out[f.order] = f.leading()
        return out

    def then(self, alpha) -> "FormalAutomorphism":
        return FormalAutomorphism(self.linear, self.factors + [alpha], self.depth)

    def render(self) -> str:
        parts = [self.linear.render()] + [f"exp({as_series(f).render()})" for f in self.factors]
        return "*".join(parts)


def pullback_formal(g: FormalAutomorphism, d, depth: int | None = None) -> Coderivation:
    """g*(d): lambda* first, then exp(-ad alpha) for each factor in stored order."""
    depth = depth if depth is not None else g.depth
    out = pullback_linear(g.linear, as_series(d, depth))
    for alpha in g.factors:
        out = exp_ad(alpha, out, depth)
    return out
