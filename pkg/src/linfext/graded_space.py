"""The space W = <w1 odd; w2, w3 even> and the monomial basis of S(W).

A multi-index is a plain tuple ``(i1, i2, i3)`` with ``i1 in {0, 1}``; the
odd generator squares to zero.  Everything here is pure combinatorics.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import NamedTuple

EVEN, ODD = 0, 1
GENERATOR_PARITY = {1: ODD, 2: EVEN, 3: EVEN}


class MultiIndex(NamedTuple):
    i1: int
    i2: int
    i3: int

    @property
    def weight(self) -> int:
        return self.i1 + self.i2 + self.i3

    @property
    def parity(self) -> int:
        return self.i1 % 2


def multi_index(i1: int, i2: int, i3: int) -> MultiIndex:
    if i1 not in (0, 1) or i2 < 0 or i3 < 0:
        raise ValueError(f"invalid multi-index ({i1},{i2},{i3}): need i1 in {{0,1}}, i2, i3 >= 0")
    return MultiIndex(i1, i2, i3)


def parity_name(p: int) -> str:
    return "odd" if p % 2 else "even"


def enumerate_monomials(n: int):
    """Basis of S^n(W) as (even, odd) lists, ascending in the middle index."""
    if n < 1:
        raise ValueError("weight must be >= 1 (the degree-0 part is excluded)")
    even = [MultiIndex(0, p, n - p) for p in range(n + 1)]
    odd = [MultiIndex(1, q, n - q - 1) for q in range(n)]
    return even, odd


def multiindex_factorial(I) -> int:
    return factorial(I[0]) * factorial(I[1]) * factorial(I[2])


@dataclass(frozen=True)
class SplitTerm:
    inner: MultiIndex
    outer: MultiIndex
    multiplicity: int
    sign: int


def split_monomial(J, n: int) -> list[SplitTerm]:
    """All ways of pulling a sub-monomial of weight n out of w_J.

    Multiplicities count labeled unshuffles.  The inner block is moved to
    the front; w1 already sits first in normal order, so no odd symbol is
    ever crossed by another odd symbol and every sign is +1.
    """
    J = MultiIndex(*J)
    out = []
    if n < 0 or n > J.weight:
        return out
    for k1 in range(min(J.i1, n), -1, -1):
        for k2 in range(min(J.i2, n - k1), -1, -1):
            k3 = n - k1 - k2
            if k3 > J.i3:
                continue
            mult = comb(J.i1, k1) * comb(J.i2, k2) * comb(J.i3, k3)
            out.append(SplitTerm(MultiIndex(k1, k2, k3),
                                 MultiIndex(J.i1 - k1, J.i2 - k2, J.i3 - k3), mult, 1))
    return out


def monomial_text(I) -> str:
    parts = []
    for g, e in zip((1, 2, 3), I):
        if e == 1:
            parts.append(f"w{g}")
        elif e > 1:
            parts.append(f"w{g}^{e}")
    return " ".join(parts) if parts else "1"
