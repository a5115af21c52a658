"""Cochains in L = Hom(S(W), W), the insertion product and the bracket.

A basis cochain phi^I_j sends w_J to I! delta_IJ w_j.  Internally it is the
4-tuple ``(i1, i2, i3, j)``.  Composition of basis cochains has the closed
form

    phi^I_a o phi^K_b = I_b * phi^{I+K-e_b}_a

(zero when I_b = 0 or the odd exponent would exceed one), with every Koszul
sign equal to +1 since W has a single odd generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple

from .graded_space import (EVEN, GENERATOR_PARITY, ODD, MultiIndex, enumerate_monomials,
                           multiindex_factorial)
from .scalars import Scalar, normalize, render_scalar, RationalFunction

DEFAULT_DEPTH = 12


class ParityError(ValueError):
    pass


class BasisCochain(NamedTuple):
    i1: int
    i2: int
    i3: int
    j: int

    @property
    def index(self) -> MultiIndex:
        return MultiIndex(self.i1, self.i2, self.i3)


def key_weight(k) -> int:
    return k[0] + k[1] + k[2]


def key_parity(k) -> int:
    return (k[0] + (k[3] == 1)) % 2


def order_position(k):
    """Sort key used for pivoting and rendering.

    Weight ascending; inside a weight the large-i2 cochains come first, so the
    pure w1 w3^n cochains sit at the end of their weight.
    """
    return (k[0] + k[1] + k[2], -k[1], k[3], k[0])


def key_from_position(pos):
    w, mi2, j, i1 = pos
    return (i1, -mi2, w - i1 + mi2, j)


def basis_keys(n: int, parity: int | None = None) -> list[tuple]:
    """All basis cochains of weight n (optionally of one parity), in position order."""
    even, odd = enumerate_monomials(n)
    keys = [(*I, j) for I in even + odd for j in (1, 2, 3)]
    if parity is not None:
        keys = [k for k in keys if key_parity(k) == parity]
    return sorted(keys, key=order_position)


def _check_key(k):
    i1, i2, i3, j = k
    if i1 not in (0, 1) or i2 < 0 or i3 < 0 or j not in (1, 2, 3):
        raise ValueError(f"invalid basis cochain {k}")
    if i1 + i2 + i3 < 1:
        raise ValueError("basis cochains need weight >= 1")


class Cochain:
    """Weight- and parity-homogeneous finite combination of basis cochains."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, *, _clean=False):
        if _clean:
            self.terms = terms
            return
        clean = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            _check_key(k)
            c = normalize(c)
            if c:
                clean[k] = c
        if clean:
            ks = iter(clean)
            k0 = next(ks)
            w, p = key_weight(k0), key_parity(k0)
            for k in ks:
                if key_weight(k) != w:
                    raise ValueError("cochain terms must share one weight; use Coderivation for sums")
                if key_parity(k) != p:
                    raise ParityError("cochain terms must share one parity")
        self.terms = clean

    @property
    def weight(self) -> int | None:
        return key_weight(next(iter(self.terms))) if self.terms else None

    @property
    def parity(self) -> int | None:
        return key_parity(next(iter(self.terms))) if self.terms else None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Coderivation):
            return other == self
        return isinstance(other, Cochain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, k) -> Scalar:
        return self.terms.get(tuple(k), Fraction(0))

    def __add__(self, other):
        if isinstance(other, Coderivation):
            return Coderivation.from_cochain(self, other.depth) + other
        if not self.terms:
            return other
        if not other.terms:
            return self
        if self.weight != other.weight:
            depth = max(DEFAULT_DEPTH, self.weight, other.weight)
            return Coderivation.from_cochain(self, depth) + Coderivation.from_cochain(other, depth)
        return Cochain(_combine(self.terms, other.terms, 1))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Cochain({k: -c for k, c in self.terms.items()}, _clean=True)

    def __mul__(self, a):
        a = normalize(a)
        if not a:
            return Cochain()
        return Cochain({k: c * a for k, c in self.terms.items()}, _clean=True)

    __rmul__ = __mul__

    def __truediv__(self, a):
        return self * (1 / normalize(a))

    def items(self):
        return sorted(self.terms.items(), key=lambda kc: order_position(kc[0]))

    def render(self) -> str:
        return render_terms(self.items())

    def __repr__(self):
        return f"Cochain({self.render()})"


def _combine(a: dict, b: dict, sign) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _coef_text(c) -> str:
    text = render_scalar(c)
    if isinstance(c, RationalFunction) and not text.startswith("("):
        text = f"({text})" if (" " in text or "/" in text) else text
    return text


def render_terms(items) -> str:
    if not items:
        return "0"
    out = []
    for n, (k, c) in enumerate(items):
        name = "psi" if key_parity(k) == ODD else "phi"
        atom = f"{name}[{k[0]},{k[1]},{k[2]};{k[3]}]"
        neg = c.num.lead() < 0 if isinstance(c, RationalFunction) else c < 0
        mag = -c if neg else c
        body = atom if mag == 1 else f"{_coef_text(mag)}*{atom}"
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def basis_cochain(I, j: int, coeff=1) -> Cochain:
    k = (*tuple(I), j)
    _check_key(k)
    return Cochain({k: coeff})


def phi(i1, i2, i3, j, coeff=1) -> Cochain:
    return basis_cochain((i1, i2, i3), j, coeff)


psi = phi  # same constructor; the name only records that the result is odd


def evaluate(f: Cochain, m) -> list:
    """Value of f on the monomial w_m as coefficients of (w1, w2, w3)."""
    m = tuple(m)
    out = [Fraction(0)] * 3
    fact = None
    for j in (1, 2, 3):
        c = f.terms.get((*m, j))
        if c:
            if fact is None:
                fact = multiindex_factorial(m)
            out[j - 1] = c * fact
    return out


# -- insertion and bracket ---------------------------------------------------

def _insert_terms(fterms: dict, gterms: dict) -> dict:
    out: dict = {}
    for fk, fc in fterms.items():
        for gk, gc in gterms.items():
            b = gk[3]
            e = fk[b - 1]
            if not e:
                continue
            i1 = fk[0] + gk[0] - (b == 1)
            if i1 > 1:
                continue
            key = (i1, fk[1] + gk[1] - (b == 2), fk[2] + gk[2] - (b == 3), fk[3])
            v = out.get(key, 0) + e * fc * gc
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def insertion(f: Cochain, g: Cochain) -> Cochain:
    """f o g: apply g to a sub-block of the input (via the coderivation lift), then f."""
    return Cochain(_insert_terms(f.terms, g.terms), _clean=True)


def _bracket_terms(f: Cochain, g: Cochain) -> dict:
    if not f.terms or not g.terms:
        return {}
    a = _insert_terms(f.terms, g.terms)
    b = _insert_terms(g.terms, f.terms)
    sign = 1 if (f.parity and g.parity) else -1
    return _combine(a, b, sign)


def bracket(f, g, depth: int | None = None):
    """[f, g] = f o g - (-1)^{|f||g|} g o f, for cochains or series."""
    if isinstance(f, Cochain) and isinstance(g, Cochain):
        return Cochain(_bracket_terms(f, g), _clean=True)
    f = as_series(f, depth)
    g = as_series(g, depth)
    d = min(f.depth, g.depth) if depth is None else depth
    comps = {}
    for a, fa in f.components.items():
        for b, gb in g.components.items():
            w = a + b - 1
            if w > d:
                continue
            t = _bracket_terms(fa, gb)
            if t:
                comps[w] = _combine(comps.get(w, {}), t, 1)
    return Coderivation({w: Cochain(t, _clean=True) for w, t in comps.items()}, d)


def as_series(x, depth: int | None = None) -> "Coderivation":
    if isinstance(x, Coderivation):
        return x if depth is None or depth == x.depth else x.with_depth(depth)
    if isinstance(x, Cochain):
        w = x.weight or 1
        return Coderivation.from_cochain(x, max(depth or DEFAULT_DEPTH, w))
    raise TypeError(f"not a cochain or coderivation: {x!r}")


# -- series --------------------------------------------------------------------

class Coderivation:
    """Weight-filtered sum of cochains of one parity, truncated above ``depth``."""

    __slots__ = ("components", "depth")

    def __init__(self, components=None, depth: int = DEFAULT_DEPTH):
        comps = {}
        parity = None
        for w, c in (components or {}).items():
            if not isinstance(c, Cochain):
                raise TypeError("components must be Cochain values")
            if not c or w > depth:
                continue
            if c.weight != w:
                raise ValueError(f"component keyed {w} has weight {c.weight}")
            if parity is None:
                parity = c.parity
            elif c.parity != parity:
                raise ParityError("coderivation components must share one parity")
            comps[w] = c
        self.components = dict(sorted(comps.items()))
        self.depth = depth

    @classmethod
    def from_cochain(cls, c: Cochain, depth: int = DEFAULT_DEPTH):
        return cls({c.weight: c} if c else {}, depth)

    @classmethod
    def from_terms(cls, terms: dict, depth: int = DEFAULT_DEPTH):
        by_w: dict = {}
        for k, v in terms.items():
            by_w.setdefault(key_weight(k), {})[tuple(k)] = v
        return cls({w: Cochain(t) for w, t in by_w.items()}, depth)

    @classmethod
    def sum(cls, parts: Iterable, depth: int = DEFAULT_DEPTH):
        out = cls({}, depth)
        for p in parts:
            out = out + as_series(p, depth)
        return out

    @property
    def parity(self):
        for c in self.components.values():
            return c.parity
        return None

    @property
    def order(self) -> int | None:
        return next(iter(self.components), None)

    def leading(self) -> Cochain:
        return self.components[self.order] if self.components else Cochain()

    def component(self, w: int) -> Cochain:
        return self.components.get(w, Cochain())

    def truncate(self, depth: int) -> "Coderivation":
        return Coderivation({w: c for w, c in self.components.items() if w <= depth}, depth)

    def with_depth(self, depth: int) -> "Coderivation":
        return Coderivation(self.components, depth)

    def terms(self) -> dict:
        out = {}
        for c in self.components.values():
            out.update(c.terms)
        return out

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if isinstance(other, Cochain):
            other = Coderivation.from_cochain(other, self.depth)
        if not isinstance(other, Coderivation):
            return NotImplemented
        return self.terms() == other.terms()

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    def __add__(self, other):
        other = as_series(other, self.depth)
        d = min(self.depth, other.depth)
        comps = {w: c.terms for w, c in self.components.items() if w <= d}
        for w, c in other.components.items():
            if w <= d:
                comps[w] = _combine(comps.get(w, {}), c.terms, 1)
        return Coderivation({w: Cochain(t, _clean=True) for w, t in comps.items()}, d)

    __radd__ = __add__

    def __neg__(self):
        return Coderivation({w: -c for w, c in self.components.items()}, self.depth)

    def __sub__(self, other):
        return self + (-as_series(other, self.depth))

    def __rsub__(self, other):
        return as_series(other, self.depth) - self

    def __mul__(self, a):
        return Coderivation({w: c * a for w, c in self.components.items()}, self.depth)

    __rmul__ = __mul__

    def __truediv__(self, a):
        return self * (1 / normalize(a))

    def items(self):
        out = []
        for c in self.components.values():
            out.extend(c.items())
        return out

    def render(self) -> str:
        return render_terms(self.items())

    def __repr__(self):
        return f"Coderivation({self.render()}; depth={self.depth})"


@dataclass(frozen=True)
class Certified:
    """A boolean answer valid up to the recorded truncation depth."""

    value: bool
    depth: int

    def __bool__(self):
        return self.value


def is_codifferential(d, depth: int | None = None) -> Certified:
    d = as_series(d, depth)
    if any(c.parity == EVEN for c in d.components.values()):
        raise ParityError("a codifferential must be odd; found an even component")
    sq = bracket(d, d, d.depth)
    return Certified(not sq, d.depth)


def cochain_dimension(n: int) -> tuple[int, int]:
    """(even, odd) dimension of L_n."""
    keys = basis_keys(n)
    odd = sum(key_parity(k) for k in keys)
    return len(keys) - odd, odd


# -- brute-force oracle ----------------------------------------------------------

def _koszul_sign(items: list, perm: list) -> int:
    """Sign of reordering ``items`` into ``[items[i] for i in perm]``, odd symbols only."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and GENERATOR_PARITY[items[perm[a]]] and GENERATOR_PARITY[items[perm[b]]]:
                sign = -sign
    return sign


def _normal_form(symbols: list):
    """Sign and exponent triple of a product of generators; None if it vanishes."""
    if symbols.count(1) > 1:
        return None
    perm = sorted(range(len(symbols)), key=lambda i: symbols[i])
    sign = _koszul_sign(symbols, perm)
    return sign, (symbols.count(1), symbols.count(2), symbols.count(3))


def insertion_bruteforce(f: Cochain, g: Cochain) -> Cochain:
    """f o g computed by enumerating labeled unshuffles of expanded monomials."""
    if not f or not g:
        return Cochain()
    m, n = f.weight, g.weight
    total = m + n - 1
    out: dict = {}
    even, odd = enumerate_monomials(total)
    for J in even + odd:
        symbols = [1] * J[0] + [2] * J[1] + [3] * J[2]
        value = [Fraction(0)] * 3
        for inner in combinations(range(total), n):
            outer = [i for i in range(total) if i not in inner]
            sign = _koszul_sign(symbols, list(inner) + outer)
            inner_idx = (sum(symbols[i] == 1 for i in inner), sum(symbols[i] == 2 for i in inner),
                         sum(symbols[i] == 3 for i in inner))
            gv = evaluate(g, inner_idx)
            for b, gc in enumerate(gv, start=1):
                if not gc:
                    continue
                nf = _normal_form([b] + [symbols[i] for i in outer])
                if nf is None:
                    continue
                s2, M = nf
                fv = evaluate(f, M)
                for a in range(3):
                    if fv[a]:
                        value[a] += sign * s2 * gc * fv[a]
        fact = multiindex_factorial(J)
        for a in range(3):
            if value[a]:
                out[(*J, a + 1)] = value[a] / fact
    return Cochain(out)
