"""Coboundary operator D = [., d], graded and filtered cohomology.

Filtered problems are solved with one echelon basis per (d, parity, source
range, truncation): the vectors D(b) for basis cochains b, with pivots at
their lowest-weight coordinates.  Rows whose pivot lies in weight w carry,
in their weight-w parts, a basis of the leading terms of coboundaries in
that weight.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cochains import (Certified, Cochain, Coderivation, as_series, basis_keys, bracket,
                       key_from_position, key_parity, key_weight, order_position)
from .graded_space import EVEN, ODD
from .linalg import Echelon


class MixedDegreeError(ValueError):
    pass


class DepthError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


def to_vector(x) -> dict:
    terms = x.terms if isinstance(x, Cochain) else as_series(x).terms()
    return {order_position(k): c for k, c in terms.items()}


def from_vector(v: dict, depth: int | None = None, homogeneous: bool = False):
    terms = {key_from_position(p): c for p, c in v.items()}
    if homogeneous:
        return Cochain(terms, _clean=True)
    return Coderivation.from_terms(terms, depth if depth is not None else max((p[0] for p in v), default=1))


def coboundary(d, x, depth: int | None = None):
    """D(x) = [x, d]; homogeneous in, homogeneous out when d is pure-degree."""
    if isinstance(x, Cochain) and isinstance(d, Cochain):
        return bracket(x, d)
    d = as_series(d, depth)
    return bracket(as_series(x, d.depth), d, depth if depth is not None else d.depth)


def _dkey(d: Coderivation):
    return tuple(sorted(d.terms().items(), key=lambda kc: order_position(kc[0])))


_ECHELON_CACHE: dict = {}


def source_echelon(d: Coderivation, target_parity: int, truncation: int,
                   min_source_weight: int = 1, max_source_weight: int | None = None) -> Echelon:
    """Echelon basis of span{D(b)} truncated at ``truncation``.

    Sources are basis cochains b of parity ``target_parity + 1`` with weight
    between the given bounds (the upper bound defaults to the largest weight
    that can still reach ``truncation``).  Labels are basis keys.
    """
    N = d.order
    top = truncation - N + 1
    if max_source_weight is not None:
        top = min(top, max_source_weight)
    key = (_dkey(d), target_parity, truncation, min_source_weight, top)
    cached = _ECHELON_CACHE.get(key)
    if cached is not None:
        return cached
    src_parity = (target_parity + 1) % 2
    comps = [(w, c.terms) for w, c in d.components.items()]
    e = Echelon(track=True)
    for w in range(min_source_weight, top + 1):
        for b in basis_keys(w, src_parity):
            vec = {}
            bt = {b: Fraction(1)}
            for wd, dt in comps:
                if w + wd - 1 > truncation:
                    break
                t = bracket(Cochain(bt, _clean=True), Cochain(dt, _clean=True))
                for k, c in t.terms.items():
                    vec[order_position(k)] = c
            e.add(vec, b)
    if len(_ECHELON_CACHE) > 256:
        _ECHELON_CACHE.clear()
    _ECHELON_CACHE[key] = e
    return e


def _monic(x):
    """Scale so the first term (in position order) has coefficient 1."""
    items = x.items()
    return x / items[0][1] if items else x


def _combo_series(combo: dict, depth: int) -> Coderivation:
    return Coderivation.from_terms({k: c for k, c in combo.items() if c}, depth)


# -- reports ---------------------------------------------------------------------

@dataclass
class CohomologyReport:
    weight: int
    even_dim: int
    odd_dim: int
    representatives: list
    coboundary_basis: list = field(default_factory=list)
    certified_to: int | None = None

    @property
    def dims(self) -> tuple[int, int]:
        return self.even_dim, self.odd_dim

    def as_dict(self) -> dict:
        return {"weight": self.weight, "even_dim": self.even_dim, "odd_dim": self.odd_dim,
                "representatives": [r.render() for r in self.representatives],
                "certified_to": self.certified_to}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def render(self) -> str:
        lines = [f"H^{self.weight}: dims {self.even_dim}|{self.odd_dim}"
                 + (f" (certified to weight {self.certified_to})" if self.certified_to else "")]
        lines += [f"  {r.render()}" for r in self.representatives]
        return "\n".join(lines)


@dataclass
class LeadingSolve:
    target: Cochain
    preimage: Coderivation
    achieved: bool
    depth: int


@dataclass
class ExtensionResult:
    extended: Coderivation | None
    obstruction_weight: int | None
    obstruction: Cochain | None
    depth: int

    @property
    def extends(self) -> bool:
        return self.obstruction is None


# -- graded cohomology --------------------------------------------------------------

def pure_degree(d) -> Cochain:
    d = as_series(d)
    if len(d.components) != 1:
        raise MixedDegreeError("d is not concentrated in one weight; use filtered_cohomology")
    return d.leading()


def coboundary_matrix(d, n: int):
    """Columns D(b) for the weight-n basis, as (sources, targets, rows of entries)."""
    dN = pure_degree(d)
    N = dN.weight
    sources = basis_keys(n)
    targets = basis_keys(n + N - 1)
    col = {}
    for b in sources:
        col[b] = bracket(Cochain({b: Fraction(1)}, _clean=True), dN).terms
    matrix = [[col[b].get(t, Fraction(0)) for b in sources] for t in targets]
    return sources, targets, matrix


def _homogeneous_echelon(dN: Cochain, n: int, parity: int, track: bool):
    e = Echelon(track=track)
    for b in basis_keys(n, parity):
        e.add(to_vector(bracket(Cochain({b: Fraction(1)}, _clean=True), dN)), b)
    return e


def graded_cohomology(d, n: int, check: bool = True) -> CohomologyReport:
    dN = pure_degree(d)
    N = dN.weight
    dims = {}
    reps: list = []
    cobs: list = []
    for parity in (EVEN, ODD):
        ker = _homogeneous_echelon(dN, n, parity, track=True).kernel
        image = Echelon()
        if n - N + 1 >= 1:
            for v in [to_vector(bracket(Cochain({b: Fraction(1)}, _clean=True), dN))
                      for b in basis_keys(n - N + 1, 1 - parity)]:
                image.add(v)
        cobs += [from_vector(r, homogeneous=True) for r, _ in (image.rows[p] for p in image.pivots)]
        chosen = Echelon()
        count = 0
        for kv in ker:
            nf, _ = image.reduce(to_vector(Cochain(kv, _clean=True)))
            if chosen.add(nf) is not None:
                reps.append(_monic(from_vector(nf, homogeneous=True)))
                count += 1
        dims[parity] = count
    report = CohomologyReport(n, dims[EVEN], dims[ODD], reps, cobs, None)
    if check:
        for r in reps:
            assert not bracket(r, dN), "representative is not a cocycle"
    return report


# -- filtered solvers ---------------------------------------------------------------

def is_cocycle(d, f, depth: int | None = None) -> Certified:
    d = as_series(d, depth)
    if not f:
        return Certified(True, d.depth)
    return Certified(not coboundary(d, f, d.depth), d.depth)


def _weight_limit(w: int):
    return (w, float("inf"))


def is_leading_coboundary(d, target: Cochain, depth: int | None = None,
                          min_source_weight: int = 1) -> LeadingSolve:
    d = as_series(d, depth)
    depth = d.depth if depth is None else depth
    w = target.weight
    if w is None:
        return LeadingSolve(target, Coderivation({}, depth), True, depth)
    if depth < w:
        raise DepthError(f"depth {depth} is below the target weight {w}")
    e = source_echelon(d, target.parity, w, min_source_weight)
    rem, combo = e.reduce(to_vector(target), limit=_weight_limit(w))
    achieved = not any(p[0] == w for p in rem)
    alpha = _combo_series(combo, depth) if achieved else Coderivation({}, depth)
    return LeadingSolve(target, alpha, achieved, depth)


def reduce_mod_leading_coboundaries(d, f: Cochain, depth: int | None = None,
                                    min_source_weight: int = 1) -> Cochain:
    """Canonical representative of f modulo weight-|f| leading terms of coboundaries."""
    d = as_series(d, depth)
    if not f:
        return f
    w = f.weight
    e = source_echelon(d, f.parity, w, min_source_weight)
    rem, _ = e.reduce(to_vector(f), limit=_weight_limit(w))
    return from_vector({p: c for p, c in rem.items() if p[0] == w}, homogeneous=True)


def series_normal_form(d, x, depth: int | None = None, min_source_weight: int = 1):
    """Reduce a whole series modulo span{D(b)}; returns (normal form, preimage)."""
    d = as_series(d, depth)
    depth = d.depth if depth is None else depth
    x = as_series(x, depth)
    if not x:
        return x, Coderivation({}, depth)
    e = source_echelon(d, x.parity, depth, min_source_weight)
    rem, combo = e.reduce(to_vector(x))
    return from_vector(rem, depth), _combo_series(combo, depth)


def extend_cocycle(d, f: Cochain, depth: int | None = None) -> ExtensionResult:
    d = as_series(d, depth)
    depth = d.depth if depth is None else depth
    dN = d.leading()
    if bracket(f, dN):
        raise NotACocycleError("f is not a cocycle of the leading-term operator")
    n = f.weight
    Df = coboundary(d, f, depth)
    if not Df:
        return ExtensionResult(as_series(f, depth), None, None, depth)
    e = source_echelon(d, Df.parity, depth, n + 1)
    rem, combo = e.reduce(to_vector(Df))
    if not rem:
        return ExtensionResult(as_series(f, depth) - _combo_series(combo, depth), None, None, depth)
    low = min(p[0] for p in rem)
    obst = from_vector({p: c for p, c in rem.items() if p[0] == low}, homogeneous=True)
    return ExtensionResult(None, low, obst, depth)


def filtered_cohomology(d, n: int, depth: int | None = None) -> CohomologyReport:
    d = as_series(d, depth)
    depth = d.depth if depth is None else depth
    if depth < n:
        raise DepthError(f"depth {depth} is below the weight {n}")
    N = d.order
    T = max(depth, n + N - 1)
    d = d.with_depth(T) if d.depth < T else d
    dims = {}
    reps = []
    cobs = []
    for parity in (EVEN, ODD):
        # leading terms of coboundaries in weight n
        lc = source_echelon(d, parity, n)
        lc_rows = Echelon()
        for p in lc.pivots:
            if p[0] == n:
                part = {q: c for q, c in lc.rows[p][0].items() if q[0] == n}
                lc_rows.add(part)
                cobs.append(from_vector(part, homogeneous=True))
        # leading terms of cocycle series starting in weight n
        high = source_echelon(d, 1 - parity, T, n + 1)
        ker = Echelon(track=True)
        residual = {}
        for y in basis_keys(n, parity):
            rem, combo = high.reduce(to_vector(coboundary(d, Cochain({y: Fraction(1)}, _clean=True), T)))
            residual[y] = combo
            ker.add(rem, y)
        chosen = Echelon()
        count = 0
        for kv in ker.kernel:
            lead = to_vector(Cochain(kv, _clean=True))
            nf, _ = lc_rows.reduce(lead)
            if chosen.add(nf) is None:
                continue
            count += 1
            # extend the kernel combination to a cocycle series
            tail: dict = {}
            for y, a in kv.items():
                for b, c in residual[y].items():
                    tail[b] = tail.get(b, 0) + a * c
            series = as_series(Cochain(kv, _clean=True), T) - _combo_series(tail, T)
            # swap the leading part for its normal form
            fix = is_leading_coboundary(d, Cochain(kv, _clean=True) - from_vector(nf, homogeneous=True), T)
            series = series - coboundary(d, fix.preimage, T)
            reps.append(_monic(series))
        dims[parity] = count
    return CohomologyReport(n, dims[EVEN], dims[ODD], reps, cobs, T)
