"""Catalog of representative codifferentials, named cochain families,
extension/obstruction machinery, term elimination, table replication and a
degree-by-degree equivalence search.

Expected values in the replication tables are encoded exactly as displayed
in the source tables (including their typos); the engine recomputes every
row and reports disagreements instead of correcting them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Callable

from .automorphisms import (IDENTITY, FormalAutomorphism, LinearAutomorphism,
                            exp_ad, pullback_formal, pullback_linear)
from .cochains import (DEFAULT_DEPTH, Cochain, Coderivation, as_series, basis_keys,
                       bracket, is_codifferential, key_parity)
from .graded_space import EVEN, ODD
from .homology import (DepthError, Echelon, NotACocycleError, coboundary, extend_cocycle,
                       filtered_cohomology, graded_cohomology, is_leading_coboundary,
                       series_normal_form, to_vector)
from .scalars import PARAM, render_scalar


def term(i1, i2, i3, j, coeff=1) -> Cochain:
    """coeff * phi^{i1,i2,i3}_j, or zero when coeff vanishes (indices may then be negative)."""
    if not coeff:
        return Cochain()
    if min(i1, i2, i3) < 0:
        raise ValueError(f"negative index in ({i1},{i2},{i3};{j}) with nonzero coefficient")
    return Cochain({(i1, i2, i3, j): coeff})


def csum(*parts, depth: int | None = None):
    """Sum of cochains; a single weight stays a Cochain, mixed weights give a series."""
    parts = [p for p in parts if p]
    if not parts:
        return Cochain()
    ws = {p.weight for p in parts if isinstance(p, Cochain)}
    if len(ws) == 1 and all(isinstance(p, Cochain) for p in parts):
        out = Cochain()
        for p in parts:
            out = out + p
        return out
    top = max([depth or 0, DEFAULT_DEPTH] + [p.weight for p in parts if isinstance(p, Cochain)]
              + [max(p.components, default=1) for p in parts if isinstance(p, Coderivation)])
    return Coderivation.sum([as_series(p, top) for p in parts], top)


def _max_weight(x) -> int:
    if isinstance(x, Cochain):
        return x.weight or 1
    return max(x.components, default=1)


def _render(x) -> str:
    if isinstance(x, (Cochain, Coderivation)):
        return x.render()
    if isinstance(x, (Fraction, int)) or hasattr(x, "num"):
        return render_scalar(x)
    return str(x)


# -- named families ------------------------------------------------------------------

def phi_n(n: int) -> Cochain:
    """n phi^{1,0,n-1}_1 + phi^{0,0,n}_3."""
    return csum(term(1, 0, n - 1, 1, n), term(0, 0, n, 3))


def phi_prime(n: int) -> Cochain:
    """phi^{0,n,0}_2 + phi^{0,n-1,1}_3."""
    return csum(term(0, n, 0, 2), term(0, n - 1, 1, 3))


def eta(n: int, p: int, l: int) -> Cochain:
    return csum(term(1, p, n - p - 1, 1, Fraction(n - p - l, l)), term(0, p, n - p, 3, Fraction(1, l)))


def zeta(n: int, p: int) -> Cochain:
    if not 0 <= p <= n - 1:
        raise ValueError("zeta needs 0 <= p <= n-1")
    return csum(term(1, p, n - p - 1, 1, n - p), term(0, p, n - p, 3))


def alpha_k(k: int) -> Cochain:
    return csum(term(1, k + 1, k, 2), term(1, k, k + 1, 3))


def beta_k(k: int) -> Cochain:
    return csum(term(0, k + 1, k, 2), term(0, k, k + 1, 3))


def theta(p: int, v: int, k: int, m: int, a=1, b=1, depth: int = DEFAULT_DEPTH) -> Coderivation:
    """phi^{0,p,v+1}_3 - k phi^{1,p,v}_1 + sum_i (-1)^i (b/a)^i (m-k) phi^{1,p,v+i(m-k)}_1,
    truncated above ``depth``."""
    a, b = Fraction(a), Fraction(b)
    parts = [term(0, p, v + 1, 3), term(1, p, v, 1, -k)]
    i = 1
    while p + v + 1 + i * (m - k) <= depth:
        parts.append(term(1, p, v + i * (m - k), 1, (-1) ** i * (b / a) ** i * (m - k)))
        i += 1
    return as_series(csum(*parts, depth=depth), depth)


def big_theta(p: int, v: int, k: int, m: int, a=1, b=1, depth: int = DEFAULT_DEPTH) -> Coderivation:
    """theta_{p,v} + sum_i theta_{p,v+i(m-k)} (-1)^i (b/a)^i (m-k)/(v+m+1), truncated."""
    a, b = Fraction(a), Fraction(b)
    out = theta(p, v, k, m, a, b, depth)
    i = 1
    while p + v + 1 + i * (m - k) <= depth:
        coef = (-1) ** i * (b / a) ** i * Fraction(m - k, v + m + 1)
        out = out + theta(p, v + i * (m - k), k, m, a, b, depth) * coef
        i += 1
    return out


@dataclass
class NamedFamily:
    name: str
    params: dict
    value: object

    def render(self) -> str:
        return self.value.render()


_FAMILIES: dict[str, Callable] = {
    "phi": phi_n, "phi_prime": phi_prime, "eta": eta, "zeta": zeta,
    "alpha": alpha_k, "beta": beta_k, "theta": theta, "Theta": big_theta,
}


def named_family(name: str, **params) -> NamedFamily:
    try:
        build = _FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {sorted(_FAMILIES)}") from None
    return NamedFamily(name, params, build(**params))


# -- catalog -------------------------------------------------------------------------

D_STAR = term(1, 1, 0, 3)
D_SHARP = csum(term(1, 1, 0, 2), term(1, 1, 0, 3), term(1, 0, 1, 3))
D22 = term(0, 2, 0, 1)


def d_c(c=PARAM) -> Cochain:
    return csum(term(1, 1, 0, 2), term(1, 0, 1, 3, c))


def c_from_rs(r: int, s: int) -> Fraction:
    """The negative c with c/(c-1) = r/s."""
    return Fraction(r, r - s)


def d_kl(k: int, l: int, a=1, b=1):
    return csum(D_STAR, term(1, 0, k, 2, a), term(1, 0, l, 3, b))


@dataclass
class CatalogEntry:
    id: str
    build: Callable
    samples: list
    locus: str
    constraint: str = ""

    @property
    def codifferential(self):
        return self.build(**self.samples[0])

    def instances(self):
        for s in self.samples:
            yield s, self.build(**s)


def catalog() -> list[CatalogEntry]:
    E = CatalogEntry
    return [
        E("deg1_first", lambda: term(1, 0, 0, 2), [{}], "degree-1 first kind"),
        E("deg1_second", lambda: term(0, 1, 0, 1), [{}], "degree-1 second kind"),
        E("d22", lambda: D22, [{}], "degree-2 second kind"),
        E("d211", lambda: term(0, 1, 1, 1), [{}], "degree-2 second kind"),
        E("d_sharp", lambda: D_SHARP, [{}], "degree-2 first kind"),
        E("d_c", d_c, [{"c": Fraction(1, 3)}, {"c": Fraction(1, 4)}, {"c": Fraction(0)},
                       {"c": Fraction(-1, 3)}, {"c": Fraction(-1, 5)}, {"c": Fraction(-1)},
                       {"c": PARAM}],
          "degree-2 first kind", "|c| <= 1"),
        E("d_star", lambda: D_STAR, [{}], "degree-2 first kind"),
        E("d22_e", lambda k, a=1: csum(D22, term(0, 0, k, 1, a)), [{"k": 3}, {"k": 4}, {"k": 5, "a": 2}],
          "second-kind extension", "k > 2"),
        E("d_c_m", lambda m: csum(d_c(Fraction(1, m)), term(1, 0, m, 2)), [{"m": 3}, {"m": 4}],
          "extension of d_c with 1/c = m", "m > 2 integer"),
        E("d_0_k", lambda k: csum(term(1, 1, 0, 2), term(1, 0, k, 3)), [{"k": 2}, {"k": 3}],
          "extension of d_0", "k >= 2"),
        E("d_0a", lambda k, a=1: csum(term(1, 1, 0, 2), term(1, 0, k, 3), term(1, 0, 2 * k - 1, 3, a)),
          [{"k": 2}, {"k": 3}, {"k": 2, "a": Fraction(-5, 2)}], "extension of d_0", "k >= 2, a != 0"),
        E("d_neg_e", lambda r, s, k: csum(d_c(c_from_rs(r, s)), term(1, k * r, k * (s - r) + 1, 3)),
          [{"r": 1, "s": 4, "k": 1}, {"r": 1, "s": 6, "k": 1}], "extension of d_c, c negative rational",
          "c/(c-1) = r/s in lowest terms, 0 < r/s < 1/2"),
        E("d_ca", lambda r, s, k, a=1: csum(d_c(c_from_rs(r, s)), term(1, k * r, k * (s - r) + 1, 3),
                                           term(1, 2 * k * r, 2 * k * (s - r) + 1, 3, a)),
          [{"r": 1, "s": 4, "k": 1}, {"r": 1, "s": 4, "k": 1, "a": 3}], "extension of d_c, c negative rational",
          "c/(c-1) = r/s in lowest terms"),
        E("d_m1_e", lambda k: csum(term(1, 1, 0, 2), term(1, 0, 1, 3, -1), alpha_k(k)), [{"k": 1}, {"k": 2}],
          "extension of d_{-1}", "k >= 1"),
        E("d_m1_ea", lambda k, a=1: csum(term(1, 1, 0, 2), term(1, 0, 1, 3, -1), alpha_k(k), alpha_k(2 * k) * a),
          [{"k": 1}, {"k": 1, "a": 2}], "extension of d_{-1}", "k >= 1"),
        E("d_star_k", lambda k: csum(D_STAR, term(1, 0, k, 2)), [{"k": 2}, {"k": 3}],
          "extension of d_* with secondary psi_2 term", "k >= 2"),
        E("d_star_l", lambda l: csum(D_STAR, term(1, 0, l, 3)), [{"l": 2}, {"l": 3}],
          "extension of d_* with secondary psi_3 term", "l >= 2"),
        E("d_kl", d_kl, [{"k": 2, "l": 5}, {"k": 4, "l": 2}, {"k": 2, "l": 3}, {"k": 5, "l": 2}],
          "general extension of d_*", "2l != k+1"),
        E("d_kl_special", lambda l, a: d_kl(2 * l - 1, l, a), [{"l": 2, "a": 1}, {"l": 2, "a": 4}],
          "extension of d_* with k+1 = 2l", "k+1 = 2l, a != 0"),
        E("d_klm", lambda k, l, m, a=1, b=1: csum(d_kl(k, l, a), term(1, 0, m, 2, b)),
          [{"k": 5, "l": 2, "m": 6}, {"k": 3, "l": 2, "m": 9, "a": 4}], "extension of d_{k,l} by a psi_2 term",
          "m > k"),
        E("d_klm3", lambda k, l, m, b=1: csum(d_kl(k, l), term(1, 0, m, 3, b)), [{"k": 2, "l": 5, "m": 7, "b": 2}],
          "extension of d_{k,l} by a psi_3 term", "m > l"),
        E("d_klx", lambda k, l, x, b=1: csum(d_kl(k, l), term(1, 0, x, 3, b)), [{"k": 3, "l": 6, "x": 7}],
          "extension of d_{k,l} in the 2l = n(k+1) subcase",
          "x not a multiple of k+1, not of the form y(k+1)+l"),
    ]


def catalog_entry(entry_id: str) -> CatalogEntry:
    for e in catalog():
        if e.id == entry_id:
            return e
    raise KeyError(f"unknown catalog id {entry_id!r}")


# -- obstruction ------------------------------------------------------------------------

@dataclass
class ObstructionReport:
    weight: int
    rhs: Cochain | None
    is_cocycle: bool | None
    solvable: bool | None
    solution: Cochain | None = None
    failing_index: int | None = None

    def as_dict(self) -> dict:
        return {"weight": self.weight, "rhs": _render(self.rhs) if self.rhs is not None else None,
                "is_cocycle": self.is_cocycle, "solvable": self.solvable,
                "solution": _render(self.solution) if self.solution is not None else None,
                "failing_index": self.failing_index}

    def render(self) -> str:
        if self.failing_index is not None:
            return f"precondition fails at index {self.failing_index}"
        lines = [f"obstruction in weight {self.weight}: {_render(self.rhs)}",
                 f"  cocycle: {self.is_cocycle}  solvable: {self.solvable}"]
        if self.solution is not None:
            lines.append(f"  next term: {_render(self.solution)}")
        return "\n".join(lines)


def _bracket_sum(comps: dict, N: int, n: int) -> Cochain:
    """-1/2 sum_{k=N+1}^{n} [d_k, d_{n+N-k+1}]."""
    total = Cochain()
    for k in range(N + 1, n + 1):
        a, b = comps.get(k), comps.get(n + N - k + 1)
        if a and b:
            total = total + bracket(a, b)
    return total * Fraction(-1, 2)


def obstruction(partial, n: int) -> ObstructionReport:
    """Right-hand side of the extension equation D(d_{n+1}) = -1/2 sum [d_k, d_{n+N-k+1}]."""
    partial = as_series(partial, max(n + 1, _max_weight(partial)))
    N = partial.order
    comps = {w: c for w, c in partial.components.items() if w <= n}
    dN = comps[N]
    if bracket(dN, dN):
        return ObstructionReport(n + N, None, None, None, failing_index=N)
    for j in range(N + 1, n + 1):
        # the relation for d_j: D(d_j) equals the bracket sum in weight j+N-1
        lhs = bracket(comps.get(j, Cochain()), dN) if comps.get(j) else Cochain()
        if lhs != _bracket_sum(comps, N, j - 1):
            return ObstructionReport(n + N, None, None, None, failing_index=j)
    rhs = _bracket_sum(comps, N, n)
    cocycle = not bracket(rhs, dN) if rhs else True
    e = Echelon(track=True)
    for b in basis_keys(n + 1, ODD):
        e.add(to_vector(bracket(Cochain({b: Fraction(1)}, _clean=True), dN)), b)
    rem, combo = e.reduce(to_vector(rhs))
    if rem:
        return ObstructionReport(n + N, rhs, cocycle, False)
    sol = Cochain({k: c for k, c in combo.items() if c}, _clean=True)
    return ObstructionReport(n + N, rhs, cocycle, True, sol)


# -- elimination ------------------------------------------------------------------------

def _generator(d: Coderivation, target: Cochain, depth: int):
    """alpha (weight >= 2) whose coboundary has leading term ``target``, or None.

    Sources are admitted from the top weight downward, so lower-weight
    cochains enter only when the single-weight solve fails; this keeps the
    generators small.
    """
    for low in range(target.weight - d.order + 1, 1, -1):
        sol = is_leading_coboundary(d, target, depth, min_source_weight=low)
        if sol.achieved:
            return sol.preimage
    return None


@dataclass
class EliminationResult:
    codifferential: Coderivation
    automorphism: FormalAutomorphism
    removable: bool
    weight: int

    def render(self) -> str:
        if not self.removable:
            return f"weight-{self.weight} term is not removable"
        return f"{self.codifferential.render()}\n  via {self.automorphism.render()}"


def eliminate_term(d, k: int, depth: int = DEFAULT_DEPTH) -> EliminationResult:
    """Remove the weight-k term of d by exp(alpha) when it is a leading coboundary."""
    d = as_series(d, depth)
    target = d.component(k)
    ident = FormalAutomorphism(IDENTITY, [], depth)
    if not target:
        return EliminationResult(d, ident, True, k)
    if k <= d.order:
        return EliminationResult(d, ident, False, k)
    alpha = _generator(d, target, depth)
    if alpha is None:
        return EliminationResult(d, ident, False, k)
    new = exp_ad(alpha, d, depth)
    assert not new.component(k), "elimination left a weight-k remainder"
    return EliminationResult(new, FormalAutomorphism(IDENTITY, [alpha], depth), True, k)


def standard_form(d, depth: int = DEFAULT_DEPTH):
    """Iterate eliminate_term upward from the order of d; returns (d', g)."""
    d = as_series(d, depth)
    g = FormalAutomorphism(IDENTITY, [], depth)
    for w in range(d.order + 1, depth + 1):
        r = eliminate_term(d, w, depth)
        if r.removable and r.automorphism.factors:
            d = r.codifferential
            g = g.then(r.automorphism.factors[0])
    return d, g


# -- equivalence search -----------------------------------------------------------------

@dataclass
class SearchResult:
    found: bool
    automorphism: FormalAutomorphism | None
    depth: int
    stuck_weight: int | None = None
    residual: Cochain | None = None
    reason: str = ""

    def render(self) -> str:
        if self.found:
            return f"equivalent up to weight {self.depth} via {self.automorphism.render()}"
        if self.stuck_weight is None:
            return f"not equivalent: {self.reason}"
        return (f"search exhausted at weight {self.stuck_weight} (depth {self.depth}): "
                f"difference {self.residual.render()} is not a leading coboundary; {self.reason}")

    def as_dict(self) -> dict:
        return {"found": self.found, "depth": self.depth,
                "automorphism": self.automorphism.render() if self.automorphism else None,
                "stuck_weight": self.stuck_weight,
                "residual": self.residual.render() if self.residual is not None else None,
                "reason": self.reason}


def equivalence_search(d, d2, depth: int = DEFAULT_DEPTH, linear_candidates=()) -> SearchResult:
    """Look for g with g*(d) = d2 up to ``depth``, one weight at a time.

    Generators are found by a triangular solve: the lowest differing
    component must be the leading term of a coboundary of the current
    codifferential (sources of weight >= 2).  A failure is reported with the
    stuck weight and residual; it is evidence of formal inequivalence only
    under the leading-coboundary criterion, and only up to ``depth``.
    """
    d = as_series(d, depth)
    d2 = as_series(d2, depth)
    if d.order != d2.order or d.leading() != d2.leading():
        return SearchResult(False, None, depth, reason="leading terms differ")
    best = None
    for lam in [IDENTITY, *linear_candidates]:
        x = pullback_linear(lam, d) if lam != IDENTITY else d
        if x.leading() != d2.leading():
            continue
        g = FormalAutomorphism(lam, [], depth)
        res = None
        for w in range(d.order + 1, depth + 1):
            diff = x.component(w) - d2.component(w)
            if not diff:
                continue
            alpha = _generator(x, diff, depth)
            if alpha is None:
                res = SearchResult(False, None, depth, w, diff,
                                   "no formal generator with this linear part removes it (greedy search: evidence, not proof)")
                break
            x = exp_ad(alpha, x, depth)
            g = g.then(alpha)
        if res is None:
            assert not (x - d2), "search finished with a residual"
            return SearchResult(True, g, depth)
        if best is None or res.stuck_weight > best.stuck_weight:
            best = res
    if best is None:
        return SearchResult(False, None, depth, reason="no candidate linear part fixes the leading term")
    return best


# -- table replication -------------------------------------------------------------------

@dataclass
class Row:
    input: str
    expected: str
    computed: str
    citation: str
    match: bool
    note: str = ""
    kind: str = "check"  # "open": reports an unsettled claim, excluded from the status

    def as_dict(self) -> dict:
        out = {"input": self.input, "expected": self.expected, "computed": self.computed,
               "citation": self.citation, "match": self.match}
        if self.note:
            out["note"] = self.note
        if self.kind != "check":
            out["kind"] = self.kind
        return out


@dataclass
class TableReport:
    table_id: str
    rows: list = field(default_factory=list)

    @property
    def status(self) -> str:
        checks = [r for r in self.rows if r.kind == "check"]
        return "match" if all(r.match for r in checks) else "mismatch"

    @property
    def mismatches(self) -> list:
        return [r for r in self.rows if r.kind == "check" and not r.match]

    def as_dict(self) -> dict:
        return {"table_id": self.table_id, "rows": [r.as_dict() for r in self.rows], "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)

    def render(self, verbose: bool = False) -> str:
        n = sum(r.kind == "check" for r in self.rows)
        bad = self.mismatches
        lines = [f"{self.table_id}: {self.status} ({n - len(bad)}/{n} rows)"]
        for r in self.rows:
            if verbose or (r.kind == "check" and not r.match) or r.kind != "check":
                flag = "ok " if r.match else "MISMATCH" if r.kind == "check" else "open"
                lines.append(f"  [{flag}] {r.input}: expected {r.expected}; computed {r.computed}"
                             + (f"  ({r.note})" if r.note else ""))
        return "\n".join(lines)


def _same(a, b, depth: int) -> bool:
    if isinstance(a, Cochain) and isinstance(b, Cochain):
        return a == b
    return not (as_series(a, depth) - as_series(b, depth))


def _coboundary_rows(d, entries, citation: str) -> list[Row]:
    rows = []
    dw = _max_weight(d)
    for x, expected in entries:
        if isinstance(d, Cochain) and isinstance(x, Cochain):
            got = bracket(x, d)
            ok = got == expected if isinstance(expected, Cochain) else _same(got, expected, x.weight + dw)
        else:
            depth = _max_weight(x) + dw
            got = coboundary(as_series(d, depth), as_series(x, depth), depth)
            ok = _same(got, expected, depth)
        rows.append(Row(f"D({_render(x)})", _render(expected), _render(got), citation, ok))
    return rows


# coboundary tables, as displayed ------------------------------------------------------

def _table_deg1_first(nmax=8):
    out = []
    for n in range(1, nmax + 1):
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2), term(1, p - 1, n - p, 2, p)))
            out.append((term(0, p, n - p, 1), csum(term(1, p - 1, n - p, 1, p), term(0, p, n - p, 2))))
            out.append((term(0, p, n - p, 3), term(1, p - 1, n - p, 3, p)))
        for q in range(n):
            out.append((term(1, q, n - q - 1, 2), Cochain()))
            out.append((term(1, q, n - q - 1, 1), term(1, q, n - q - 1, 2, -1)))
            out.append((term(1, q, n - q - 1, 3), Cochain()))
    return out


def _table_deg1_second(nmax=8):
    out = []
    for n in range(1, nmax + 1):
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2), term(0, p, n - p, 1, -1)))
            out.append((term(0, p, n - p, 1), Cochain()))
            out.append((term(0, p, n - p, 3), Cochain()))
        for q in range(n):
            out.append((term(1, q, n - q - 1, 2), csum(term(1, q, n - q - 1, 1), term(0, q + 1, n - q - 1, 2))))
            out.append((term(1, q, n - q - 1, 1), term(1, q + 1, n - q - 1, 1)))  # as displayed
            out.append((term(1, q, n - q - 1, 3), term(0, q + 1, n - q - 1, 3)))
    return out


def _table_d22(nmax=8):
    out = []
    for n in range(1, nmax + 1):
        for q in range(n):
            out.append((term(1, q, n - q - 1, 1), term(0, 2 + q, n - q - 1, 1)))
            out.append((term(1, q, n - q - 1, 2), csum(term(1, q + 1, n - q - 1, 1, 2), term(0, q + 2, n - q - 1, 2))))
            out.append((term(1, q, n - q - 1, 3), term(0, q + 2, n - q - 1, 3)))
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2), term(0, p + 1, n - p, 1, -2)))
            out.append((term(0, p, n - p, 3), Cochain()))
            out.append((term(0, p, n - p, 1), Cochain()))
    return out


def _table_dc(nmax=6, c=PARAM):
    out = []
    for n in range(1, nmax + 1):
        for q in range(n):
            out.append((term(1, q, n - q - 1, 1), csum(term(1, 1 + q, n - q - 1, 2, -1), term(1, q, n - q, 3, -c))))
            out.append((term(1, q, n - q - 1, 2), Cochain()))
            out.append((term(1, q, n - q - 1, 3), Cochain()))
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2), term(1, p, n - p, 2, p - 1 + c * (n - p))))
            out.append((term(0, p, n - p, 3), term(1, p, n - p, 3, p + c * (n - p - 1))))
            out.append((term(0, p, n - p, 1), csum(term(1, p, n - p, 1, p + c * (n - p)), term(0, 1 + p, n - p, 2),
                                                  term(0, p, n - p + 1, 3, c))))
    return out


def _table_dstar(nmax=8):
    out = []
    for n in range(1, nmax + 1):
        for q in range(n):
            out.append((term(1, q, n - q - 1, 1), term(1, 1 + q, n - q - 1, 3, -1)))
            out.append((term(1, q, n - q - 1, 2), Cochain()))
            out.append((term(1, q, n - q - 1, 3), Cochain()))
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2), csum(term(1, 1 + p, n - p - 1, 2, n - p), term(1, p, n - p, 3, -1))))
            out.append((term(0, p, n - p, 3), term(1, 1 + p, n - p - 1, 3, n - p)))
            out.append((term(0, p, n - p, 1), csum(term(1, 1 + p, n - p - 1, 1, n - p), term(0, 1 + p, n - p, 3))))
    return out


def _table_dkl(k, l, a, b, nmax=5):
    """Extended coboundary formulas, recursion formulas and D(phi_n), D(phi'_n) for d_{k,l}."""
    out = []
    for n in range(1, nmax + 1):
        for q in range(n):
            out.append((term(1, q, n - q - 1, 1),
                        csum(term(1, 1 + q, n - q - 1, 3, -1), term(1, q, k + n - q - 1, 2, -a),
                             term(1, q, l + n - q - 1, 3, -b))))
        for p in range(n + 1):
            out.append((term(0, p, n - p, 2),
                        csum(term(1, p + 1, n - p - 1, 2, n - p), term(1, p, n - p, 3, -1),
                             term(1, p - 1, k + n - p, 2, a * p), term(1, p, l + n - p - 1, 2, b * (n - p)))))
            out.append((term(0, p, n - p, 3),
                        csum(term(1, p + 1, n - p - 1, 3, n - p), term(1, p, k + n - p - 1, 2, -a * k),
                             term(1, p - 1, k + n - p, 3, a * p), term(1, p, l + n - p - 1, 3, b * (n - p - l)))))
    for v in range(0, 4):
        out.append((term(0, 0, v + 1, 2),
                    csum(term(1, 1, v, 2, v + 1), term(1, 0, v + 1, 3, -1), term(1, 0, v + l, 2, b * (v + 1)))))
        for p in range(0, 3):
            out.append((csum(term(0, p, v + 1, 3), term(1, p, v, 1, -k)),
                        csum(term(1, p + 1, v, 3, v + k + 1), term(1, p - 1, v + k + 1, 3, a * p),
                             term(1, p, v + l, 3, b * (v + k + 1 - l)))))
            out.append((csum(term(0, p + 1, v + 1, 2), term(1, p, v + 1, 1, -1), term(0, p, v + l + 1, 2, b)),
                        csum(term(1, p + 2, v, 2, v + 1), term(1, p + 1, v + l, 2, b * (l + 2 + 2 * v)),
                             term(1, p, v + k + 1, 2, a * (p + 2)), term(1, p, v + 2 * l, 2, b * b * (l + 1 + v)),
                             term(1, p - 1, v + k + 1 + l, 2, a * b * p))))
    for n in range(1, nmax + 1):
        out.append((phi_n(n), csum(term(1, 0, k + n - 1, 2, -a * (k + n)), term(1, 0, l + n - 1, 3, -b * l))))
        out.append((phi_prime(n), csum(term(1, n - 1, k, 2, -a * (k - n)), term(1, n - 2, k + 1, 3, a * (n - 1)),
                                       term(1, n - 1, l, 3, b * (1 - l)))))
    return out


def _table_exrec(k, l, m, b):
    out = []
    for v in range(0, 3):
        out.append((term(0, 0, v + 1, 2),
                    csum(term(1, 1, v, 2, v + 1), term(1, 0, v + 1, 3, -1), term(1, 0, v + l, 2, v + 1),
                         term(1, 0, v + m, 2, b * (v + 1)))))
        for p in range(0, 3):
            out.append((csum(term(0, p, v + 1, 3), term(1, p, v, 1, -k)),
                        csum(term(1, p + 1, v, 3, v + k + 1), term(1, p - 1, v + k + 1, 3, p),
                             term(1, p, v + l, 3, v + k + 1 - l), term(1, p, v + m, 3, b * (v + k + 1 - m)))))
            out.append((csum(term(0, p + 1, v + 1, 2), term(1, p, v + 1, 1, -1), term(0, p, v + l + 1, 2),
                             term(0, p, v + m + 1, 2, b)),
                        csum(term(1, p + 2, v, 2, v + 1), term(1, p + 1, v + l, 2, l + 2 + 2 * v),
                             term(1, p + 1, v + m, 2, b * (m + 2 + 2 * v)), term(1, p, v + k + 1, 2, p + 2),
                             term(1, p, v + 2 * l, 2, l + 1 + v), term(1, p, v + 2 * m, 2, b * b * (m + 1 + v)),
                             term(1, p - 1, v + k + 1 + l, 2, p), term(1, p - 1, v + k + 1 + m, 2, b * p))))
    return out


# cohomology tables --------------------------------------------------------------------

@dataclass
class Cls:
    """An expected class: an exact cocycle, or (ho=True) the leading term of one."""
    value: object
    ho: bool = False


def _parity_of(x):
    return as_series(x).parity


def _verify_classes(d, n, classes, lc_rows: Echelon, depth: int):
    """Each class is a cocycle (or extends to one) and they are independent modulo lc_rows."""
    chosen = Echelon()
    for lc in lc_rows:
        chosen.add(lc)
    for c in classes:
        x = as_series(c.value, depth)
        lead = x.leading()
        if lead.weight != n:
            return False, f"{c.value.render()} has leading weight {lead.weight}"
        if c.ho:
            try:
                if not extend_cocycle(d, lead, depth).extends:
                    return False, f"{lead.render()} does not extend to a cocycle"
            except NotACocycleError:
                return False, f"{lead.render()} is not a cocycle of the leading term"
        elif isinstance(d, Cochain):
            if bracket(lead, d):
                return False, f"{lead.render()} is not a cocycle"
        elif coboundary(as_series(d, depth), x, depth):
            return False, f"{c.value.render()} is not a cocycle"
        if chosen.add(to_vector(lead)) is None:
            return False, f"{lead.render()} is dependent on coboundaries or the other classes"
    return True, ""


def _graded_rows(d, n, classes, citation):
    rep = graded_cohomology(d, n)
    exp = (sum(_parity_of(c.value) == EVEN for c in classes), sum(_parity_of(c.value) == ODD for c in classes))
    image = [to_vector(c) for c in rep.coboundary_basis]
    ok, why = _verify_classes(d, n, classes, image, n + 2)
    text = "<" + ", ".join(c.value.render() for c in classes) + ">" if classes else "0"
    return Row(f"H^{n}", f"{exp[0]}|{exp[1]} {text}",
               f"{rep.even_dim}|{rep.odd_dim} <" + ", ".join(r.render() for r in rep.representatives) + ">",
               citation, rep.dims == exp and ok, why)


def _filtered_rows(d, n, classes, citation, depth):
    rep = filtered_cohomology(d, n, depth)
    exp = (sum(_parity_of(c.value) == EVEN for c in classes), sum(_parity_of(c.value) == ODD for c in classes))
    lcs = [to_vector(c) for c in rep.coboundary_basis]
    ok, why = _verify_classes(as_series(d, depth), n, classes, lcs, depth)
    text = "<" + ", ".join(c.value.render() + (" + ho" if c.ho else "") for c in classes) + ">" if classes else "0"
    leads = [r.leading().render() + (" + ho" if len(r.components) > 1 else "") for r in rep.representatives]
    return Row(f"H^{n}", f"{exp[0]}|{exp[1]} {text}", f"{rep.even_dim}|{rep.odd_dim} <" + ", ".join(leads) + ">",
               citation, rep.dims == exp and ok, why)


def _depth_for(d, n) -> int:
    return n + _max_weight(d) + 1


def _h_deg1():
    rows = []
    for name, d in (("first kind", term(1, 0, 0, 2)), ("second kind", term(0, 1, 0, 1))):
        for n in range(1, 9):
            r = _graded_rows(d, n, [], f"degree-1 {name}: cohomology claimed zero")
            if not r.match:
                r.note = "odd part vanishes; the even class phi^{0,0,n}_3 survives"
            rows.append(r)
    return rows


def _h_d22():
    rows = []
    for n in range(1, 9):
        if n == 1:
            cl = [term(0, 0, 1, 1), term(0, 1, 0, 1), term(0, 0, 1, 3), term(0, 1, 0, 3),
                  csum(term(1, 0, 0, 1, 2), term(0, 1, 0, 2))]
        else:
            cl = [term(0, 0, n, 1), term(0, 0, n, 3), term(0, 1, n - 1, 3),
                  csum(term(1, 0, n - 1, 1, 2), term(0, 1, n - 1, 2))]
        rows.append(_graded_rows(D22, n, [Cls(c) for c in cl], "psi^{0,2,0}_1 cohomology table"))
    return rows


def _d22e_classes(k, n):
    a = csum(term(0, 0, n, 3, 2), term(1, 0, n - 1, 1, 2 * k), term(0, 1, n - 1, 2, k))
    b = csum(term(0, 1, n - 1, 3, 2), term(0, 0, n + k - 2, 2, -1))
    # the displayed second cocycle is not exact (see _d22e_cocycle_rows), so only its leading term is used
    if n == 1:
        return [Cls(term(0, 0, 1, 1)), Cls(term(0, 1, 0, 1)), Cls(a), Cls(b, ho=True)]
    if n < k:
        return [Cls(term(0, 0, n, 1)), Cls(a), Cls(b, ho=True)]
    return [Cls(a), Cls(b, ho=True)]


def _d22e_cocycle_rows(k, ns=(1, 2, 3)):
    d = csum(D22, term(0, 0, k, 1))
    rows = []
    for n in ns:
        depth = n + 2 * k
        dd = as_series(d, depth)
        shown = csum(term(0, 1, n - 1, 3, 2), term(0, 0, n + k - 2, 2, -1))
        got = coboundary(dd, as_series(shown, depth), depth)
        fixed = csum(term(0, 1, n - 1, 3, 2), term(0, 0, n + k - 2, 2, -k))
        rows.append(Row(f"k={k} D_e({shown.render()})", "0", got.render(), "second even cocycle of the extension",
                        not got, note="" if not got else
                        f"D_e({fixed.render()}) = {coboundary(dd, as_series(fixed, depth), depth).render()}"))
    return rows


def _h_d22e(ks=(3, 4), nmax=12):
    rows = []
    for k in ks:
        d = csum(D22, term(0, 0, k, 1))
        for n in range(1, nmax + 1):
            r = _filtered_rows(d, n, _d22e_classes(k, n), f"cohomology of psi^{{0,2,0}}_1 + psi^{{0,0,{k}}}_1",
                               max(DEFAULT_DEPTH, _depth_for(d, n)))
            r.input = f"k={k} " + r.input
            rows.append(r)
        rows += _d22e_cocycle_rows(k)
    return rows


def _dc_classes(c, n):
    """Expected d_c cohomology for the sampled special values of c."""
    base1 = [term(1, 0, 0, 2), term(1, 0, 0, 3), term(0, 1, 0, 2), term(0, 0, 1, 3)]
    if n == 1:
        return base1
    if c == 0:
        return [term(1, 0, n - 1, 3), term(0, 0, n, 3)]
    if c > 0:
        m = int(1 / c)
        out = []
        if n == 2:
            out.append(term(1, 0, 1, 3))
        if n == m:
            out.append(term(0, 0, m, 2))
        if n == m + 1:
            out.append(term(1, 0, m, 2))
        return out
    if c == -1:
        if n % 2 == 0:
            return [alpha_k(n // 2 - 1)]
        return [beta_k((n - 1) // 2)]
    cc = c / (c - 1)
    r, s = cc.numerator, cc.denominator
    out = []
    if n == 2:
        out.append(term(1, 0, 1, 3))
    if (n - 1) % s == 0:
        k = (n - 1) // s
        out.append(term(0, k * r, k * (s - r) + 1, 3))
    if (n - 2) % s == 0 and n > 2:
        k = (n - 2) // s
        out.append(term(1, k * r, k * (s - r) + 1, 3))
    return out


def _h_dc(cs=(Fraction(1, 3), Fraction(1, 4), Fraction(0), Fraction(-1, 3), Fraction(-1, 5), Fraction(-1)), nmax=10):
    rows = []
    for c in cs:
        d = d_c(c)
        for n in range(1, nmax + 1):
            r = _graded_rows(d, n, [Cls(x) for x in _dc_classes(c, n)], f"d_c cohomology, c = {render_scalar(c)}")
            r.input = f"c={render_scalar(c)} " + r.input
            rows.append(r)
    return rows


def _h_dstar():
    rows = []
    for n in range(1, 9):
        if n == 1:
            cl = [term(1, 0, 0, 2), term(1, 0, 0, 3), term(0, 1, 0, 3), csum(term(0, 0, 1, 3), term(1, 0, 0, 1)),
                  csum(term(0, 1, 0, 2), term(0, 0, 1, 3))]
        else:
            cl = [term(1, 0, n - 1, 2), term(1, 0, n - 1, 3), phi_prime(n),
                  csum(term(0, 0, n, 3), term(1, 0, n - 1, 1, n))]
        rows.append(_graded_rows(D_STAR, n, [Cls(c) for c in cl], "d_* cohomology table"))
    return rows


def _h_dc_m(ms=(3, 4), nmax=8):
    rows = []
    for m in ms:
        d = csum(d_c(Fraction(1, m)), term(1, 0, m, 2))
        depth = m + 4
        dd = as_series(d, depth)
        rows.append(Row(f"m={m} D_e(phi^{{0,1,0}}_2)", term(1, 0, m, 2).render(),
                        coboundary(dd, term(0, 1, 0, 2), depth).render(), "d_c extension, 1/c = m",
                        _same(coboundary(dd, term(0, 1, 0, 2), depth), term(1, 0, m, 2), depth)))
        rows.append(Row(f"m={m} D_e(phi^{{0,0,1}}_3)", term(1, 0, m, 2, -m).render(),
                        coboundary(dd, term(0, 0, 1, 3), depth).render(), "d_c extension, 1/c = m",
                        _same(coboundary(dd, term(0, 0, 1, 3), depth), term(1, 0, m, 2, -m), depth)))
        for n in range(1, nmax + 1):
            if n == 1:
                cl = [Cls(term(1, 0, 0, 2)), Cls(term(1, 0, 0, 3)), Cls(csum(term(0, 1, 0, 2, m), term(0, 0, 1, 3)))]
            else:
                cl = [Cls(term(1, 0, 1, 3))] if n == 2 else []
                if n == m:
                    cl.append(Cls(term(0, 0, m, 2)))
            r = _filtered_rows(d, n, cl, "d_c extension by psi^{1,0,m}_2, cohomology", _depth_for(d, n))
            r.input = f"m={m} " + r.input
            rows.append(r)
    return rows


def _h_d0a(ks=(2, 3)):
    rows = []
    for k in ks:
        de = csum(term(1, 1, 0, 2), term(1, 0, k, 3))
        for n in range(1, 6):
            depth = n + k + 1
            got = coboundary(as_series(de, depth), term(0, 0, n, 3), depth)
            exp = term(1, 0, k + n - 1, 3, n - k)
            rows.append(Row(f"k={k} D_e(phi^{{0,0,{n}}}_3)", exp.render(), got.render(),
                            "coboundaries of d_0 + psi^{1,0,k}_3", _same(got, exp, depth)))
        for m in range(k, 2 * k + 3):
            sol = is_leading_coboundary(as_series(de, m + 2), term(1, 0, m, 3), m + 2)
            exp = m != 2 * k - 1
            rows.append(Row(f"k={k} psi^{{1,0,{m}}}_3 leading coboundary of d_e", str(exp), str(sol.achieved),
                            "psi^{1,0,m}_3 is a coboundary for m >= k except m = 2k-1", exp == sol.achieved))
        d = csum(de, term(1, 0, 2 * k - 1, 3))
        for n in range(1, 2 * k + 3):
            if n == 1:
                cl = [Cls(term(1, 0, 0, 2)), Cls(term(1, 0, 0, 3)), Cls(term(0, 1, 0, 2))]
            elif n <= k:
                cl = [Cls(term(1, 0, n - 1, 3))]
            elif n == 2 * k:
                cl = [Cls(term(1, 0, 2 * k - 1, 3))]
            else:
                cl = []
            r = _filtered_rows(d, n, cl, "cohomology of d_{0,a}", _depth_for(d, n))
            if not r.match and n == k:
                r.note = "phi^{0,0,k}_3 is a d_e-cocycle and extends; the table omits this even class"
            r.input = f"k={k} " + r.input
            rows.append(r)
    return rows


def _h_dneg(r=1, s=4, k=1, nmax=None):
    c = c_from_rs(r, s)
    d = csum(d_c(c), term(1, k * r, k * (s - r) + 1, 3))
    rows = []
    for l in range(1, 4):
        depth = 3 * (s + 2) + 2
        phi_l = term(0, l * r, l * (s - r) + 1, 3)
        got = coboundary(as_series(d, depth), phi_l, depth)
        exp = term(1, (l + k) * r, (l + k) * (s - r) + 1, 3, (l - k) * (s - r))
        rows.append(Row(f"D_e({phi_l.render()})", exp.render(), got.render(),
                        "coboundaries of the negative-c extension", _same(got, exp, depth)))
    nmax = nmax or 2 * k * s + 2
    for n in range(1, nmax + 1):
        if n == 1:
            cl = [Cls(term(1, 0, 0, 2)), Cls(term(1, 0, 0, 3)), Cls(csum(term(0, 1, 0, 2, r - s), term(0, 0, 1, 3, r)))]
        else:
            cl = []
            for m in range(k):
                if n == m * s + 2:
                    cl.append(Cls(term(1, m * r, m * (s - r) + 1, 3)))
            if n == k * s + 1:
                cl.append(Cls(term(0, k * r, k * (s - r) + 1, 3)))
            if n == 2 * k * s + 2:
                cl.append(Cls(term(1, 2 * k * r, 2 * k * (s - r) + 1, 3)))
        row = _filtered_rows(d, n, cl, f"cohomology of d_c + psi^{{1,{k*r},{k*(s-r)+1}}}_3, c = {c}",
                             _depth_for(d, n))
        row.input = f"r={r},s={s},k={k} " + row.input
        rows.append(row)
    return rows


def _dca_rows(r=1, s=4, k=1, a=Fraction(1)):
    c = c_from_rs(r, s)
    de = csum(d_c(c), term(1, k * r, k * (s - r) + 1, 3))
    tert = term(1, 2 * k * r, 2 * k * (s - r) + 1, 3)
    d = csum(de, tert * a)
    rows = []
    w = tert.weight
    sol = is_leading_coboundary(as_series(de, 10), tert, 10)
    rows.append(Row(f"leading coboundary test of {tert.render()} for d_e", "not a leading coboundary",
                    "leading coboundary" if sol.achieved else "not a leading coboundary",
                    "tertiary term of d_{c,a}", not sol.achieved))
    phi = term(0, k * r, k * (s - r) + 1, 3)
    depth = 3 * k * s + 4
    got = coboundary(as_series(d, depth), phi, depth)
    exp = term(1, 3 * k * r, 3 * k * (s - r) + 1, 3, -k * (s - r) * a)
    rows.append(Row(f"D_ca({phi.render()})", exp.render(), got.render(), "d_{c,a} coboundary of phi",
                    _same(got, exp, depth)))
    ext = extend_cocycle(as_series(d, max(depth, 16)), phi, max(depth, 16))
    rows.append(Row(f"extend {phi.render()}", "extends to a cocycle phi'",
                    "extends" if ext.extends else f"obstruction {ext.obstruction.render()}",
                    "phi extends for d_{c,a}", ext.extends))
    return rows


def _h_dm1(k=1):
    d = csum(term(1, 1, 0, 2), term(1, 0, 1, 3, -1), alpha_k(k))
    rows = []
    for l in range(1, 4):
        depth = 2 * (k + l) + 3
        got = coboundary(as_series(d, depth), beta_k(l), depth)
        exp = alpha_k(k + l) * (2 * (l - k)) if l != k else Cochain()
        rows.append(Row(f"D_e(beta_{l})", _render(exp), got.render(), "coboundaries of the c = -1 extension",
                        _same(got, exp, depth)))
    for n in range(1, 2 * (2 * k + 1) + 2):
        if n == 1:
            cl = [Cls(term(1, 0, 0, 2)), Cls(term(1, 0, 0, 3)), Cls(csum(term(0, 1, 0, 2, -1), term(0, 0, 1, 3)))]
        else:
            cl = []
            if n % 2 == 0 and 0 <= n // 2 - 1 < k:
                cl.append(Cls(alpha_k(n // 2 - 1)))
            if n == 2 * k + 1:
                cl.append(Cls(beta_k(k)))
            if n == 2 * (2 * k + 1):
                cl.append(Cls(alpha_k(2 * k)))
        row = _filtered_rows(d, n, cl, "cohomology of d_{-1} + alpha_k", _depth_for(d, n))
        row.input = f"k={k} " + row.input
        rows.append(row)
    return rows


def _h_dstar_l(ls=(2, 3), nmax=8):
    rows = []
    for l in ls:
        d = csum(D_STAR, term(1, 0, l, 3))
        for n in range(1, nmax + 1):
            if n == 1:
                cl = [Cls(term(1, 0, 0, 2)), Cls(term(1, 0, 0, 3)), Cls(term(0, 1, 0, 3), ho=True),
                      Cls(csum(phi_n(1) * (1 - l), phi_prime(1) * l))]
            else:
                cl = [Cls(term(1, 0, n - 1, 2)), Cls(phi_prime(n), ho=True)]
            r = _filtered_rows(d, n, cl, "cohomology of d_* + psi^{1,0,l}_3", _depth_for(d, n))
            if not r.match and n <= l:
                r.note = "psi^{1,0,n-1}_3 is a leading coboundary only from n-1 >= l on; the table omits it"
            r.input = f"l={l} " + r.input
            rows.append(r)
    return rows


def _h_dstar_k(k=2, nmax=8):
    """Even part from odd-index phi'_n extensions; odd part psi^{1,0,l}_3 with l not a multiple of k+1.
    The statement concerns weights above k, so only n > k is checked."""
    d = csum(D_STAR, term(1, 0, k, 2))
    rows = []
    for n in range(k + 1, nmax + 1):
        cl = []
        if n % 2 == 1:
            cl.append(Cls(phi_prime(n), ho=True))
        if (n - 1) % (k + 1):
            cl.append(Cls(term(1, 0, n - 1, 3)))
        # an even-n obstruction first appears in weight (n/2)(k+1)+1
        depth = max(_depth_for(d, n), (n // 2) * (k + 1) + 2)
        r = _filtered_rows(d, n, cl, "cohomology of d_* + psi^{1,0,k}_2", depth)
        r.input = f"k={k} " + r.input
        rows.append(r)
    return rows


# coefficient formulas ----------------------------------------------------------------------

def prodform_value(k: int, m: int) -> Fraction:
    return Fraction((-1) ** (m - 1) * prod(2 * i + 1 for i in range(1, m + 1)), (k + 1) ** m * factorial(m))


def case1_odd_value(k: int, l: int, m: int) -> Fraction:
    return Fraction((-1) ** m * (-2 * l + (2 * m + 1) * (k + 1)) * prod(2 * l + (2 * i + 1) * (k + 1) for i in range(1, m + 1)),
                    (k + 1) ** (m + 1) * prod(l + i * (k + 1) for i in range(1, m + 1)))


def case2_value(k: int, l: int, n: int) -> Fraction:
    return Fraction((-1) ** n * ((n + 1) * l - (k + 1)), (n - 1) * l + k + 1)


def case2_sub1_value(l: int, n: int, m: int, b=1) -> Fraction:
    return -Fraction(b) * ((n - 1) * l + 1) * ((n + 1) * l - (m + 1)) / (n * l)


def special_kl_pattern(a, n: int, l: int):
    return (a * (n + 1) ** 2 + n * l) * prod(a * (n - 2 * p - 1) ** 2 - p * (n - p - 1) * l
                                             for p in range(n) if 2 * p + 1 < n) / Fraction(l ** (n // 2))


def special_a_value(a, l: int):
    return a * (l - 1) * (6 * a * l - 2 * a + 2 * l - 1) / Fraction((2 * l - 1) * l)


def reduced_form(d, f: Cochain, depth: int):
    """Normal form of D(f) modulo coboundaries of sources heavier than f."""
    d = as_series(d, depth)
    Df = coboundary(d, as_series(f, depth), depth)
    nf, _ = series_normal_form(d, Df, depth, f.weight + 1)
    return nf


def prodform_rows(pairs=((2, 1), (2, 2), (3, 1), (3, 2), (2, 3))):
    rows = []
    for k, m in pairs:
        w = m * (k + 1)
        depth = w + 2
        d = csum(D_STAR, term(1, 0, k, 2))
        r = extend_cocycle(as_series(d, depth), phi_prime(2 * m), depth)
        exp = prodform_value(k, m)
        key = (1, 0, w, 3)
        got = r.obstruction.terms.get(key) if r.obstruction is not None else Fraction(0)
        ok = (r.obstruction is not None and r.obstruction_weight == w + 1
              and r.obstruction == term(*key, exp))
        rows.append(Row(f"k={k} m={m}: leading term of reduced D_e(phi'_{2 * m})",
                        term(*key, exp).render(), r.obstruction.render() if r.obstruction else "0",
                        "product formula for the leading coefficient", ok))
    return rows


def case1_rows():
    rows = []
    for k, l, m in ((2, 5, 1), (2, 5, 2), (3, 6, 1)):
        n = 2 * m + 1
        w = m * (k + 1) + l
        depth = w + 3
        nf = reduced_form(d_kl(k, l), phi_prime(n), depth)
        key = (1, 0, w, 3)
        got = nf.terms().get(key, Fraction(0))
        lowest = min(nf.components, default=None)
        exp = case1_odd_value(k, l, m)
        ok = got == exp and (not got or lowest == w + 1)
        rows.append(Row(f"(k,l)=({k},{l}) n={n}: coefficient of {term(*key).render()}", render_scalar(exp),
                        render_scalar(got), "odd-n coefficient, k+1 < 2l", ok))
        vanish = 2 * l == n * (k + 1)
        rows.append(Row(f"(k,l)=({k},{l}) n={n}: vanishes iff 2l = n(k+1)", str(vanish), str(got == 0),
                        "odd-n vanishing criterion", vanish == (got == 0)))
    return rows


def _case2_coefficient(k, l, n, a=1):
    """Coefficient of psi^{1,0,nl}_3, read from the engine's psi_2 normal form.

    In this ordering psi^{1,0,v}_3 is a pivot (it is the lower-weight end of
    D(phi_{v-l+1})), so the normal form holds psi^{1,0,v+k-l}_2 instead; the
    relation D(phi_{v-l+1}) = -a(v+k+1-l) psi^{1,0,v+k-l}_2 - l psi^{1,0,v}_3
    converts it back.
    """
    v = n * l
    depth = v + k - l + 3
    nf = reduced_form(d_kl(k, l, a), phi_prime(n), depth)
    c2 = nf.terms().get((1, 0, v + k - l, 2), Fraction(0))
    return -c2 * l / (a * (v + k + 1 - l)), nf


def case2_rows():
    rows = []
    for k, l in ((4, 2), (5, 2)):
        for n in range(2, 5):
            got, nf = _case2_coefficient(k, l, n)
            exp = case2_value(k, l, n)
            rows.append(Row(f"(k,l)=({k},{l}) n={n}: coefficient of psi^{{1,0,{n*l}}}_3", render_scalar(exp),
                            render_scalar(got), "lowest coefficient, k+1 > 2l", got == exp))
    # vanishing: the displayed formula is zero at k+1 = (n+1)l; the sentence after it says k+1 = nl
    got2, _ = _case2_coefficient(5, 2, 2)
    rows.append(Row("(k,l)=(5,2) n=2: k+1 = (n+1)l", "0 (displayed formula)", render_scalar(got2),
                    "zero of the displayed formula", got2 == 0))
    got3, _ = _case2_coefficient(5, 2, 3)
    rows.append(Row("(k,l)=(5,2) n=3: k+1 = nl", "0 (stated vanishing criterion)", render_scalar(got3),
                    "stated vanishing criterion", got3 == 0,
                    note="the stated criterion k+1 = nl disagrees with the formula's own zero k+1 = (n+1)l"))
    return rows


def case2_sub1_rows(cases=((5, 2, 2, 6, 1), (5, 2, 2, 6, 2), (5, 2, 2, 8, 1), (8, 3, 2, 9, 1), (8, 3, 2, 10, 1),
                           (7, 2, 3, 8, 1), (7, 2, 3, 10, 1))):
    rows = []
    for k, l, n, m, b in cases:
        key = (1, 0, m + (n - 1) * l, 2)
        depth = key[2] + 3
        d = csum(d_kl(k, l), term(1, 0, m, 2, b))
        r = extend_cocycle(as_series(d, depth), phi_prime(n), depth)
        got = r.obstruction.terms.get(key, Fraction(0)) if r.obstruction is not None else Fraction(0)
        lead_ok = r.obstruction is not None and r.obstruction_weight == key[2] + 1
        exp = case2_sub1_value(l, n, m, b)
        rows.append(Row(f"(k,l,n,m,b)=({k},{l},{n},{m},{render_scalar(Fraction(b))}): coefficient of "
                        f"{term(*key).render()}", render_scalar(exp),
                        render_scalar(got) + ("" if lead_ok else " (not the leading term)"),
                        "next coefficient, subcase k+1 = (n+1)l", lead_ok and got == exp,
                        note=(f"ratio computed/displayed = {render_scalar(got / exp)}" if exp and got else "")))
    return rows


def special_kl_rows(ns=range(2, 7), avals=(Fraction(1), Fraction(4), Fraction(-4, 9), Fraction(-3, 8), Fraction(2))):
    k, l = 3, 2
    rows = []
    for n in ns:
        ratios = {}
        for a in avals:
            got, nf = _case2_coefficient(k, l, n, a)
            pat = special_kl_pattern(a, n, l)
            rows.append(Row(f"a={render_scalar(a)} n={n}: coefficient of psi^{{1,0,{n*l}}}_3 vanishes",
                            str(pat == 0), f"{got == 0} (coefficient {render_scalar(got)})",
                            "vanishing pattern for k+1 = 2l", (pat == 0) == (got == 0)))
            if pat:
                ratios[a] = got / pat
        c2 = {a: r * a for a, r in ratios.items()}
        const_ok = len(set(ratios.values())) == 1
        rows.append(Row(f"n={n}: coefficient / displayed factor is independent of a",
                        "one nonzero constant C(n)", ", ".join(f"a={render_scalar(a)}: {render_scalar(r)}"
                                                              for a, r in ratios.items()),
                        "a-dependence of the k+1 = 2l coefficient", const_ok,
                        note="" if const_ok else
                        ("a times the ratio is constant: " + render_scalar(next(iter(c2.values())))
                         if len(set(c2.values())) == 1 else "")))
    # the unverified remark about leading terms at a special value: a=4 is special for n=4
    a, nn = Fraction(4), 4
    m = (nn + 1) * l - 1
    for n2 in (4, 7):
        depth = (nn + n2) * l + 4
        d = csum(d_kl(k, l, a), term(1, 0, m, 2))
        r = extend_cocycle(as_series(d, depth), phi_prime(n2), depth)
        exp = term(1, 0, (nn + n2) * l - 1, 2)
        got = r.obstruction.render() if r.obstruction is not None else f"none through weight {depth}"
        ok = r.obstruction is not None and set(r.obstruction.terms) == set(exp.terms)
        rows.append(Row(f"a=4, m={m}, n'={n2}: leading term of reduced D_klm(phi'_{n2})",
                        f"multiple of {exp.render()} (conjectured)", got,
                        "leading term at a special value (unsettled remark)", ok, kind="open",
                        note="resolved at sampled parameters"))
    return rows


def special_a_rows(ls=(2, 3), avals=(Fraction(1), Fraction(2), Fraction(-1))):
    """First-order effect of the s entry of lambda on the k+l-1 coefficient, k = 2l-1."""
    rows = []
    for l in ls:
        k = 2 * l - 1
        astar = Fraction(-(2 * l - 1), 2 * (3 * l - 1))
        for a in (*avals, astar):
            depth = k + l + 2
            d = as_series(d_kl(k, l, a), depth)
            lam = LinearAutomorphism(1, 1, PARAM, 0, 1)
            X = pullback_linear(lam, d)
            first = {}
            for key, v in X.terms().items():
                if hasattr(v, "num"):
                    co = v.num.coeffs[1] if len(v.num.coeffs) > 1 else 0
                    if co:
                        first[key] = co / v.den.coeffs[0]
            X1 = Coderivation.from_terms(first, depth)
            nf, _ = series_normal_form(d, X1, depth, 2)
            key = (1, 0, k + l - 1, 2)
            got = nf.terms().get(key, Fraction(0))
            exp = special_a_value(a, l)
            rows.append(Row(f"l={l} a={render_scalar(a)}: s-coefficient of {term(*key).render()}",
                            render_scalar(exp), render_scalar(got) + (" (normal form " + nf.render() + ")"),
                            "first-order s shift for k+1 = 2l", got == exp,
                            note=("" if got == exp else
                                  "the s-flow generator plus a weight >= 2 correction commutes with d, "
                                  "so the shift is removable at every a")))
        # the symmetry behind the zero: phi^{0,1,0}_3 + phi^{0,0,l}_3 + a phi^{0,0,k}_2 commutes with d
        a = avals[0]
        depth = 3 * l + 3
        d = as_series(d_kl(k, l, a), depth)
        sym = csum(term(0, 1, 0, 3), term(0, 0, l, 3), term(0, 0, k, 2, a), depth=depth)
        comm = coboundary(d, as_series(sym, depth), depth)
        rows.append(Row(f"l={l}: [phi^{{0,1,0}}_3 + phi^{{0,0,{l}}}_3 + phi^{{0,0,{k}}}_2, d]", "not stated",
                        comm.render(), "symmetry absorbing the s-flow", True, kind="open"))
    return rows


# stabilizers ---------------------------------------------------------------------------------

def _lambda_samples(seed: int, count: int, condition):
    """Deterministic samples: half satisfying ``condition`` (built by construction), half random."""
    import random

    rng = random.Random(seed)
    vals = [Fraction(x) for x in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-1, 3)]
    out = []
    while len(out) < count:
        q, r, s, t, u = (rng.choice(vals) for _ in range(5))
        if rng.random() < 0.2:
            s = Fraction(0)
        out.append((q, r, s, t, u))
    return out + [condition(rng, vals) for _ in range(count)]


def d22_stab_rows():
    def make(rng, vals):
        r = rng.choice([Fraction(1), Fraction(-1)])
        return (rng.choice([Fraction(1), Fraction(1), Fraction(4)]), r, rng.choice(vals), Fraction(0),
                rng.choice(vals))
    rows = []
    for q, r, s, t, u in _lambda_samples(11, 12, make):
        try:
            lam = LinearAutomorphism(q, r, s, t, u)
        except ValueError:
            continue
        fixed = pullback_linear(lam, D22) == D22
        exp = t == 0 and r * r == 1
        rows.append(Row(lam.render(), f"fixed={exp}", f"fixed={fixed}", "stabilizer of psi^{0,2,0}_1",
                        fixed == exp, note="" if fixed == exp else "engine condition: t = 0 and r^2 = q"))
    return rows


def dstar_stab_rows():
    def make(rng, vals):
        q, r = rng.choice(vals), rng.choice(vals)
        return (q, r, rng.choice(vals), Fraction(0), q * r)
    rows = []
    for q, r, s, t, u in _lambda_samples(7, 12, make):
        try:
            lam = LinearAutomorphism(q, r, s, t, u)
        except ValueError:
            continue
        fixed = pullback_linear(lam, D_STAR) == D_STAR
        exp = t == 0 and u == q * r
        rows.append(Row(lam.render(), f"fixed={exp}", f"fixed={fixed}", "stabilizer of d_*", fixed == exp))
    return rows


# registry --------------------------------------------------------------------------------------

def _noted(rows, note):
    for r in rows:
        if not r.match and not r.note:
            r.note = note
    return rows


def _rows_from(d, entries, citation):
    return lambda: _coboundary_rows(d, entries(), citation)


TABLES: dict[str, Callable[[], list]] = {
    "deg1.first": _rows_from(term(1, 0, 0, 2), _table_deg1_first, "degree-1 first-kind coboundary table"),
    "deg1.second": lambda: _noted(_coboundary_rows(term(0, 1, 0, 1), _table_deg1_second(),
                                                   "degree-1 second-kind coboundary table"),
                                  "displayed target has weight n+1 although D preserves weight here; i1 should be 0"),
    "deg1.H": _h_deg1,
    "d22": _rows_from(D22, _table_d22, "psi^{0,2,0}_1 coboundary table"),
    "d22.H": _h_d22,
    "d22e.H": _h_d22e,
    "d22.stab": d22_stab_rows,
    "dc": _rows_from(d_c(), _table_dc, "d_c coboundary table over Q(c)"),
    "dc.H": _h_dc,
    "dc.m.H": _h_dc_m,
    "d0a.H": _h_d0a,
    "dneg.H": _h_dneg,
    "dca": _dca_rows,
    "dm1.H": _h_dm1,
    "dstar": _rows_from(D_STAR, _table_dstar, "d_* coboundary table"),
    "dstar.H": _h_dstar,
    "dstar.stab": dstar_stab_rows,
    "dstar.l.H": _h_dstar_l,
    "dstar.k.H": _h_dstar_k,
    "dkl.recursion": lambda: (_coboundary_rows(d_kl(2, 5, 2, 3), _table_dkl(2, 5, 2, 3), "d_{k,l} recursion formulas")
                              + _coboundary_rows(d_kl(4, 2, 1, 1), _table_dkl(4, 2, 1, 1), "d_{k,l} recursion formulas")),
    "dklm.exrec": lambda: _noted(_coboundary_rows(csum(d_kl(2, 5), term(1, 0, 7, 3, 2)), _table_exrec(2, 5, 7, 2),
                                                  "extended recursion formulas (psi_3 extension)"),
                                 "computed adds b(2v+l+m+2) psi^{1,p,v+l+m}_2, a cross term between the l and m parts"),
    "dklm.recur": lambda: recur_rows(),
    "prodform": prodform_rows,
    "case1.odd": case1_rows,
    "case2": case2_rows,
    "case2.sub1": case2_sub1_rows,
    "special.kl": special_kl_rows,
    "special.a": special_a_rows,
}


def recur_rows(k=5, l=2, m=7, a=Fraction(2), b=Fraction(3), trunc=10):
    """Modified recursion formulas for d_{k,l,m} with a psi_2 extension; the theta
    series are cut at weight ``trunc`` and compared through weight trunc+1."""
    d = csum(D_STAR, term(1, 0, l, 3), term(1, 0, k, 2, a), term(1, 0, m, 2, b))
    cite = "modified recursion formulas (psi_2 extension)"
    rows = []
    D = trunc + 1
    dd = as_series(d, D)
    for v in range(0, 3):
        x = term(0, 0, v + 1, 2)
        exp = csum(term(1, 1, v, 2, v + 1), term(1, 0, v + 1, 3, -1), term(1, 0, v + l, 2, v + 1))
        got = coboundary(dd, x, D)
        rows.append(Row(f"D({x.render()})", exp.render(), got.render(), cite, _same(got, exp, D)))
        for p in range(0, 3):
            if p + v + 1 > trunc:
                continue
            T = big_theta(p, v, k, m, a, b, trunc)
            got = coboundary(dd, T, D)
            parts = [term(1, p + 1, v, 3, v + 1 + k), term(1, p, v + l, 3, k + v + 1 - l),
                     term(1, p - 1, v + k + 1, 3, p * a), term(1, p - 1, v + m + 1, 3, p * b * Fraction(v + k + 1, v + m + 1))]
            i = 1
            while p + v + l + i * (m - k) + 1 <= D:
                parts.append(term(1, p, v + l + i * (m - k), 3,
                                  Fraction((-1) ** (i + 1)) * (b / a) ** i * Fraction((m - k) * l, v + m + 1)))
                i += 1
            exp = as_series(csum(*parts, depth=D), D)
            rows.append(Row(f"D(Theta_{{{p},{v}}}) through weight {D}", exp.render(), got.render(), cite,
                            _same(got, exp, D)))
            x = csum(term(0, p + 1, v + 1, 2), term(1, p, v + 1, 1, -1), term(0, p, v + l + 1, 2))
            DD = _max_weight(x) + m
            got = coboundary(as_series(d, DD), x, DD)
            exp = csum(term(1, p + 2, v, 2, v + 1), term(1, p + 1, v + l, 2, l + 2 + 2 * v),
                       term(1, p, v + 2 * l, 2, l + v + 1), term(1, p, v + k + 1, 2, a * (p + 2)),
                       term(1, p, v + m + 1, 2, b * (p + 2)), term(1, p - 1, v + k + l + 1, 2, a * p),
                       term(1, p - 1, v + m + l + 1, 2, b * p))
            rows.append(Row(f"D({_render(x)})", exp.render(), got.render(), cite, _same(got, exp, DD)))
    return rows


def table_ids() -> list[str]:
    return list(TABLES)


def replicate(table_id: str, **params) -> TableReport:
    """Recompute a displayed table; ``params`` narrow the sampled instances where supported."""
    if table_id == "prodform" and params:
        k, m = params.get("k", 2), params.get("m", 1)
        return TableReport(table_id, prodform_rows([(k, m)]))
    if table_id not in TABLES:
        raise KeyError(f"unknown table id {table_id!r}; known: {', '.join(TABLES)}")
    return TableReport(table_id, TABLES[table_id]())
