"""Acceptance criteria 1-10.

Each criterion prints one line ``criterion N: PASS|FAIL ...`` and asserts.
Criteria whose displayed claims disagree with the exact computation fail
here on purpose; the failing rows are listed in the printed detail.

Run directly with ``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest

from linfext.automorphisms import (LinearAutomorphism, SingularAutomorphismError, closed_form_pullback,
                                   pullback_linear)
from linfext.classification import (D22, D_SHARP, D_STAR, alpha_k, c_from_rs, catalog, csum, d_c,
                                    equivalence_search, obstruction, replicate, term)
from linfext.cochains import (Cochain, as_series, basis_keys, bracket, insertion, insertion_bruteforce,
                              is_codifferential, phi, psi)
from linfext.graded_space import ODD
from linfext.homology import is_leading_coboundary
from linfext.linalg import Echelon
from linfext.homology import to_vector


def _summary(*reports, select=None):
    bad = []
    total = 0
    for rep in reports:
        for r in rep.rows:
            if r.kind != "check" or (select is not None and not select(r)):
                continue
            total += 1
            if not r.match:
                bad.append(f"{rep.table_id}[{r.input}]")
    return not bad, total, bad


def _line(n, ok, seconds, limit, detail):
    status = "PASS" if ok and seconds < limit else "FAIL"
    return f"criterion {n}: {status} ({seconds:.1f}s, limit {limit}s) {detail}"


def _fmt_bad(bad, keep=3):
    if not bad:
        return ""
    more = f" and {len(bad) - keep} more" if len(bad) > keep else ""
    return "; mismatches: " + ", ".join(bad[:keep]) + more


# -- criteria ---------------------------------------------------------------------------

def criterion_1():
    ok_t, n_t, bad_t = _summary(replicate("deg1.first"), replicate("deg1.second"))
    ok_h, n_h, bad_h = _summary(replicate("deg1.H"))
    return ok_t and ok_h, f"coboundary rows {n_t - len(bad_t)}/{n_t}, cohomology (0|0) rows {n_h - len(bad_h)}/{n_h}" \
        + _fmt_bad(bad_t + bad_h), 10


def criterion_2():
    reps = [replicate("d22"), replicate("d22.H")]
    e = replicate("d22e.H")
    ok, n, bad = _summary(*reps)
    ok_e, n_e, bad_e = _summary(e, select=lambda r: "H^" in r.input)
    return ok and ok_e, f"table and H rows {n - len(bad)}/{n}, extension dims rows {n_e - len(bad_e)}/{n_e}" \
        + _fmt_bad(bad + bad_e), 30


def criterion_3():
    ok, n, bad = _summary(replicate("dc"), replicate("dc.H"))
    return ok, f"rows {n - len(bad)}/{n}" + _fmt_bad(bad), 60


def criterion_4():
    fams = []
    for k in (2, 3):
        de = csum(psi(1, 1, 0, 2), psi(1, 0, k, 3))
        fams.append((f"d_0a k={k}", csum(de, psi(1, 0, 2 * k - 1, 3)), de, psi(1, 0, 2 * k - 1, 3)))
    r, s, k = 1, 4, 1
    de = csum(d_c(c_from_rs(r, s)), psi(1, k * r, k * (s - r) + 1, 3))
    t = psi(1, 2 * k * r, 2 * k * (s - r) + 1, 3)
    fams.append(("d_ca", csum(de, t), de, t))
    de = csum(psi(1, 1, 0, 2), psi(1, 0, 1, 3, -1), alpha_k(1))
    fams.append(("d_ea", csum(de, alpha_k(2)), de, alpha_k(2)))
    bad = []
    for name, d, base, extra in fams:
        if not is_codifferential(d, 12):
            bad.append(f"{name} not a codifferential")
        if is_leading_coboundary(as_series(base, 10), extra, 10).achieved:
            bad.append(f"{name} extra term is a leading coboundary")
    ok_t, n_t, bad_t = _summary(replicate("d0a.H"), replicate("dneg.H"), replicate("dca"), replicate("dm1.H"))
    return not bad and ok_t, f"families {len(fams) - len(bad)}/{len(fams)}, table rows {n_t - len(bad_t)}/{n_t}" \
        + _fmt_bad(bad + bad_t), 120


def criterion_5():
    stab = replicate("dstar.stab")
    fixed = sum(r.computed == "fixed=True" for r in stab.rows)
    ok, n, bad = _summary(replicate("dstar"), replicate("dstar.H"), stab)
    ok = ok and len(stab.rows) >= 20 and 0 < fixed < len(stab.rows)
    return ok, f"rows {n - len(bad)}/{n}, stabilizer samples {len(stab.rows)} ({fixed} fixed)" + _fmt_bad(bad), 30


def criterion_6():
    ok, n, bad = _summary(replicate("prodform"))
    return ok and n == 5, f"rows {n - len(bad)}/{n}" + _fmt_bad(bad), 60


def criterion_7():
    ok, n, bad = _summary(replicate("case1.odd"), replicate("case2"), replicate("case2.sub1"))
    return ok, f"rows {n - len(bad)}/{n}" + _fmt_bad(bad, keep=8), 120


def criterion_8():
    kl = replicate("special.kl")
    ok_v, n_v, bad_v = _summary(kl, select=lambda r: "vanishes" in r.input)
    generic = [r for r in kl.rows if r.input.startswith("a=1 ")]
    special = [r for r in kl.rows if "vanishes" in r.input and r.expected == "True"]
    sa = replicate("special.a")
    astar = [r for r in sa.rows if r.kind == "check" and r.expected == "0"]
    ok = ok_v and len(generic) == 5 and special and astar and all(r.match for r in astar)
    return ok, (f"vanishing rows {n_v - len(bad_v)}/{n_v} (generic a=1: {len(generic)}, special zeros: "
                f"{len(special)}), special a value rows {sum(r.match for r in astar)}/{len(astar)}") \
        + _fmt_bad(bad_v), 120


def criterion_9():
    rng = random.Random(2024)
    bad = []
    pairs = 0
    for a in range(1, 6):
        for b in range(1, 7 - a):
            for k1 in basis_keys(a):
                for k2 in basis_keys(b):
                    f, g = Cochain({k1: Fraction(1)}), Cochain({k2: Fraction(1)})
                    pairs += 1
                    if insertion(f, g) != insertion_bruteforce(f, g):
                        bad.append(f"oracle {k1},{k2}")

    def rand_cochain():
        w = rng.randint(1, 3)
        keys = basis_keys(w, rng.choice((0, 1)))
        return Cochain({k: Fraction(rng.randint(-3, 3)) for k in rng.sample(keys, min(3, len(keys)))})

    triples = 0
    while triples < 200:
        x, y, z = rand_cochain(), rand_cochain(), rand_cochain()
        if not (x and y and z):
            continue
        triples += 1
        lhs = bracket(x, bracket(y, z))
        rhs = bracket(bracket(x, y), z) + bracket(y, bracket(x, z)) * (-1) ** (x.parity * y.parity)
        if lhs != rhs:
            bad.append("jacobi")
    for entry in catalog():
        for _, d in entry.instances():
            ds = as_series(d, 16)
            for n in range(1, 11):
                for b in basis_keys(n):
                    x = as_series(Cochain({b: Fraction(1)}), 16)
                    if bracket(bracket(x, ds, 16), ds, 16):
                        bad.append(f"DD {entry.id}")
    vals = [Fraction(v) for v in (-2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(0)]

    def rand_lin():
        while True:
            try:
                return LinearAutomorphism(*(rng.choice(vals) for _ in range(5)))
            except SingularAutomorphismError:
                pass

    probe = [psi(1, 1, 0, 2) + psi(1, 0, 1, 3, 2) + psi(0, 2, 0, 1), phi(0, 1, 2, 3) + phi(1, 0, 2, 1, 3)]
    for _ in range(50):
        lam, mu = rand_lin(), rand_lin()
        for x in probe:
            if pullback_linear(lam * mu, x) != pullback_linear(mu, pullback_linear(lam, x)):
                bad.append("action")
    forms = 0
    for _ in range(4):
        lam = rand_lin()
        for a in range(5):
            for b in range(5 - a):
                for z in (0, 1):
                    if a + b + z == 0:
                        continue
                    for j in (1, 2, 3):
                        forms += 1
                        if closed_form_pullback(lam, z, a, b, j) != pullback_linear(lam, phi(z, a, b, j)):
                            bad.append(f"closed form {z},{a},{b};{j}")
    return not bad, (f"oracle pairs {pairs}, Jacobi triples {triples}, D^2 on {len(catalog())} catalog families, "
                     f"action pairs 50, closed forms {forms}") + _fmt_bad(bad), 120


def _odd_cocycles(dN: Cochain, w: int):
    e = Echelon(track=True)
    for b in basis_keys(w, ODD):
        e.add(to_vector(bracket(Cochain({b: Fraction(1)}), dN)), b)
    return [Cochain(kv) for kv in e.kernel]


def criterion_10():
    # Odd cochains of one kind (all i1=1 with target w2/w3, or all i1=0 with
    # target w1) bracket to zero, and every lead below has a single-kind odd
    # cocycle space.  The quadratic right-hand side therefore vanishes on
    # every valid partial extension grown from these leads; the count of
    # nonzero ones is reported.  Invalid partials (top term perturbed by a
    # non-cocycle) must be rejected by the validity check.
    rng = random.Random(10)
    leads = [D22, D_STAR, D_SHARP, d_c(Fraction(1, 3)), d_c(Fraction(-1)), d_c(Fraction(0)),
             psi(1, 0, 0, 2), psi(0, 1, 0, 1), term(0, 1, 1, 1)]
    checked = 0
    nontrivial = 0
    rejected = 0
    bad = []
    while checked < 50:
        dN = rng.choice(leads)
        N = dN.weight
        comps = {N: dN}
        top = N + rng.randint(1, 4)
        for n in range(N, top + 1):
            partial = csum(*comps.values(), depth=n + N)
            rep = obstruction(partial, n)
            checked += 1
            nontrivial += bool(rep.rhs)
            if rep.failing_index is not None or not rep.is_cocycle:
                bad.append(f"{dN.render()} n={n}")
                break
            if not rep.solvable:
                break
            nxt = rep.solution
            for c in _odd_cocycles(dN, n + 1):
                nxt = nxt + c * rng.randint(-2, 2)
            if nxt:
                comps[n + 1] = nxt
            if checked >= 50:
                break
        if n > N:
            noise = next(Cochain({b: Fraction(1)}) for b in basis_keys(n, ODD)
                         if bracket(Cochain({b: Fraction(1)}), dN))
            broken = dict(comps)
            broken[n] = broken.get(n, Cochain()) + noise
            if obstruction(csum(*broken.values(), depth=n + N), n).failing_index != n:
                bad.append(f"invalid partial accepted {dN.render()} n={n}")
            rejected += 1
    searches = 0
    for k in (3, 4):
        base = csum(D22, psi(0, 0, k, 1))
        for _ in range(2):
            tail = [psi(0, p, w - p, 1, rng.randint(1, 3)) for w in range(k + 1, k + 4) for p in [rng.randint(0, w)]]
            res = equivalence_search(csum(base, *tail), base, 12)
            searches += 1
            if not res.found:
                bad.append(f"search k={k}")
    return not bad, (f"partial extensions {checked} ({nontrivial} with nonzero rhs), all rhs cocycles; "
                     f"invalid partials rejected {rejected}; same-kind searches {searches}") + _fmt_bad(bad), 60


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def run_criterion(n):
    t0 = time.perf_counter()
    ok, detail, limit = CRITERIA[n]()
    dt = time.perf_counter() - t0
    return ok and dt < limit, _line(n, ok, dt, limit, detail)


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in range(1, 11)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
