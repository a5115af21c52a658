import json
import random
from fractions import Fraction

import pytest

from linfext.automorphisms import IDENTITY, FormalAutomorphism, pullback_formal
from linfext.classification import (D_SHARP, D_STAR, alpha_k, beta_k, catalog, catalog_entry, csum, d_c, d_kl,
                                    eliminate_term, equivalence_search, eta, named_family, obstruction, phi_n,
                                    phi_prime, replicate, standard_form, table_ids, term, zeta)
from linfext.cochains import Cochain, as_series, bracket, phi, psi
from linfext.homology import coboundary, graded_cohomology


def test_catalog_examples():
    assert catalog_entry("d_sharp").codifferential == psi(1, 1, 0, 2) + psi(1, 1, 0, 3) + psi(1, 0, 1, 3)
    assert catalog_entry("d_c").build(c=Fraction(1, 3)) == psi(1, 1, 0, 2) + psi(1, 0, 1, 3, Fraction(1, 3))
    assert catalog_entry("d_star").codifferential == psi(1, 1, 0, 3)
    assert "2l != k+1" in catalog_entry("d_kl").constraint
    assert "k+1 = 2l" in catalog_entry("d_kl_special").constraint
    ids = [e.id for e in catalog()]
    assert len(ids) == len(set(ids))


def test_named_families_are_star_cocycles():
    for n in range(1, 6):
        assert not bracket(phi_n(n), D_STAR)
        assert not bracket(phi_prime(n), D_STAR)
    assert named_family("alpha", k=2).value == alpha_k(2)
    with pytest.raises(ValueError):
        zeta(3, 3)
    with pytest.raises(KeyError):
        named_family("nope")
    assert eta(4, 0, 2).weight == 4 and beta_k(1).parity == 0


def test_obstruction_examples():
    r = obstruction(D_STAR, 5)
    assert not r.rhs and r.solvable and not r.solution
    r = obstruction(csum(psi(0, 2, 0, 1), psi(0, 0, 3, 1)), 6)
    assert not r.rhs and r.is_cocycle
    r = obstruction(csum(D_STAR, phi(0, 0, 2, 1)), 3)
    assert r.failing_index == 2
    r = obstruction(csum(D_STAR, psi(0, 0, 2, 1)), 3)
    assert r.failing_index == 2  # mixed kinds: the weight-2 relation fails


def test_obstruction_nonzero_rhs_is_cocycle():
    # d_sharp + a first-kind term: the rhs in the next weight
    d = csum(D_SHARP, psi(1, 0, 2, 3))
    r = obstruction(d, 3)
    assert r.is_cocycle


def test_eliminate_examples():
    r = eliminate_term(csum(psi(0, 2, 0, 1), psi(0, 1, 3, 1)), 4, 10)
    assert r.removable and not r.codifferential.component(4)
    assert r.automorphism.factors[0].leading() == phi(0, 0, 3, 2) * Fraction(-1, 2)
    d = csum(D_STAR, psi(1, 0, 2, 2), psi(1, 0, 3, 3))
    r = eliminate_term(d, 4, 10)
    assert r.removable
    assert r.codifferential.component(2) == D_STAR and r.codifferential.component(3) == psi(1, 0, 2, 2)
    d0a = csum(psi(1, 1, 0, 2), psi(1, 0, 2, 3), psi(1, 0, 3, 3))
    assert not eliminate_term(d0a, 4, 10).removable


def test_standard_form_never_reintroduces():
    d = csum(D_STAR, psi(1, 0, 2, 2), psi(1, 0, 3, 3), psi(1, 0, 5, 2))
    out, g = standard_form(d, 9)
    assert out.component(2) == D_STAR and out.component(3) == psi(1, 0, 2, 2)
    assert pullback_formal(g, as_series(d, 9)) == out
    assert not bracket(out, out, 9)


def test_search_examples():
    base = csum(psi(0, 2, 0, 1), psi(0, 0, 4, 1))
    tail = graded_cohomology(psi(0, 2, 0, 1), 6).representatives
    odd = [r for r in tail if r.parity == 1][0]
    res = equivalence_search(csum(base, odd), base, 10)
    assert res.found
    assert pullback_formal(res.automorphism, as_series(csum(base, odd), 10)) == as_series(base, 10)
    d0a = csum(psi(1, 1, 0, 2), psi(1, 0, 2, 3), psi(1, 0, 3, 3))
    de = csum(psi(1, 1, 0, 2), psi(1, 0, 2, 3))
    res = equivalence_search(d0a, de, 10)
    assert not res.found and res.stuck_weight == 4
    assert equivalence_search(D_STAR, D_STAR, 8).found
    res = equivalence_search(D_STAR, D_SHARP, 8)
    assert not res.found and res.reason == "leading terms differ"


def test_search_dsharp_with_cocycle_tails():
    """d_sharp has no cohomology above weight 2, so any first-kind cocycle tail can be removed."""
    rng = random.Random(2)
    for w in (3, 4):
        x = Cochain()
        for p in range(w):
            x = x + phi(0, p, w - p, rng.choice((2, 3)), rng.randint(-2, 2)) + phi(1, p, w - p - 1, 1, rng.randint(-2, 2))
        tail = bracket(x, D_SHARP)
        assert tail and all(k[0] == 1 and k[3] in (2, 3) for k in tail.terms)
        d = csum(D_SHARP, tail)
        assert not bracket(d, d)
        res = equivalence_search(d, D_SHARP, 9)
        assert res.found


def test_search_recovers_known_generator():
    d0 = as_series(csum(psi(0, 2, 0, 1), psi(0, 0, 3, 1)), 10)
    g = FormalAutomorphism(IDENTITY, [phi(0, 0, 2, 2) + phi(0, 1, 1, 3)], 10)
    d1 = pullback_formal(g, d0)
    res = equivalence_search(d0, d1, 10)
    assert res.found and pullback_formal(res.automorphism, d0) == d1


def test_table_report_schema():
    rep = replicate("prodform", k=2, m=1)
    data = json.loads(rep.to_json())
    assert set(data) == {"table_id", "rows", "status"}
    assert set(data["rows"][0]) >= {"input", "expected", "computed", "citation", "match"}
    assert data["status"] == "match" and data["rows"][0]["expected"] == "psi[1,0,3;3]"
    with pytest.raises(KeyError):
        replicate("no.such.table")


@pytest.mark.parametrize("tid", ["deg1.first", "d22", "d22.H", "dc", "dc.H", "dc.m.H", "dneg.H", "dca", "dm1.H",
                                 "dstar", "dstar.H", "dstar.stab", "dstar.k.H", "dkl.recursion", "dklm.recur",
                                 "prodform", "case1.odd"])
def test_matching_tables(tid):
    assert replicate(tid).status == "match"


def test_every_table_runs():
    for tid in table_ids():
        rep = replicate(tid)
        assert rep.rows and rep.status in ("match", "mismatch")


def test_dc_cases_sample():
    # 1/c integer case: H^3 = <phi^{0,0,3}_2> at c = 1/3
    rep = graded_cohomology(d_c(Fraction(1, 3)), 3)
    assert rep.dims == (1, 0)
    assert rep.representatives[0] == phi(0, 0, 3, 2)
