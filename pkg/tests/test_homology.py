import json
from fractions import Fraction

import pytest

from linfext.classification import D_SHARP, D_STAR, alpha_k, csum, d_c, phi_n, phi_prime, term
from linfext.cochains import Cochain, as_series, basis_keys, phi, psi
from linfext.homology import (DepthError, MixedDegreeError, NotACocycleError, coboundary, coboundary_matrix,
                              extend_cocycle, filtered_cohomology, graded_cohomology, is_cocycle,
                              is_leading_coboundary, series_normal_form)


def test_coboundary_matrix_shape():
    for n in range(1, 5):
        sources, targets, m = coboundary_matrix(D_STAR, n)
        assert len(sources) == 6 * n + 3
        assert len(m) == len(targets) and all(len(r) == len(sources) for r in m)


@pytest.mark.parametrize("d, n, dims", [
    (psi(0, 2, 0, 1), 3, (3, 1)),
    (D_STAR, 2, (2, 2)),
    (D_SHARP, 5, (0, 0)),
])
def test_graded_dims(d, n, dims):
    rep = graded_cohomology(d, n)
    assert rep.dims == dims
    assert json.loads(rep.to_json())["even_dim"] == dims[0]


def test_graded_rejects_mixed():
    with pytest.raises(MixedDegreeError):
        graded_cohomology(csum(D_STAR, psi(1, 0, 2, 2)), 2)


def test_is_cocycle_examples():
    assert is_cocycle(D_STAR, phi_prime(2))
    assert not is_cocycle(D_STAR, phi(0, 1, 1, 2))
    assert is_cocycle(D_STAR, Cochain())


def test_leading_coboundary_examples():
    de = as_series(csum(D_STAR, psi(1, 0, 2, 3)), 6)
    assert coboundary(de, phi_n(3) * Fraction(-1, 2), 6) == as_series(psi(1, 0, 4, 3), 6)
    assert is_leading_coboundary(de, psi(1, 0, 4, 3), 6).achieved
    d = as_series(csum(psi(0, 2, 0, 1), psi(0, 0, 3, 1)), 8)
    sol = is_leading_coboundary(d, psi(0, 0, 5, 1), 8)
    assert sol.achieved
    got = coboundary(d, sol.preimage, 8)
    assert got.order == 5 and got.leading() == psi(0, 0, 5, 1)
    # the secondary term of d_{0,a} is not a leading coboundary of d_e
    de = as_series(csum(psi(1, 1, 0, 2), psi(1, 0, 2, 3)), 10)
    assert not is_leading_coboundary(de, psi(1, 0, 3, 3), 10).achieved
    with pytest.raises(DepthError):
        is_leading_coboundary(de, psi(1, 0, 3, 3), 3)


def test_extend_cocycle_examples():
    de = as_series(csum(D_STAR, psi(1, 0, 2, 2)), 12)
    assert extend_cocycle(de, phi_prime(3), 12).extends
    r = extend_cocycle(de, phi_prime(2), 12)
    assert r.obstruction == psi(1, 0, 3, 3) and r.obstruction_weight == 4
    ext = extend_cocycle(de, phi_prime(3), 12).extended
    assert not coboundary(de, ext, 12)
    with pytest.raises(NotACocycleError):
        extend_cocycle(de, phi(0, 1, 1, 2), 12)


def test_filtered_examples():
    d = csum(psi(0, 2, 0, 1), psi(0, 0, 3, 1))
    rep = filtered_cohomology(d, 4, 12)
    assert rep.dims == (2, 0) and rep.certified_to == 12
    d = csum(psi(1, 1, 0, 2), psi(1, 0, 1, 3, -1), alpha_k(1))
    rep = filtered_cohomology(d, 6, 12)
    assert rep.dims == (0, 1)
    assert extend_cocycle(as_series(d, 12), alpha_k(2), 12).extends
    with pytest.raises(DepthError):
        filtered_cohomology(d, 6, 4)


def test_normal_form_examples():
    d = as_series(csum(D_STAR, psi(1, 0, 2, 2), psi(1, 0, 3, 3)), 6)
    nf, _ = series_normal_form(d, psi(1, 1, 1, 3) + psi(1, 0, 4, 3) * Fraction(1, 4), 6)
    assert not nf
    de = as_series(csum(D_STAR, psi(1, 0, 2, 2)), 6)
    nf, _ = series_normal_form(de, psi(1, 2, 0, 2) + psi(1, 0, 3, 2) * 2, 6)
    assert not nf
    # idempotence
    x = psi(1, 0, 3, 3) + psi(1, 2, 2, 2)
    nf, _ = series_normal_form(de, x, 6)
    nf2, _ = series_normal_form(de, nf, 6)
    assert nf2 == nf


def test_graded_representatives_are_independent_classes():
    for n in range(1, 6):
        rep = graded_cohomology(d_c(Fraction(-1)), n)
        for r in rep.representatives:
            assert not coboundary(d_c(Fraction(-1)), r)
