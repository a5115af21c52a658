import random
from fractions import Fraction

from linfext.automorphisms import (IDENTITY, FormalAutomorphism, LinearAutomorphism, SingularAutomorphismError,
                                   closed_form_pullback, exp_ad, invert_linear, pullback_formal, pullback_linear)
from linfext.cochains import Cochain, as_series, basis_keys, bracket, phi, psi

import pytest

VALS = [Fraction(x) for x in (-2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(0)]


def random_linear(rng):
    while True:
        try:
            return LinearAutomorphism(*(rng.choice(VALS) for _ in range(5)))
        except SingularAutomorphismError:
            continue


def test_action_property_50_pairs():
    rng = random.Random(3)
    f = psi(1, 1, 0, 2) + psi(1, 0, 1, 3) * 2 + psi(0, 2, 0, 1)
    g = phi(0, 1, 2, 3) + phi(1, 0, 2, 1) * 3
    for _ in range(50):
        lam, mu = random_linear(rng), random_linear(rng)
        for x in (f, g):
            assert pullback_linear(lam * mu, x) == pullback_linear(mu, pullback_linear(lam, x))


def test_inverse_and_identity():
    rng = random.Random(4)
    for _ in range(10):
        lam = random_linear(rng)
        assert lam * invert_linear(lam) == IDENTITY
        x = psi(1, 2, 1, 3)
        assert pullback_linear(invert_linear(lam), pullback_linear(lam, x)) == x


def test_pullback_respects_bracket():
    rng = random.Random(6)
    f, g = psi(1, 1, 0, 2), phi(0, 1, 1, 3)
    for _ in range(10):
        lam = random_linear(rng)
        assert pullback_linear(lam, bracket(f, g)) == bracket(pullback_linear(lam, f), pullback_linear(lam, g))


def test_closed_forms_small_indices():
    rng = random.Random(8)
    lams = [random_linear(rng) for _ in range(6)]
    for lam in lams:
        for a in range(5):
            for b in range(5 - a):
                for z in (0, 1):
                    if a + b + z == 0:
                        continue
                    for j in (1, 2, 3):
                        assert closed_form_pullback(lam, z, a, b, j) == pullback_linear(lam, phi(z, a, b, j)), \
                            (lam, z, a, b, j)


def test_singular_rejected():
    with pytest.raises(SingularAutomorphismError):
        LinearAutomorphism(1, 1, 1, 1, 1)


def test_exp_ad_preserves_codifferential():
    d = as_series(psi(0, 2, 0, 1) + psi(0, 0, 3, 1), 10)
    alpha = phi(0, 0, 2, 2) + phi(0, 1, 1, 3)
    e = exp_ad(alpha, d, 10)
    assert not bracket(e, e, 10)
    g = FormalAutomorphism(IDENTITY, [alpha], 10)
    assert pullback_formal(g, d) == e


def test_exp_ad_rejects_weight_one():
    with pytest.raises(ValueError):
        exp_ad(phi(0, 1, 0, 2), psi(1, 1, 0, 3), 6)
