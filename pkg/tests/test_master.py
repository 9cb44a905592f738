import random
from fractions import Fraction

import pytest

from spinorforms.blades import DegreeError, Multivector, gen_product, hodge, wedge_all
from spinorforms.g2 import project_27, split_three_form
from spinorforms.master import (decompose_a, expanded_rhs, isotropic_rhs, master_rhs,
                                reconstruct, reduced_rhs, scalar_redundancy)
from spinorforms.spinors import build_module, first_order_square_variation
from spinorforms.squares import isotropic_factorize


def random_low(rng, density=0.3):
    return Multivector({m: Fraction(rng.randint(-3, 3)) for m in range(128)
                        if m.bit_count() <= 3 and rng.random() < density})


def kappa27_free(S, a):
    q1, q7, _ = split_three_form(S, a.grade(3))
    return a - a.grade(3) + q1 + q7


@pytest.mark.parametrize("l", [1, -1])
def test_master_equals_expanded(Q, l):
    rng = random.Random(l)
    for _ in range(15):
        a_v = random_low(rng)
        f = Fraction(rng.randint(-3, 3))
        phi = random_low(rng).grade(3)
        rhs = master_rhs(Q, l, a_v, phi + f)
        scalar, three = expanded_rhs(Q, l, a_v, f, phi)
        assert rhs.scalar_part() == scalar and rhs.grade(3) == three
        assert not rhs.grade(1) and not rhs.grade(2)


@pytest.mark.parametrize("l", [1, -1])
@pytest.mark.parametrize("mu", [1, -1])
def test_square_variation_matches_master(fixture_data, l, mu):
    # ∇ε = γ(𝔞)ε moves the square of either sign by the same right-hand side
    m = build_module(fixture_data["signs"], l)
    rng = random.Random(4)
    for _ in range(8):
        a_v = random_low(rng)
        eps = [Fraction(rng.randint(-3, 3)) for _ in range(8)]
        assert first_order_square_variation(m, a_v, eps, mu) == master_rhs(
            m.space, l, a_v, m.square(eps, mu))


def test_decomposition_round_trip(S):
    rng = random.Random(0)
    for _ in range(5):
        a_v = random_low(rng)
        two, three = reconstruct(S, decompose_a(S, a_v))
        assert two == a_v.grade(2) and three == a_v.grade(3)


def test_reduced_system(S):
    rng = random.Random(1)
    for _ in range(8):
        a_v = kappa27_free(S, random_low(rng))
        rep = reduced_rhs(S, a_v, S.c)
        assert not rep["obstruction"]
        assert rep["identity_holds"] and rep["collected_form_holds"]


def test_sigma14_does_not_enter(S):
    rng = random.Random(5)
    for _ in range(5):
        a_v = random_low(rng)
        sigma14 = decompose_a(S, a_v).sigma14
        _, with14 = expanded_rhs(S.Q, S.l, a_v, S.c, S.phi)
        _, without14 = expanded_rhs(S.Q, S.l, a_v - sigma14, S.c, S.phi)
        assert with14 == without14


def test_kappa27_is_reported_and_drops_out(S):
    rng = random.Random(2)
    seen = 0
    for _ in range(8):
        a_v = random_low(rng)
        rep = reduced_rhs(S, a_v, S.c)
        assert rep["obstruction"] == project_27(S, a_v.grade(3))
        assert not rep["kappa27_contribution"]
        assert rep["identity_holds"]
        if rep["obstruction"]:
            seen += 1
            # the collected form with −4fκ27 is wrong exactly when κ27 ≠ 0
            assert not rep["collected_form_holds"]
    assert seen


def test_kappa27_annihilates_the_spinor(S, module):
    # γ(κ27) kills the spinor whose square is (1 + φ)/8
    eps = [1, 1, 1, 1, 1, -1, -1, 1]
    k27 = project_27(S, Multivector.e(1, 2, 3))
    assert k27
    assert module.clifford_action(k27, eps) == [0] * 8
    assert not (k27 * (2 * S.c) + hodge(S.Q, gen_product(S.Q, k27, S.phi, 1)) * (2 * S.l))


def test_reduced_rejects_wrong_f(S):
    with pytest.raises(ValueError):
        reduced_rhs(S, Multivector(), S.c + 1)


def test_scalar_redundancy(S):
    rng = random.Random(3)
    for _ in range(5):
        a_v = random_low(rng)
        scalar, three = expanded_rhs(S.Q, S.l, a_v, S.c, S.phi)
        assert scalar_redundancy(S, scalar, three)


def test_isotropic_rhs(Qnull):
    tri = isotropic_factorize(Qnull, Multivector.e(1, 2, 3))
    rng = random.Random(4)
    for _ in range(10):
        a_v = random_low(rng)
        l = rng.choice((1, -1))
        rhs, constraint = isotropic_rhs(Qnull, l, a_v, tri)
        scalar, three = expanded_rhs(Qnull, l, a_v, 0, wedge_all(*tri))
        assert rhs == three and scalar == -2 * constraint


def test_isotropic_rhs_rejects_bad_triples(Q, Qnull):
    with pytest.raises(ValueError):
        isotropic_rhs(Q, 1, Multivector(), (Multivector.e(1), Multivector.e(2), Multivector.e(3)))
    with pytest.raises(DegreeError):
        isotropic_rhs(Qnull, 1, Multivector(), (Multivector.e(1, 2),) * 3)


def test_degree_checks(Q):
    with pytest.raises(DegreeError):
        master_rhs(Q, 1, Multivector.e(1, 2, 3, 4), Multivector())
