import random
from fractions import Fraction

import pytest

from spinorforms.blades import Multivector, inner, parse_multivector, wedge_all
from spinorforms.g2 import CANONICAL_PHI
from spinorforms.squares import (ISOTROPIC, NON_ISOTROPIC, NOT_A_SQUARE, WitnessRejectedError,
                                 check_nondegenerate, check_square_conditions, find_witness,
                                 is_isotropic_orthogonal, isotropic_factorize,
                                 isotropic_normalized_equation)
from spinorforms.verify import random_perturbations, isotropic_rejects

PHI = parse_multivector(CANONICAL_PHI)


def test_canonical_non_isotropic_square(S):
    alpha = (PHI + 1) * Fraction(1, 8)
    verdict = check_square_conditions(S.Q, S.l, alpha)
    assert verdict.is_square and verdict.kind == NON_ISOTROPIC
    assert verdict.c == Fraction(1, 8)
    assert inner(S.Q, alpha.grade(3), alpha.grade(3)) == -7 * verdict.c ** 2


def test_square_matches_module(S, module):
    # ε = (1,1,1,1,1,−1,−1,1) has 𝓔^{−1}(ε) = 1 + φ_can, so ε/√8 squares to (1 + φ_can)/8
    eps = [1, 1, 1, 1, 1, -1, -1, 1]
    assert module.square(eps, mu=-1) == PHI + 1
    assert check_square_conditions(S.Q, S.l, module.square(eps, mu=-1)).is_square


def test_null_isotropic_square(Qnull):
    alpha, beta = Multivector.e(1, 2, 3), Multivector.e(4, 5, 6)
    for l in (1, -1):
        verdict = check_square_conditions(Qnull, l, alpha, beta)
        assert verdict.is_square and verdict.kind == ISOTROPIC
        assert wedge_all(*verdict.triple) == alpha


def test_degree_one_is_not_a_square(Q):
    verdict = check_square_conditions(Q, 1, Multivector.e(1))
    assert not verdict.is_square and verdict.kind == NOT_A_SQUARE
    assert "pi_tau_invariance" in verdict.failures


def test_witness_rejected(Qnull):
    with pytest.raises(WitnessRejectedError):
        check_square_conditions(Qnull, 1, Multivector.e(1, 2, 3), Multivector.e(1, 4, 5))


def test_e124_is_not_a_square(Qnull):
    assert not check_square_conditions(Qnull, 1, Multivector.e(1, 2, 4)).is_square
    assert isotropic_factorize(Qnull, Multivector.e(1, 2, 4)) is None


def test_check_nondegenerate(S):
    assert check_nondegenerate(S.Q, S.l, S.c, PHI)
    assert not check_nondegenerate(S.Q, S.l, 1, Multivector())


def test_check_nondegenerate_isotropic_example(Qnull):
    assert check_nondegenerate(Qnull, 1, 0, Multivector.e(1, 2, 3))


def test_factorize_examples(Q, Qnull):
    tri = isotropic_factorize(Qnull, Multivector.e(1, 2, 3))
    assert tri is not None and wedge_all(*tri) == Multivector.e(1, 2, 3)
    assert is_isotropic_orthogonal(Qnull, tri)
    assert isotropic_factorize(Q, PHI) is None
    assert isotropic_factorize(Qnull, parse_multivector("e123 + e145")) is None


def test_factorize_rotated_triple(Qnull):
    # a unimodular change of basis inside the isotropic 3-space
    a = Multivector.e(1) + Multivector.e(2) * 2
    b = Multivector.e(2) - Multivector.e(3)
    c = Multivector.e(3) * 3
    alpha = wedge_all(a, b, c)
    tri = isotropic_factorize(Qnull, alpha)
    assert wedge_all(*tri) == alpha and is_isotropic_orthogonal(Qnull, tri)


def test_random_non_squares_rejected(S):
    rng = random.Random(0)
    masks3 = [m for m in range(128) if m.bit_count() == 3]
    for _ in range(15):
        alpha = Multivector({m: Fraction(rng.randint(-2, 2)) for m in rng.sample(masks3, 3)})
        alpha = alpha + rng.randint(1, 3)
        assert not check_square_conditions(S.Q, S.l, alpha).is_square


def test_witness_exists_for_nonzero_squares(module):
    rng = random.Random(1)
    for _ in range(5):
        eps = [Fraction(rng.randint(-2, 2)) for _ in range(8)]
        alpha = module.square(eps)
        if alpha:
            assert find_witness(module.space, module.l, alpha) is not None


def test_zero_is_classified_isotropic(Q):
    verdict = check_square_conditions(Q, 1, Multivector())
    assert verdict.is_square and verdict.kind == ISOTROPIC and verdict.triple is None


def test_scale_covariant_condition_does_not_fix_scale(Qnull):
    # b·ε¹²³ passes the witness conditions for every b ≠ 0; only the
    # normalised equation α∨β∨α = −8α forces b² = 1
    beta = Multivector.e(4, 5, 6)
    for b in (Fraction(2), Fraction(-1, 3)):
        alpha = Multivector.e(1, 2, 3) * b
        assert check_square_conditions(Qnull, 1, alpha, beta).is_square
        assert not isotropic_normalized_equation(Qnull, 1, alpha, beta)


def test_perturbations_rejected(Qnull):
    rng = random.Random(7)
    beta = Multivector.e(4, 5, 6)
    for alpha in random_perturbations(rng, 60):
        assert isotropic_rejects(Qnull, rng.choice((1, -1)), alpha, beta)
    assert not isotropic_rejects(Qnull, 1, Multivector.e(1, 2, 3), beta)
    # for a fixed witness the equation is quadratic in α: −ε¹²³ needs the witness −β
    assert isotropic_rejects(Qnull, 1, -Multivector.e(1, 2, 3), beta)
    assert not isotropic_rejects(Qnull, 1, -Multivector.e(1, 2, 3), -beta)


def test_verdict_json(Qnull):
    out = check_square_conditions(Qnull, 1, Multivector.e(1, 2, 3)).to_json()
    assert out["kind"] == ISOTROPIC and out["c"] == "0" and len(out["triple"]) == 3
