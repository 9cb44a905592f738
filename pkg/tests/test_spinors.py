import random
from fractions import Fraction

import pytest

from spinorforms import linalg
from spinorforms.blades import LOW_MASKS, DegreeError, Multivector, geo_product, inner
from spinorforms.spinors import (build_module, commutator_derivation, dequantize,
                                 first_order_square_variation, matrix_commutator, parse_spinor)
from spinorforms.squares import check_square_conditions


def random_spinor(rng):
    while True:
        eps = [Fraction(rng.randint(-3, 3)) for _ in range(8)]
        if any(eps):
            return eps


@pytest.mark.parametrize("signs", ["++++---", "+-+-+-+", "---++++"])
@pytest.mark.parametrize("l", [1, -1])
def test_module_relations(signs, l):
    m = build_module(signs, l)
    eye = linalg.identity(8)
    for i in range(7):
        for j in range(7):
            ac = linalg.matadd(linalg.matmul(m.gammas[i], m.gammas[j]),
                               linalg.matmul(m.gammas[j], m.gammas[i]))
            assert ac == linalg.matscale(eye, 2 * m.space.inverse_metric[i][j])
    assert m.gamma_volume() == linalg.matscale(eye, l)
    assert m.pairing_space_dim() == 1
    assert m.pairing == linalg.transpose(m.pairing)
    # admissibility: γᵀB = −Bγ for every generator
    for g in m.gammas:
        assert linalg.matmul(linalg.transpose(g), m.pairing) == linalg.matscale(
            linalg.matmul(m.pairing, g), -1)
    first = next(x for row in m.pairing for x in row if x)
    assert first == 1


def test_quantization_is_an_isomorphism(module):
    assert module.quantize_rank() == 64
    rng = random.Random(0)
    for _ in range(10):
        a = Multivector({mk: Fraction(rng.randint(-2, 2)) for mk in rng.sample(LOW_MASKS, 5)})
        assert module.dequantize(module.quantize(a)) == a


def test_quantize_rejects_high_degree(module):
    with pytest.raises(DegreeError):
        module.quantize(Multivector.e(1, 2, 3, 4))


def test_gamma_is_multiplicative(module):
    # γ is an algebra morphism for ⋄ on the full exterior algebra
    rng = random.Random(1)
    Q = module.space
    for _ in range(20):
        a = Multivector.blade(rng.randrange(128), rng.randint(1, 3))
        b = Multivector.blade(rng.randrange(128), rng.randint(1, 3))
        assert module.gamma(geo_product(Q, a, b)) == linalg.matmul(module.gamma(a), module.gamma(b))


def test_square_identities(module):
    rng = random.Random(2)
    Q = module.space
    for _ in range(15):
        eps = random_spinor(rng)
        for mu in (1, -1):
            alpha = module.square(eps, mu)
            assert alpha == module.square_sum_formula(eps, mu)
            assert alpha.scalar_part() == mu * module.B(eps, eps) / 8
        phi = module.square(eps).grade(3)
        assert module.B(eps, eps) ** 2 == Fraction(-64, 7) * inner(Q, phi, phi)
        assert not module.square(eps).grade(1) and not module.square(eps).grade(2)


def test_squares_pass_classifier(module):
    rng = random.Random(3)
    kinds = set()
    for _ in range(6):
        eps = random_spinor(rng)
        verdict = check_square_conditions(module.space, module.l, module.square(eps))
        assert verdict.is_square
        kinds.add(verdict.kind)
    e0 = [1, 0, 0, 0, 0, 0, 0, 0]
    assert module.classify(e0) == {"pseudo_norm": 0, "isotropic": True}
    verdict = check_square_conditions(module.space, module.l, module.square(e0))
    assert verdict.is_square and verdict.kind == "isotropic"


def test_equivariance(module):
    rng = random.Random(4)
    Q = module.space
    for _ in range(8):
        omega = Multivector({mk: Fraction(rng.randint(-2, 2)) for mk in LOW_MASKS if mk.bit_count() == 2})
        a = Multivector({mk: Fraction(rng.randint(-2, 2)) for mk in rng.sample(LOW_MASKS, 6)})
        comm = geo_product(Q, omega, a) - geo_product(Q, a, omega)
        assert commutator_derivation(Q, omega, a) == comm
        assert dequantize(module, matrix_commutator(module.gamma(omega), module.gamma(a))) == comm
        eps = random_spinor(rng)
        s = module.square(eps)
        assert first_order_square_variation(module, omega, eps) == (
            geo_product(Q, omega, s) - geo_product(Q, s, omega))


def test_rejects_wrong_signature():
    with pytest.raises(ValueError):
        build_module("+++++--")


@pytest.mark.parametrize("text", ["1,2,3", "1,2,3,4,5,6,7,x", ""])
def test_parse_spinor_errors(text):
    with pytest.raises(ValueError):
        parse_spinor(text)


def test_parse_spinor():
    assert parse_spinor("1, -1/2, 0, 0, 0, 0, 0, 3") == [1, Fraction(-1, 2), 0, 0, 0, 0, 0, 3]
