import random

import pytest

from spinorforms import linalg
from spinorforms.blades import (DegreeError, Multivector, QuadraticSpace, gen_product, hodge,
                                inner, interior, parse_multivector, wedge)
from spinorforms.g2 import (CANONICAL_PHI, IrrationalScaleError, canonical_structure,
                            check_g2star, decomposition_ranks, lambda27_embed,
                            lemma_identities_report, project_27, random_structure,
                            random_traceless_symmetric, search_canonical_fixtures,
                            split_three_form, split_two_form, three_form_operator_trace,
                            three_form_seven_covector, transform_form, cayley, random_so_element)

PHI = parse_multivector(CANONICAL_PHI)


def test_fixture_search():
    found = search_canonical_fixtures()
    assert {f["signs"] for f in found} == {"++++---"}
    assert {(f["l"], f["kappa"]) for f in found} == {(1, -1), (-1, 1)}


def test_canonical_structure(S, fixture_data):
    assert inner(S.Q, S.phi, S.phi) == -7
    assert (S.l, S.kappa, S.c) == (fixture_data["l"], fixture_data["kappa"], 1)
    assert S.phi * (6 * S.kappa * S.c) == hodge(S.Q, gen_product(S.Q, S.phi, S.phi, 1)) * S.l


def test_flipping_l_flips_kappa(S):
    T = check_g2star(S.Q, -S.l, S.phi)
    assert T is not None and T.kappa == -S.kappa and T.c == -S.c


def test_positive_norm_is_rejected():
    assert check_g2star(QuadraticSpace.diagonal("+++++++"), 1, PHI) is None


def test_irrational_scale(S):
    # ⟨φ + e³⁴⁵, φ + e³⁴⁵⟩ = −7 ± 1 and neither 6/7 nor 8/7 is a rational square
    with pytest.raises(IrrationalScaleError):
        check_g2star(S.Q, S.l, S.phi + Multivector.e(3, 4, 5))


def test_rejects_non_three_form(S):
    with pytest.raises(DegreeError):
        check_g2star(S.Q, S.l, S.phi + 1)


def test_scaled_structure():
    S2 = canonical_structure(2)
    assert S2.c == 2 and inner(S2.Q, S2.phi, S2.phi) == -28


def test_decomposition_ranks(S):
    r = decomposition_ranks(S)
    assert (r["two_7"], r["two_14"], r["two_total"]) == (7, 14, 21)
    assert (r["three_1"], r["three_7"], r["three_27"], r["three_total"]) == (1, 7, 27, 35)


def test_two_form_eigenvalues(S):
    # *(φ∧·) acts by 2lc on Λ²₇ and by −lc on Λ²₁₄
    for k in range(1, 8):
        v = [0] * 7
        v[k - 1] = 1
        w = interior(v, S.phi)
        assert hodge(S.Q, wedge(S.phi, w)) == w * (2 * S.l * S.c)
    omega = parse_multivector("e12 - e34")
    p7, p14 = split_two_form(S, omega)
    assert p7 + p14 == omega
    assert hodge(S.Q, wedge(S.phi, p14)) == p14 * (-S.l * S.c)


def test_three_form_split(S):
    rho = parse_multivector("e123 + 2*e145 - e367")
    q1, q7, q27 = split_three_form(S, rho)
    assert q1 + q7 + q27 == rho
    assert project_27(S, q27) == q27
    theta = three_form_seven_covector(S, q7)
    assert hodge(S.Q, wedge(S.phi, theta)) == q7


def test_split_rejects_wrong_degree(S):
    with pytest.raises(DegreeError):
        split_two_form(S, Multivector.e(1, 2, 3))


def test_lambda27_embedding(S):
    rng = random.Random(0)
    for _ in range(3):
        A = random_traceless_symmetric(S.Q, rng)
        rho = lambda27_embed(S, A)
        assert rho and project_27(S, rho) == rho
    with pytest.raises(ValueError):
        lambda27_embed(S, linalg.identity(7))


@pytest.mark.parametrize("scale", [1, 2])
def test_lemma_identities(scale):
    rep = lemma_identities_report(canonical_structure(scale), random.Random(scale), samples=6)
    assert rep["item1"] and rep["item2"] and rep["item3"] and rep["item4"]
    assert not rep["item4_with_factor_3"]


def test_three_form_operator_is_traceless(S):
    # eigenvalues 6lc (once), 3lc (7 times) and λ (27 times) sum to zero, so λ = −lc
    assert three_form_operator_trace(S) == 0
    assert hodge(S.Q, gen_product(S.Q, S.phi, S.phi, 1)) == S.phi * (6 * S.l * S.c)


def test_rotated_structure(S):
    R = random_structure(S, random.Random(3))
    assert R.phi != S.phi and R.c == S.c and R.l == S.l
    rep = lemma_identities_report(R, random.Random(4), samples=4)
    assert rep["item1"] and rep["item2"] and rep["item3"] and rep["item4"]


def test_cayley_preserves_metric(S):
    g = cayley(S.Q, random_so_element(S.Q, random.Random(5)))
    h = [list(r) for r in S.Q.metric]
    # vectors transform by g; the metric on vectors is h
    assert linalg.matmul(linalg.transpose(g), linalg.matmul(h, g)) == h
    assert inner(S.Q, transform_form(g, PHI), transform_form(g, PHI)) == -7
