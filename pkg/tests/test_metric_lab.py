import random
from fractions import Fraction

import numpy as np
import pytest

from spinorforms.metric_lab import (AnsatzMetric, ContorsionField, PreconditionError,
                                    check_displayed_formulas, connection_torsion,
                                    contorsion_minimal, involutivity_check, lc_parallel_report,
                                    load_data, numeric_scalar_curvature, random_ansatz,
                                    sample_points, scalar_curvature, scalar_flat_condition,
                                    torsion, torsion_cross_check, vanishing_components)


@pytest.fixture(scope="module")
def flat():
    return AnsatzMetric.from_json(load_data("ansatz_scalar_flat.json"))


@pytest.fixture(scope="module")
def lc():
    return AnsatzMetric.from_json(load_data("ansatz_lc.json"))


@pytest.fixture(scope="module")
def generic():
    return AnsatzMetric.from_strings(["y1^2*z + x2", "x1*y2*y3", "z^2 - y1"],
                                     ["1 + y2^2", "2 + x1*z", "1"], "1 + y3^2")


def test_metric_is_inverted(generic):
    m, inv = generic.metric(), generic.inverse()
    for i in range(7):
        for j in range(7):
            acc = sum((m[i][k] * inv[k][j] for k in range(7)), start=m[0][0] * 0)
            assert acc.is_zero() == (i != j)


def test_christoffel_against_finite_differences(generic):
    pt = [Fraction(1, 2), Fraction(1, 3), Fraction(-1), Fraction(2), Fraction(1), Fraction(1, 4), Fraction(1, 2)]
    gam = generic.christoffel()
    h = 1e-5

    def g(p):
        return np.array([[float(x.eval_float(p)) for x in row] for row in generic.metric()])

    x = np.array([float(c) for c in pt])
    dg = []
    for c in range(7):
        e = np.zeros(7)
        e[c] = h
        dg.append((g(x + e) - g(x - e)) / (2 * h))
    ginv = np.linalg.inv(g(x))
    for k in range(7):
        for i in range(7):
            for j in range(7):
                num = 0.5 * sum(ginv[k, l] * (dg[i][l, j] + dg[j][l, i] - dg[l][i, j]) for l in range(7))
                assert abs(float(gam[k][i][j].eval(pt)) - num) < 1e-6


def test_displayed_formulas_on_random_ansatze():
    rng = random.Random(0)
    for _ in range(4):
        rep = check_displayed_formulas(random_ansatz(rng))
        assert rep["z_column"] and rep["y_columns"] and rep["full_tensor"]


def test_printed_sign_of_full_formula_fails(generic):
    assert not check_displayed_formulas(generic)["full_tensor_as_printed"]


def test_contorsion(generic):
    A = contorsion_minimal(generic)
    assert A.is_antisymmetric()
    assert involutivity_check(generic, A)
    assert vanishing_components(A)
    # the normalisation with ½A on the left is off by a factor of four
    assert not involutivity_check(generic, contorsion_minimal(generic, scale=2))
    assert not involutivity_check(generic, ContorsionField())


def test_torsion_consistency(generic):
    A = contorsion_minimal(generic)
    T1, T2 = torsion(A), connection_torsion(generic, A)
    assert T1 and T1.keys() == T2.keys()
    assert all((T1[k] - T2[k]).is_zero() for k in T1)


def test_contorsion_field_rejects_diagonal():
    with pytest.raises(ValueError):
        ContorsionField().set(0, 1, 1, 1)


def test_scalar_flat_fixture(flat):
    assert scalar_curvature(flat).is_zero()
    assert scalar_flat_condition(flat).is_zero()
    for p in sample_points():
        assert abs(numeric_scalar_curvature(flat, [float(x) for x in p])) < 1e-6


def test_scalar_curvature_equals_condition_when_e_and_g_depend_on_x():
    rng = random.Random(1)
    for _ in range(2):
        g = random_ansatz(rng, lc=True)
        assert (scalar_curvature(g) - scalar_flat_condition(g)).is_zero()


def test_scalar_curvature_numeric_oracle(generic):
    s = scalar_curvature(generic)
    for p in sample_points()[:2]:
        exact = float(s.eval(p))
        approx = numeric_scalar_curvature(generic, [float(x) for x in p])
        assert abs(exact - approx) < 1e-6 * max(1, abs(exact))


def test_lc_fixture(lc):
    rep = lc_parallel_report(lc, sample_points())
    assert rep["passed"] and rep["involutive_with_A_zero"]
    for p in rep["points"]:
        assert p["isotropic_orthogonal"] and p["is_square"] and p["kind"] == "isotropic"
    # H₁ depends on y₁, so the triple form is recurrent rather than parallel
    assert not all(p["parallel_exactly"] for p in rep["points"])
    assert rep["points"][0]["recurrence_rates"][0] == "4/5"


def test_lc_parallel_when_h_is_y_independent():
    g = AnsatzMetric.from_strings(["x2*z", "x1^2", "z^2"], ["1 + x1^2", "1", "2"], "1")
    rep = lc_parallel_report(g, sample_points()[:2])
    assert rep["passed"] and all(p["parallel_exactly"] for p in rep["points"])


def test_lc_precondition(generic):
    with pytest.raises(PreconditionError, match="E1 depends on y2"):
        lc_parallel_report(generic, sample_points())


def test_torsion_cross_check(generic):
    A = contorsion_minimal(generic)
    rates = torsion_cross_check(generic, A, sample_points()[:2])
    # the difference is always a multiple of the triple form
    assert all(r is not None for row in rates for r in row)


def test_ansatz_json_round_trip(generic):
    again = AnsatzMetric.from_json(generic.to_json())
    assert again.to_json() == generic.to_json()
