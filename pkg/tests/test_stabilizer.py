from fractions import Fraction

import pytest

from spinorforms import linalg
from spinorforms.blades import Multivector, parse_multivector
from spinorforms.stabilizer import (LieSubalgebra, NotASubalgebraError, NotNilpotentError,
                                    bracket, in_so, infinitesimal_action, killing_radical,
                                    lie_structure_report, nilpotent_signature, so_basis,
                                    stabilizer_algebra)


def test_so_basis(Q, Qnull):
    for space in (Q, Qnull):
        basis = so_basis(space)
        assert len(basis) == 21 and all(in_so(space, M) for M in basis)
        assert linalg.rank([[x for row in M for x in row] for M in basis]) == 21


def test_action_is_a_lie_algebra_morphism(Q):
    basis = so_basis(Q)
    a = parse_multivector("e123 - e145 + e2 + e67")
    X, Y = basis[2], basis[9]
    lhs = infinitesimal_action(bracket(X, Y), a)
    rhs = (infinitesimal_action(X, infinitesimal_action(Y, a))
           - infinitesimal_action(Y, infinitesimal_action(X, a)))
    assert lhs == rhs


def test_canonical_stabilizer(S):
    L = stabilizer_algebra(S.Q, S.phi)
    assert L.dim == 14
    assert linalg.rank(L.killing_matrix()) == 14
    rep = lie_structure_report(L)
    assert rep.center_dim == 0 and rep.derived_series_dims == [14]


def test_isotropic_stabilizer(Qnull):
    L = stabilizer_algebra(Qnull, Multivector.e(1, 2, 3))
    rep = lie_structure_report(L)
    assert rep.dim == 14
    assert rep.killing_radical_dim == 6
    assert rep.killing_radical_lower_central_dims == [6, 3, 0]
    assert rep.killing_radical_is_ideal
    assert (rep.quotient_dim, rep.quotient_killing_rank) == (8, 8)
    assert rep.quotient_killing_signature == [5, 3] and rep.quotient_real_form == "sl(3,R)"
    rad = L.subalgebra(killing_radical(L))
    assert nilpotent_signature(rad) == "(0,0,0,12,13,23)"


def test_stabilizer_of_scalar_is_everything(Q):
    assert stabilizer_algebra(Q, Multivector.scalar(1)).dim == 21


def test_structure_constants_antisymmetric_and_jacobi(S):
    L = stabilizer_algebra(S.Q, S.phi)
    unit = L.full_basis()
    for i in range(4):
        for j in range(4):
            assert L.bracket_coords(unit[i], unit[j]) == [-x for x in L.bracket_coords(unit[j], unit[i])]
            for k in range(4):
                jac = [a + b + c for a, b, c in zip(
                    L.bracket_coords(unit[i], L.bracket_coords(unit[j], unit[k])),
                    L.bracket_coords(unit[j], L.bracket_coords(unit[k], unit[i])),
                    L.bracket_coords(unit[k], L.bracket_coords(unit[i], unit[j])))]
                assert not any(jac)


def test_abelian_signature(Qnull):
    L = stabilizer_algebra(Qnull, Multivector.e(1, 2, 3))
    rad = L.subalgebra(killing_radical(L))
    derived = rad.span_brackets(rad.full_basis(), rad.full_basis())
    assert nilpotent_signature(rad.subalgebra(derived)) == "(0,0,0)"


def test_not_nilpotent(S):
    with pytest.raises(NotNilpotentError):
        nilpotent_signature(stabilizer_algebra(S.Q, S.phi))


def test_outside_span(S):
    L = stabilizer_algebra(S.Q, S.phi)
    M = next(M for M in so_basis(S.Q) if infinitesimal_action(M, S.phi))
    with pytest.raises(NotASubalgebraError):
        L.coords(M)


def test_rejects_non_so_basis(Q):
    M = linalg.identity(7)
    with pytest.raises(NotASubalgebraError):
        LieSubalgebra([M], Q)


def test_rejects_dependent_basis(Q):
    M = so_basis(Q)[0]
    with pytest.raises(ValueError):
        LieSubalgebra([M, linalg.matscale(M, Fraction(2))], Q)
