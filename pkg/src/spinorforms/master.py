"""Pointwise form of the parallel-spinor equations.

Everything here is an identity between truncated forms at a single point: the
derivative ∇_v α of the square is never computed, only the right-hand sides
that it must equal.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .blades import (DIM, DegreeError, Multivector, gen_product, grade_auto, hodge, inner,
                     interior, reversal, vee, wedge, wedge_all)
from .g2 import split_three_form, split_two_form, three_form_seven_covector
from .squares import is_isotropic_orthogonal


def _check_low(a, name):
    if a.max_grade() > 3:
        raise DegreeError(f"{name} must have degree at most 3")


def master_rhs(Q, l, a_v, alpha):
    """𝔞_v ∨ α + α ∨ (π∘τ)(𝔞_v)."""
    _check_low(a_v, "a_v")
    _check_low(alpha, "alpha")
    return vee(Q, l, a_v, alpha) + vee(Q, l, alpha, grade_auto(reversal(a_v)))


def expanded_rhs(Q, l, a_v, f, phi):
    """Rates of f and φ for α = f + φ, written out degree by degree."""
    _check_low(a_v, "a_v")
    f = Fraction(f)
    a0, a1, a2, a3 = (a_v.grade(k) for k in range(4))
    a0 = a0.scalar_part()
    scalar = 2 * f * a0 - 2 * inner(Q, a3, phi)
    three = (a3 * (2 * f) + phi * (2 * a0)
             + hodge(Q, wedge(a1, phi)) * (2 * l)
             - gen_product(Q, a2, phi, 1) * 2
             + hodge(Q, gen_product(Q, a3, phi, 1)) * (2 * l))
    return scalar, three


@dataclass
class ADecomposition:
    sigma1: Multivector
    sigma14: Multivector
    kappa0: Fraction
    kappa1: Multivector
    kappa27: Multivector

    def to_json(self):
        return {"sigma1": str(self.sigma1), "sigma14": str(self.sigma14),
                "kappa0": str(self.kappa0), "kappa1": str(self.kappa1),
                "kappa27": str(self.kappa27)}


def _seven_vector(S, part7):
    """v with part7 = ι_v φ."""
    cols = []
    for k in range(DIM):
        vec = [0] * DIM
        vec[k] = 1
        cols.append(interior(vec, S.phi))
    masks = sorted({m for c in cols for m, _ in c.items()} | {m for m, _ in part7.items()})
    A = [[c.coeff(m) for c in cols] for m in masks]
    return linalg.solve(A, [part7.coeff(m) for m in masks])


def decompose_a(S, a_v):
    _check_low(a_v, "a_v")
    p7, p14 = split_two_form(S, a_v.grade(2))
    sigma1 = S.Q.flat(_seven_vector(S, p7))
    q1, q7, q27 = split_three_form(S, a_v.grade(3))
    k0 = Fraction(0)
    if q1:
        m = next(iter(S.phi.terms))
        k0 = q1.coeff(m) / S.phi.coeff(m)
    # q7 = *(φ∧θ) = −*(θ∧φ)
    kappa1 = -three_form_seven_covector(S, q7)
    return ADecomposition(sigma1, p14, k0, kappa1, q27)


def reconstruct(S, dec):
    two = interior(S.Q.sharp(dec.sigma1), S.phi) + dec.sigma14
    three = S.phi * dec.kappa0 + hodge(S.Q, wedge(dec.kappa1, S.phi)) + dec.kappa27
    return two, three


def reduced_rhs(S, a_v, f):
    """Reduced coefficients ā^(0), ā^(1) and the Λ³₂₇ part κ27 of 𝔞_v^(3).

    ``identity_holds`` compares 2ā0 φ + 2l*(ā1∧φ) with the expanded rate.  The
    Λ³₂₇ part enters the expanded rate through 2fκ27 + 2l*(κ27 △₁ φ), which
    vanishes because *(ρ △₁ φ) = −lc ρ on Λ³₂₇; ``kappa27_contribution`` records it.
    """
    f = Fraction(f)
    if f != S.c:
        raise ValueError(f"f = {f} does not match the structure constant c = {S.c}")
    Q, l, phi = S.Q, S.l, S.phi
    dec = decompose_a(S, a_v)
    a0 = a_v.scalar_part()
    a1 = a_v.grade(1)
    abar0 = a0 + 7 * f * dec.kappa0
    abar1 = a1 + dec.sigma1 * (3 * f) + dec.kappa1 * (4 * l * f)
    reduced = phi * (2 * abar0) + hodge(Q, wedge(abar1, phi)) * (2 * l)
    _, three = expanded_rhs(Q, l, a_v, f, phi)
    k27 = dec.kappa27
    contribution = k27 * (2 * f) + hodge(Q, gen_product(Q, k27, phi, 1)) * (2 * l)
    collected = (k27 * (-4 * f) + phi * (2 * a0) + phi * (14 * f * dec.kappa0)
                 + hodge(Q, wedge(a1, phi)) * (2 * l)
                 + hodge(Q, wedge(dec.sigma1, phi)) * (6 * l * f)
                 + hodge(Q, wedge(dec.kappa1, phi)) * (8 * f))
    return {
        "abar0": abar0,
        "abar1": abar1,
        "obstruction": k27,
        "decomposition": dec,
        "reduced_rate": reduced,
        "expanded_rate": three,
        "identity_holds": reduced == three,
        "kappa27_contribution": contribution,
        "collected_form_holds": collected == three,
    }


def scalar_redundancy(S, scalar_rate, three_rate):
    """2f·(rate of f) against −(2/7)⟨φ, rate of φ⟩, from ⟨φ,φ⟩ = −7f²."""
    return 2 * S.c * scalar_rate == Fraction(-2, 7) * inner(S.Q, S.phi, three_rate)


def isotropic_rhs(Q, l, a_v, triple):
    """Right-hand side for ∇_v(ϑ∧θ∧η) and the scalar constraint ⟨𝔞^(3), ϑ∧θ∧η⟩.

    Returns ``(rhs, constraint)``.
    """
    _check_low(a_v, "a_v")
    if len(triple) != 3 or any(not t.is_homogeneous(1) for t in triple):
        raise DegreeError("triple must consist of three one-forms")
    if not is_isotropic_orthogonal(Q, triple):
        raise ValueError("triple is not isotropic and mutually orthogonal")
    th, te, et = triple
    phi = wedge_all(th, te, et)
    a0 = a_v.scalar_part()
    a1, a2, a3 = a_v.grade(1), a_v.grade(2), a_v.grade(3)
    rhs = phi * (2 * a0)
    if a1:
        rhs = rhs + hodge(Q, wedge(a1, phi)) * (2 * l)
    if a2:
        rhs = rhs + (wedge_all(gen_product(Q, a2, th, 1), te, et) * -2
                     + wedge_all(gen_product(Q, a2, te, 1), th, et) * 2
                     + wedge_all(gen_product(Q, a2, et, 1), th, te) * -2)
    if a3:
        inner_sum = (wedge_all(gen_product(Q, a3, th, 1), te, et)
                     - wedge_all(gen_product(Q, a3, te, 1), th, et)
                     + wedge_all(gen_product(Q, a3, et, 1), th, te))
        rhs = rhs + hodge(Q, inner_sum) * (2 * l)
    return rhs, inner(Q, a3, phi)
