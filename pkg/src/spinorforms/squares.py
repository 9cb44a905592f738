"""Recognising spinor squares among truncated forms.

A truncated form α is the square of a spinor iff ``(π∘τ)(α) = α`` and
``α ∨ β ∨ α = 8 (α ∨ β)^(0) α`` for every β.  The second condition is linear
in β, so the 64 basis blades of degree at most three suffice.  When a witness
β with ``(α ∨ β)^(0) ≠ 0`` is known, the shorter test with ``α ∨ α = 8 α^(0) α``
applies instead.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .blades import (DIM, LOW_MASKS, DegreeError, Multivector, gen_product, grade_auto,
                     hodge, inner, interior_basis, reversal, vee, wedge_all)


class WitnessRejectedError(ValueError):
    """The supplied β has ``(α ∨ β)^(0) = 0`` and cannot certify anything."""


NON_ISOTROPIC = "non_isotropic"
ISOTROPIC = "isotropic"
NOT_A_SQUARE = "not_a_square"


@dataclass
class SquareVerdict:
    is_square: bool
    kind: str
    c: Fraction
    witness_beta: Optional[Multivector] = None
    triple: Optional[tuple] = None
    failures: list = field(default_factory=list)

    def to_json(self):
        out = {
            "is_square": self.is_square,
            "kind": self.kind,
            "c": str(self.c),
            "pseudo_norm_squared": str(64 * self.c * self.c),
        }
        if self.witness_beta is not None:
            out["witness_beta"] = str(self.witness_beta)
        if self.triple is not None:
            out["triple"] = [str(t) for t in self.triple]
        if self.failures:
            out["failures"] = list(self.failures)
        return out


def _check_low(alpha):
    if alpha.max_grade() > 3:
        raise DegreeError("alpha must have degree at most 3")


def sandwich_defect(Q, l, alpha, beta):
    """α ∨ β ∨ α − 8 (α ∨ β)^(0) α."""
    ab = vee(Q, l, alpha, beta)
    return vee(Q, l, ab, alpha) - alpha * (8 * ab.scalar_part())


def check_square_conditions(Q, l, alpha, beta=None):
    _check_low(alpha)
    failures = []
    if grade_auto(reversal(alpha)) != alpha:
        failures.append("pi_tau_invariance")
    witness = None
    if beta is not None:
        _check_low(beta)
        if vee(Q, l, alpha, beta).scalar_part() == 0:
            raise WitnessRejectedError("(alpha v beta)^(0) = 0; beta is not a valid witness")
        witness = beta
        if vee(Q, l, alpha, alpha) != alpha * (8 * alpha.scalar_part()):
            failures.append("alpha_v_alpha")
        if sandwich_defect(Q, l, alpha, beta):
            failures.append("sandwich")
    else:
        for mask in LOW_MASKS:
            b = Multivector.blade(mask)
            if sandwich_defect(Q, l, alpha, b):
                failures.append(f"sandwich[{b}]")
                break
        if not failures:
            witness = find_witness(Q, l, alpha)
    c = alpha.scalar_part()
    if failures:
        return SquareVerdict(False, NOT_A_SQUARE, c, witness, None, failures)
    if c != 0:
        return SquareVerdict(True, NON_ISOTROPIC, c, witness)
    return SquareVerdict(True, ISOTROPIC, c, witness, isotropic_factorize(Q, alpha))


def find_witness(Q, l, alpha):
    """First basis blade β with (α ∨ β)^(0) ≠ 0, or None when α = 0."""
    for mask in LOW_MASKS:
        b = Multivector.blade(mask)
        if vee(Q, l, alpha, b).scalar_part():
            return b
    return None


def check_nondegenerate(Q, l, c, phi):
    c = Fraction(c)
    if inner(Q, phi, phi) != -7 * c * c:
        return False
    return phi * (6 * c) == hodge(Q, gen_product(Q, phi, phi, 1)) * l


def isotropic_normalized_equation(Q, l, alpha, beta):
    """The normalised isotropic equation α ∨ β ∨ α = −8 α."""
    return vee(Q, l, vee(Q, l, alpha, beta), alpha) == alpha * -8


def support(alpha):
    """Span of all double contractions ι_u ι_v α, as rref rows of covector coefficients."""
    rows = []
    for u in range(1, DIM + 1):
        for v in range(u + 1, DIM + 1):
            w = interior_basis(u, interior_basis(v, alpha))
            if w:
                rows.append(w.covector_coeffs())
    return linalg.row_space(rows)


def isotropic_factorize(Q, alpha):
    """(ϑ, θ, η) with ϑ∧θ∧η = α spanning a totally isotropic subspace, or None."""
    _check_low(alpha)
    if not alpha or not alpha.is_homogeneous(3):
        return None
    W = support(alpha)
    if len(W) != 3:
        return None
    forms = [Multivector.covector(r) for r in W]
    w = wedge_all(*forms)
    lead = next(iter(sorted(w.terms)))
    lam = alpha.coeff(lead) / w.coeff(lead)
    if w * lam != alpha:
        return None
    hinv = [list(r) for r in Q.inverse_metric]
    for a in W:
        ha = linalg.matvec(hinv, a)
        for b in W:
            if sum((x * y for x, y in zip(ha, b)), Fraction(0)):
                return None
    forms[0] = forms[0] * lam
    return tuple(forms)


def is_isotropic_orthogonal(Q, triple):
    hinv = [list(r) for r in Q.inverse_metric]
    vecs = [t.covector_coeffs() for t in triple]
    for a in vecs:
        ha = linalg.matvec(hinv, a)
        for b in vecs:
            if sum((x * y for x, y in zip(ha, b)), Fraction(0)):
                return False
    return True
