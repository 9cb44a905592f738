"""
Squares of spinors
==================

Real gamma matrices for Cl(4,3), the admissible pairing, and the square map
from spinors to forms of degree at most three.
"""

from spinorforms.blades import inner
from spinorforms.g2 import load_fixture
from spinorforms.spinors import build_module
from spinorforms.squares import check_square_conditions

fx = load_fixture()["canonical"]
m = build_module(fx["signs"], fx["l"])
print("gamma(volume) acts as", m.gamma_volume()[0][0], "times the identity")

# A generic spinor: its square is c + φ with c = B(ε,ε)/8 and ⟨φ,φ⟩ = −7c².
eps = [1, 2, 0, -1, 1, 0, 3, 1]
alpha = m.square(eps)
c, phi = alpha.scalar_part(), alpha.grade(3)
print("B(eps,eps) =", m.B(eps, eps), " c =", c, " <phi,phi> =", inner(m.space, phi, phi))
verdict = check_square_conditions(m.space, m.l, alpha)
print("classifier:", verdict.kind)

# An isotropic spinor squares to a decomposable 3-form whose support is
# totally isotropic.
eps = [1, 0, 0, 0, 0, 0, 0, 0]
verdict = check_square_conditions(m.space, m.l, m.square(eps))
print("isotropic square:", m.square(eps))
print("triple:", [str(t) for t in verdict.triple])

# (1 + φ_can)/8 is the square of ε/√8 with μ = −1.
print(m.square([1, 1, 1, 1, 1, -1, -1, 1], mu=-1))
