"""
The isotropic three-form ε¹²³
=============================

In a null basis (ε^i paired with ε^{i+3}, ε^7 unit) the form ε¹²³ is the
square of an isotropic spinor.  Its stabilizer is not reductive.
"""

import random

from spinorforms.blades import Multivector, QuadraticSpace, inner, vee
from spinorforms.squares import check_square_conditions, isotropic_normalized_equation
from spinorforms.stabilizer import (killing_radical, lie_structure_report, nilpotent_signature,
                                    stabilizer_algebra)
from spinorforms.verify import random_perturbations, isotropic_rejects

Q = QuadraticSpace.null_basis()
alpha, beta = Multivector.e(1, 2, 3), Multivector.e(4, 5, 6)
print("<e123, e456> =", inner(Q, alpha, beta))
print("alpha v beta v alpha =", vee(Q, 1, vee(Q, 1, alpha, beta), alpha))

# The witness conditions are homogeneous in α, so 2·ε¹²³ passes them too;
# only the normalised equation α∨β∨α = −8α pins the scale.
print(check_square_conditions(Q, 1, alpha * 2, beta).is_square,
      isotropic_normalized_equation(Q, 1, alpha * 2, beta))

# Perturbations b·ε¹²³ + φ^⊥ are all rejected.
rng = random.Random(0)
print(all(isotropic_rejects(Q, 1, a, beta) for a in random_perturbations(rng, 50)))

# The stabilizer: dimension 14, a 6-dimensional nilpotent radical of the
# Killing form, and a quotient with nondegenerate Killing form.
L = stabilizer_algebra(Q, alpha)
print(lie_structure_report(L).to_json())
print("radical:", nilpotent_signature(L.subalgebra(killing_radical(L))))
