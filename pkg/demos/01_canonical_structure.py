"""
The canonical G2* three-form
============================

Build the canonical 3-form on R^7 with a diagonal metric of signature (4,3),
check its intrinsic equations and look at the type decomposition of forms.
"""

import random

from spinorforms.blades import gen_product, hodge, inner
from spinorforms.g2 import canonical_structure, decomposition_ranks, lemma_identities_report
from spinorforms.stabilizer import lie_structure_report, stabilizer_algebra

# The fixture stores the sign pattern and the sign l of the volume action.
S = canonical_structure()
print("phi      =", S.phi)
print("<phi,phi> =", inner(S.Q, S.phi, S.phi))
print("l, kappa, c =", S.l, S.kappa, S.c)

# The defining equation 6κc·φ = l·*(φ △₁ φ), checked exactly.
print("6κc·φ == l·*(φ △₁ φ):",
      S.phi * (6 * S.kappa * S.c) == hodge(S.Q, gen_product(S.Q, S.phi, S.phi, 1)) * S.l)

# Its infinitesimal stabilizer inside so(4,3) has dimension 14 and a
# nondegenerate Killing form.
rep = lie_structure_report(stabilizer_algebra(S.Q, S.phi))
print("stabilizer dim", rep.dim, "Killing rank", rep.killing_rank)

# Two-forms split as 7 + 14 and three-forms as 1 + 7 + 27.
print(decomposition_ranks(S))

# The contraction identities.  On Λ³₂₇ the eigenvalue of ρ ↦ *(ρ △₁ φ) is
# −lc; the factor 3 version fails.
print(lemma_identities_report(S, random.Random(0), samples=5))
