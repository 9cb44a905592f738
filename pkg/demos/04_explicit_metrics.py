"""
An explicit family of metrics on R^7
====================================

g = Σ (H_i dx_i² + 2E_i dx_i dy_i) + G dz² with polynomial coefficients.
We compute Christoffel symbols, the contorsion that makes the coframe
{dx_1, dx_2, dx_3} involutive, and the scalar curvature.
"""

from spinorforms.metric_lab import (AnsatzMetric, check_displayed_formulas, contorsion_minimal,
                                    involutivity_check, lc_parallel_report, sample_points,
                                    scalar_curvature, scalar_flat_condition)

g = AnsatzMetric.from_strings(["y1^2*z", "x1*y2", "y3"], ["1 + y2^2", "1", "1 + z"], "1 + y1^2")
print(check_displayed_formulas(g))

A = contorsion_minimal(g)
print("involutive with the minimal contorsion:", involutivity_check(g, A))
for (u, v, w), val in sorted(A.items()):
    if v < w:
        print(f"  A({u},{v},{w}) = {val}")

# When E and G depend only on x, the scalar curvature is Σ E_i⁻² ∂²H_i/∂y_i².
flat = AnsatzMetric.from_strings(["y1^2", "-y2^2", "0"], ["1", "1", "1"], "1")
print("scalar curvature:", scalar_curvature(flat), "=", scalar_flat_condition(flat))

# With E, G functions of x alone the Levi-Civita connection already keeps
# the null triple's span invariant.  The triple form is then recurrent:
# ∇(ϑ∧θ∧η) = λ ⊗ ϑ∧θ∧η, with λ = 0 exactly when H does not depend on y.
lc = AnsatzMetric.from_strings(["y1^2*z", "x1*y2", "x3^2 + y3"], ["1 + x1^2", "1", "1"], "1")
rep = lc_parallel_report(lc, sample_points()[:1])
print(rep["points"][0]["recurrence_rates"])
