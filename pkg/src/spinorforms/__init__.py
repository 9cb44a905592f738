"""Exact Kähler-Atiyah calculus in signature (4,3): spinor squares, G2*-structures,
isotropic spinors, stabilizers and an explicit family of metrics on R^7."""

from .exact import Poly7, RatFun7, parse_poly
from .blades import (
    Multivector, QuadraticSpace, wedge, interior, gen_product, geo_product,
    grade_auto, reversal, inner, volume, hodge, proj_half, proj_low, vee,
)

__version__ = "0.1.0"
