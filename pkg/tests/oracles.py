"""Slow reference implementations used only as test oracles."""

import itertools
import math
from fractions import Fraction

from spinorforms.blades import DIM, Multivector, interior, mask_indices, wedge


def _basis_vector(i):
    v = [0] * DIM
    v[i] = 1
    return v


def chevalley_product(Q, a, b):
    """a ⋄ b from θ ⋄ x = θ∧x + ι_{θ♯}x and e^{i}∧r = e^{i} ⋄ r − ι_{(e^i)♯} r."""
    out = Multivector()
    for ma, ca in a.items():
        out = out + _blade_times(Q, mask_indices(ma), b) * ca
    return out


def _covector_times(Q, i, x):
    theta = Multivector.e(i + 1)
    return wedge(theta, x) + interior(Q.sharp(theta), x)


def _blade_times(Q, idx, x):
    if not idx:
        return x
    i, rest = idx[0] - 1, idx[1:]
    rest_blade = Multivector.e(*rest) if rest else Multivector.scalar(1)
    # e^i ∧ R = e^i ⋄ R − ι_{(e^i)♯} R, so (e^i ∧ R) ⋄ x = e^i ⋄ (R ⋄ x) − (ι R) ⋄ x
    first = _covector_times(Q, i, _blade_times(Q, rest, x))
    contracted = interior(Q.sharp(Multivector.e(i + 1)), rest_blade)
    return first - chevalley_product(Q, contracted, x)


def naive_gen_product(Q, a, b, k):
    """(1/k!) Σ h^{i1 j1}…h^{ik jk} (ι_{ik}…ι_{i1} a) ∧ (ι_{jk}…ι_{j1} b)."""
    hinv = Q.inverse_metric
    out = Multivector()
    for I in itertools.product(range(DIM), repeat=k):
        ca = a
        for i in I:
            ca = interior(_basis_vector(i), ca)
        if not ca:
            continue
        for J in itertools.product(range(DIM), repeat=k):
            w = Fraction(1)
            for i, j in zip(I, J):
                w *= hinv[i][j]
            if not w:
                continue
            cb = b
            for j in J:
                cb = interior(_basis_vector(j), cb)
            if cb:
                out = out + wedge(ca, cb) * w
    return out * Fraction(1, math.factorial(k))
