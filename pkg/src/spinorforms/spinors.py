"""Real paired spinor modules of Cl(4,3) and the spinor square maps.

Gamma matrices are built from triple tensor products of the real 2x2 matrices
1, s1, s3 and eps = [[0, 1], [-1, 0]].  Every such product squares to +-1 and
any two either commute or anticommute, so a small backtracking search finds
seven mutually anticommuting generators with the required squares.
"""

import itertools
from fractions import Fraction

from . import linalg
from .blades import (DIM, LOW_MASKS, DegreeError, Multivector, QuadraticSpace,
                     geo_product, mask_indices, parse_signature)


class ModuleConsistencyError(RuntimeError):
    pass


_I2 = ((1, 0), (0, 1))
_S1 = ((0, 1), (1, 0))
_S3 = ((1, 0), (0, -1))
_EPS = ((0, 1), (-1, 0))
_BLOCKS = (_I2, _S1, _S3, _EPS)


def _kron(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def _to_frac(m):
    return [[Fraction(x) for x in row] for row in m]


def _candidates():
    out = []
    for combo in itertools.product(range(4), repeat=3):
        if combo == (0, 0, 0):
            continue
        m = _kron(_kron(_BLOCKS[combo[0]], _BLOCKS[combo[1]]), _BLOCKS[combo[2]])
        sq = 1
        for c in combo:
            if c == 3:
                sq = -sq
        out.append((combo, m, sq))
    return out


def _anticommute(c1, c2):
    # blocks differ and both non-identity in an odd number of slots
    n = sum(1 for a, b in zip(c1, c2) if a and b and a != b)
    return n % 2 == 1


def _find_generators(squares):
    cands = _candidates()
    chosen = []

    def search(k):
        if k == len(squares):
            return True
        for cand in cands:
            combo, _, sq = cand
            if sq != squares[k] or any(combo == c[0] for c in chosen):
                continue
            if all(_anticommute(combo, c[0]) for c in chosen):
                chosen.append(cand)
                if search(k + 1):
                    return True
                chosen.pop()
        return False

    if not search(0):
        raise ModuleConsistencyError("no anticommuting generator set found")
    return [_to_frac(c[1]) for c in chosen]


def _matmul_chain(mats, n=8):
    out = linalg.identity(n)
    for m in mats:
        out = linalg.matmul(out, m)
    return out


def _flatten(m):
    return [x for row in m for x in row]


def _unflatten(v, n=8):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


class PairedSpinorModule:
    """The irreducible module (Σ, γ_l, B) for a diagonal ±1 metric of signature (4,3)."""

    def __init__(self, signs, l=1, orientation=1):
        if isinstance(signs, str):
            signs = parse_signature(signs)
        signs = [int(s) for s in signs]
        if any(s not in (1, -1) for s in signs) or len(signs) != DIM:
            raise ValueError("signs must be seven entries +1/-1")
        if (signs.count(1), signs.count(-1)) != (4, 3):
            raise ValueError(f"signature ({signs.count(1)},{signs.count(-1)}) but (4,3) is required")
        if l not in (1, -1):
            raise ValueError("l must be +1 or -1")
        self.signs = tuple(signs)
        self.l = l
        self.space = QuadraticSpace.diagonal(signs, orientation)
        gammas = _find_generators(signs)
        vol = _matmul_chain(gammas)
        scale = self.space.volume().coeff((1 << DIM) - 1)
        vol = linalg.matscale(vol, scale)
        if vol == linalg.matscale(linalg.identity(8), -l):
            # composing with the π-twist flips the sign of every generator and of γ(ν)
            gammas = [linalg.matscale(g, -1) for g in gammas]
            vol = linalg.matscale(vol, -1)
        if vol != linalg.matscale(linalg.identity(8), l):
            raise ModuleConsistencyError("volume form does not act as a scalar")
        self.gammas = gammas
        self.pairing = self._solve_pairing()
        self._blade_mats = {m: self._blade_matrix(m) for m in LOW_MASKS}
        self._deq_rows = None

    def _solve_pairing(self):
        # unknowns: upper triangle of a symmetric 8x8 B
        idx = [(i, j) for i in range(8) for j in range(i, 8)]
        pos = {p: k for k, p in enumerate(idx)}

        def var(i, j):
            return pos[(i, j)] if i <= j else pos[(j, i)]

        rows = []
        for g in self.gammas:
            # (γᵀB + Bγ)[r][c] = Σ_k g[k][r] B[k][c] + B[r][k] g[k][c]
            for r in range(8):
                for c in range(8):
                    row = [Fraction(0)] * len(idx)
                    for k in range(8):
                        if g[k][r]:
                            row[var(k, c)] += g[k][r]
                        if g[k][c]:
                            row[var(r, k)] += g[k][c]
                    if any(row):
                        rows.append(row)
        ns = linalg.nullspace(rows)
        self._pairing_dim = len(ns)
        if len(ns) != 1:
            raise ModuleConsistencyError(f"admissible symmetric pairings form a space of dim {len(ns)}")
        v = ns[0]
        B = [[v[var(i, j)] for j in range(8)] for i in range(8)]
        first = next(x for row in B for x in row if x)
        return linalg.matscale(B, 1 / first)

    def pairing_space_dim(self):
        """Dimension of the space of admissible symmetric pairings (checked to be 1)."""
        return self._pairing_dim

    def _blade_matrix(self, mask):
        return _matmul_chain([self.gammas[i - 1] for i in mask_indices(mask)])

    def gamma_of_blade(self, mask):
        m = self._blade_mats.get(mask)
        if m is None:
            m = self._blade_matrix(mask)
        return m

    def gamma_volume(self):
        scale = self.space.volume().coeff((1 << DIM) - 1)
        return linalg.matscale(self._blade_matrix((1 << DIM) - 1), scale)

    def gamma(self, a):
        """γ of an arbitrary multivector (all degrees)."""
        out = linalg.zeros(8)
        for mask, c in a.items():
            out = linalg.matadd(out, self.gamma_of_blade(mask), c)
        return out

    def quantize(self, a):
        """Ψ^<_l on a truncated multivector."""
        if a.max_grade() > 3:
            raise DegreeError("quantize needs a multivector of degree at most 3")
        return self.gamma(a)

    def dequantize(self, matrix):
        """Inverse of :meth:`quantize`."""
        if self._deq_rows is None:
            cols = [_flatten(self._blade_mats[m]) for m in LOW_MASKS]
            self._deq_matrix = linalg.transpose(cols)
            self._deq_rows = True
        coeffs = linalg.solve(self._deq_matrix, _flatten(matrix))
        return Multivector({m: c for m, c in zip(LOW_MASKS, coeffs)})

    def quantize_rank(self):
        cols = [_flatten(self._blade_mats[m]) for m in LOW_MASKS]
        return linalg.rank(cols)

    def B(self, x, y):
        return sum((a * b for a, b in zip(x, linalg.matvec(self.pairing, y))), Fraction(0))

    def square_matrix(self, eps, mu=1):
        eps = [Fraction(x) for x in eps]
        Be = linalg.matvec(self.pairing, eps)
        return [[mu * a * b for b in Be] for a in eps]

    def square(self, eps, mu=1):
        """𝓔^μ_l(ε) by dequantizing μ ε ⊗ ε*."""
        _check_mu(mu)
        return self.dequantize(self.square_matrix(eps, mu))

    def square_sum_formula(self, eps, mu=1):
        """The square via coefficients μ B(γ_I^{-1} ε, ε) / 8 over blades of degree <= 3."""
        _check_mu(mu)
        eps = [Fraction(x) for x in eps]
        out = {}
        for mask in LOW_MASKS:
            inv = linalg.identity(8)
            for i in mask_indices(mask):
                g = self.gammas[i - 1]
                # γ_i^{-1} = γ_i / sign_i, applied innermost-first for the reversed order
                inv = linalg.matmul(linalg.matscale(g, Fraction(1, self.signs[i - 1])), inv)
            c = mu * self.B(linalg.matvec(inv, eps), eps) / 8
            if c:
                out[mask] = c
        return Multivector(out)

    def classify(self, eps):
        n = self.B(eps, eps)
        return {"pseudo_norm": n, "isotropic": n == 0}

    def clifford_action(self, a, eps):
        return linalg.matvec(self.gamma(a), [Fraction(x) for x in eps])


def _check_mu(mu):
    if mu not in (1, -1):
        raise ValueError("mu must be +1 or -1")


def build_module(signs, l=1, orientation=1):
    return PairedSpinorModule(signs, l, orientation)


def quantize(m, a):
    return m.quantize(a)


def dequantize(m, matrix):
    return m.dequantize(matrix)


def square(m, eps, mu=1):
    return m.square(eps, mu)


def classify_spinor(m, eps):
    return m.classify(eps)


def parse_spinor(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 8:
        raise ValueError(f"a spinor needs 8 comma-separated rationals, got {len(parts)}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad spinor component: {exc}") from None


def commutator_derivation(Q, omega, a):
    """Der_{λ'(ω)}(a): the wedge derivation extending θ ↦ ω⋄θ − θ⋄ω."""
    from .blades import derivation_extension

    def image(i):
        th = Multivector.e(i)
        return geo_product(Q, omega, th) - geo_product(Q, th, omega)

    return derivation_extension(image, a)


def matrix_commutator(x, y):
    return linalg.matadd(linalg.matmul(x, y), linalg.matmul(y, x), -1)


def first_order_square_variation(m, omega, eps, mu=1):
    """d/dt of the square of ε + t γ(ω)ε at t = 0, dequantized."""
    eps = [Fraction(x) for x in eps]
    d = linalg.matvec(m.gamma(omega), eps)
    Be = linalg.matvec(m.pairing, eps)
    Bd = linalg.matvec(m.pairing, d)
    mat = [[mu * (d[i] * Be[j] + eps[i] * Bd[j]) for j in range(8)] for i in range(8)]
    return m.dequantize(mat)
