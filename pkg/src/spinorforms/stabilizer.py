"""Infinitesimal stabilizers of forms and exact Lie structure reports.

so(h) is parametrised as ``M = h^{-1} S`` with ``S`` antisymmetric, which gives
``Mᵀh + hM = 0`` automatically.  Lie subalgebras are handled in coordinates
relative to a fixed basis of 7x7 rational matrices.
"""

import itertools
from dataclasses import dataclass, asdict
from fractions import Fraction

from . import linalg
from .blades import DIM, Multivector, derivation_extension


class NotASubalgebraError(ValueError):
    pass


class NotNilpotentError(ValueError):
    pass


def infinitesimal_action(M, a):
    """Derivation action of a 7x7 matrix; a covector θ goes to −θ∘M."""
    M = linalg.to_fractions(M)

    def image(i):
        return Multivector.covector([-x for x in M[i - 1]])

    return derivation_extension(image, a)


def so_basis(Q):
    """The 21 matrices h^{-1}(E_pq − E_qp), p < q."""
    hinv = [list(r) for r in Q.inverse_metric]
    out = []
    for p, q in itertools.combinations(range(DIM), 2):
        S = linalg.zeros(DIM)
        S[p][q] = Fraction(1)
        S[q][p] = Fraction(-1)
        out.append(linalg.matmul(hinv, S))
    return out


def in_so(Q, M):
    h = [list(r) for r in Q.metric]
    return linalg.is_zero_matrix(linalg.matadd(linalg.matmul(linalg.transpose(M), h), linalg.matmul(h, M)))


def _flat(M):
    return [x for row in M for x in row]


def _unflat(v, n=DIM):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def bracket(x, y):
    return linalg.matadd(linalg.matmul(x, y), linalg.matmul(y, x), -1)


class LieSubalgebra:
    """A Lie algebra of matrices with a fixed basis and exact structure constants."""

    def __init__(self, basis, ambient=None):
        basis = [linalg.to_fractions(b) for b in basis]
        self.ambient = ambient
        if ambient is not None:
            for b in basis:
                if not in_so(ambient, b):
                    raise NotASubalgebraError("basis matrix is not in so(h)")
        self.n = len(basis[0]) if basis else DIM
        self.basis = basis
        self.dim = len(basis)
        if self.dim and linalg.rank([_flat(b) for b in basis]) != self.dim:
            raise ValueError("basis matrices are linearly dependent")
        self._rref, self._piv = linalg.rref([_flat(b) for b in basis]) if basis else ([], [])
        self.structure_constants = self._structure_constants()

    def coords(self, M):
        """Coordinates of a matrix in the basis; raises if it is outside the span."""
        v = _flat(M)
        if any(linalg.in_span(self._rref, self._piv, v)):
            raise NotASubalgebraError("matrix outside the span of the basis")
        return linalg.coordinates([_flat(b) for b in self.basis], v)

    def _structure_constants(self):
        d = self.dim
        c = [[None] * d for _ in range(d)]
        for i in range(d):
            c[i][i] = [Fraction(0)] * d
            for j in range(i + 1, d):
                v = self.coords(bracket(self.basis[i], self.basis[j]))
                c[i][j] = v
                c[j][i] = [-x for x in v]
        return c

    def element(self, coeffs):
        out = linalg.zeros(self.n)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = linalg.matadd(out, b, c)
        return out

    def subalgebra(self, coord_vectors):
        return LieSubalgebra([self.element(v) for v in coord_vectors], self.ambient)

    # coordinate-level helpers
    def bracket_coords(self, x, y):
        d = self.dim
        out = [Fraction(0)] * d
        for i in range(d):
            if not x[i]:
                continue
            for j in range(d):
                if not y[j] or i == j:
                    continue
                cij = self.structure_constants[i][j]
                f = x[i] * y[j]
                for k in range(d):
                    if cij[k]:
                        out[k] += f * cij[k]
        return out

    def ad_matrix(self, i):
        """Matrix of ad(basis_i) in basis coordinates (column j = [b_i, b_j])."""
        d = self.dim
        return [[self.structure_constants[i][j][k] for j in range(d)] for k in range(d)]

    def killing_matrix(self):
        ads = [self.ad_matrix(i) for i in range(self.dim)]
        return [[linalg.trace(linalg.matmul(ads[i], ads[j])) for j in range(self.dim)]
                for i in range(self.dim)]

    def span_brackets(self, U, V):
        vecs = [self.bracket_coords(u, v) for u in U for v in V]
        vecs = [v for v in vecs if any(v)]
        return linalg.row_space(vecs)

    def full_basis(self):
        return [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]

    def derived_series(self):
        cur = self.full_basis()
        dims = [len(cur)]
        while cur:
            nxt = self.span_brackets(cur, cur)
            if len(nxt) == len(cur):
                break
            cur = nxt
            dims.append(len(cur))
        return dims

    def lower_central_series(self, within=None):
        """Dims of C^1 = I, C^{k+1} = [I, C^k] for the subalgebra spanned by ``within``."""
        top = self.full_basis() if within is None else linalg.row_space(within)
        cur = top
        dims = [len(cur)]
        while cur:
            nxt = self.span_brackets(top, cur)
            if len(nxt) == len(cur):
                break
            cur = nxt
            dims.append(len(cur))
        return dims

    def center(self):
        d = self.dim
        rows = []
        for j in range(d):
            # [x, b_j] = Σ_i x_i c_ij = 0 for all j
            for k in range(d):
                rows.append([self.structure_constants[i][j][k] for i in range(d)])
        return linalg.nullspace(rows, d) if d else []

    def is_ideal(self, vectors):
        rr, piv = linalg.rref(vectors) if vectors else ([], [])
        for b in self.full_basis():
            for v in vectors:
                w = self.bracket_coords(b, v)
                if any(linalg.in_span(rr, piv, w)):
                    return False
        return True

    def quotient_killing_matrix(self, ideal):
        """Killing form of L / ideal computed on a complement basis."""
        d = self.dim
        rr, piv = linalg.rref(ideal) if ideal else ([], [])
        comp = [j for j in range(d) if j not in piv]
        # a vector reduced against the ideal has zero entries at the ideal's pivots;
        # its remaining entries are quotient coordinates on the complement basis
        def qcoords(v):
            r = linalg.in_span(rr, piv, v)
            return [r[j] for j in comp]

        unit = self.full_basis()
        ads = []
        for i in comp:
            cols = [qcoords(self.bracket_coords(unit[i], unit[j])) for j in comp]
            ads.append(linalg.transpose(cols))
        m = len(comp)
        return [[linalg.trace(linalg.matmul(ads[i], ads[j])) for j in range(m)] for i in range(m)]


@dataclass
class LieStructureReport:
    dim: int
    derived_series_dims: list
    lower_central_dims: list
    center_dim: int
    killing_rank: int
    killing_radical_dim: int
    killing_radical_is_ideal: bool
    killing_radical_lower_central_dims: list
    quotient_dim: int
    quotient_killing_rank: int
    quotient_killing_signature: list
    quotient_real_form: str

    def to_json(self):
        return asdict(self)


def stabilizer_algebra(Q, a):
    """Basis of {M ∈ so(h) : M·a = 0}, echelonised in the so(h) coordinates."""
    so = so_basis(Q)
    images = [infinitesimal_action(M, a) for M in so]
    masks = sorted({m for im in images for m, _ in im.items()})
    rows = [[im.coeff(m) for im in images] for m in masks]
    ns = linalg.nullspace(rows, len(so)) if rows else linalg.nullspace([], len(so))
    if ns:
        ns = linalg.row_space(ns)
    basis = []
    for v in ns:
        M = linalg.zeros(DIM)
        for c, b in zip(v, so):
            if c:
                M = linalg.matadd(M, b, c)
        basis.append(M)
    return LieSubalgebra(basis, Q)


def killing_radical(L):
    return linalg.nullspace(L.killing_matrix(), L.dim) if L.dim else []


def lie_structure_report(L):
    K = L.killing_matrix() if L.dim else []
    krank = linalg.rank(K) if L.dim else 0
    rad = killing_radical(L)
    rad_lcs = L.lower_central_series(rad) if rad else [0]
    qK = L.quotient_killing_matrix(rad) if L.dim else []
    qrank = linalg.rank(qK) if qK else 0
    qsig = list(linalg.signature(qK)) if qK else [0, 0]
    return LieStructureReport(
        dim=L.dim,
        derived_series_dims=L.derived_series(),
        lower_central_dims=L.lower_central_series(),
        center_dim=len(L.center()),
        killing_rank=krank,
        killing_radical_dim=len(rad),
        killing_radical_is_ideal=L.is_ideal(rad) if rad else True,
        killing_radical_lower_central_dims=rad_lcs,
        quotient_dim=L.dim - len(rad),
        quotient_killing_rank=qrank,
        quotient_killing_signature=qsig,
        quotient_real_form=_real_form_dim8(len(qK), qrank, qsig),
    )


def _real_form_dim8(dim, krank, sig):
    """Name of a semisimple algebra of dimension 8 from its Killing signature.

    No sum of dimensions of real simple algebras (3, 6, 8, ...) other than 8
    itself equals 8, so such an algebra is simple: sl(3,R), su(2,1) or su(3),
    with Killing signatures (5,3), (4,4) and (0,8).
    """
    if dim != 8 or krank != 8:
        return ""
    return {(5, 3): "sl(3,R)", (4, 4): "su(2,1)", (0, 8): "su(3)"}.get(tuple(sig), "")


def nilpotent_signature(L):
    """Salamon string of a nilpotent algebra, for the abelian and free 2-step shapes.

    Returns None when L is nilpotent but of neither shape.
    """
    lcs = L.lower_central_series()
    if lcs[-1] != 0:
        raise NotNilpotentError(f"lower central series stalls at dimension {lcs[-1]}")
    d = L.dim
    if len(lcs) <= 2:
        return "(" + ",".join(["0"] * d) + ")"
    if len(lcs) != 3:
        return None
    derived = L.span_brackets(L.full_basis(), L.full_basis())
    rr, piv = linalg.rref(derived)
    comp = [[Fraction(int(i == j)) for i in range(d)] for j in range(d) if j not in piv]
    r = len(comp)
    if r * (r - 1) // 2 != len(derived):
        return None
    pairs = list(itertools.combinations(range(r), 2))
    zs = [L.bracket_coords(comp[i], comp[j]) for i, j in pairs]
    if linalg.rank(zs) != len(zs):
        return None
    # basis X_1..X_r, Z_ij = [X_i, X_j]; all other brackets vanish in a 2-step algebra
    cert = comp + zs
    if linalg.rank(cert) != d:
        return None
    for z in zs:
        for x in cert:
            if any(L.bracket_coords(x, z)):
                return None
    labels = ["0"] * r + [f"{i + 1}{j + 1}" for i, j in pairs]
    return "(" + ",".join(labels) + ")"
