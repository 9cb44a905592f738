"""G2*-structures: the intrinsic characterization and the type decompositions.

A 3-form φ in signature (4,3) defines a G2*-structure when ⟨φ,φ⟩ = −7c² < 0
and 6cφ = l*(φ △₁ φ) for c = κ sqrt(−⟨φ,φ⟩/7).  Everything is kept rational, so
only forms with −⟨φ,φ⟩/7 a rational square are accepted.
"""

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import linalg
from .blades import (DIM, DegreeError, Multivector, QuadraticSpace, gen_product, hodge,
                     inner, interior, parse_multivector, wedge)

CANONICAL_PHI = "-e127 - e135 + e146 + e236 + e245 - e347 + e567"

_TWO_MASKS = tuple(m for m in range(1 << DIM) if m.bit_count() == 2)
_THREE_MASKS = tuple(m for m in range(1 << DIM) if m.bit_count() == 3)


class IrrationalScaleError(ValueError):
    """⟨φ,φ⟩ < 0 but −⟨φ,φ⟩/7 is not a rational square."""


class StructureError(RuntimeError):
    pass


def _coeffs(a, masks):
    return [a.coeff(m) for m in masks]


def _from_coeffs(v, masks):
    return Multivector({m: c for m, c in zip(masks, v)})


@dataclass
class G2StarStructure:
    phi: Multivector
    Q: QuadraticSpace
    l: int
    kappa: int
    c: Fraction
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def c_squared(self):
        return self.c * self.c

    @property
    def star_phi(self):
        if "star_phi" not in self._cache:
            self._cache["star_phi"] = hodge(self.Q, self.phi)
        return self._cache["star_phi"]

    def to_json(self):
        return {"phi": str(self.phi), "l": self.l, "kappa": self.kappa,
                "c": str(self.c), "c_squared": str(self.c_squared)}

    # -- Λ² split --------------------------------------------------------
    # *(φ∧·) has eigenvalue 2lc on Λ²₇ and −lc on Λ²₁₄
    def two_form_operator(self, omega):
        return hodge(self.Q, wedge(self.phi, omega))

    def two_form_bases(self):
        if "two" not in self._cache:
            cols = [_coeffs(self.two_form_operator(Multivector.blade(m)), _TWO_MASKS)
                    for m in _TWO_MASKS]
            T = linalg.transpose(cols)
            bases = {}
            for name, lam in (("7", 2 * self.l * self.c), ("14", -self.l * self.c)):
                shifted = [[T[i][j] - (lam if i == j else 0) for j in range(21)] for i in range(21)]
                bases[name] = linalg.nullspace(shifted)
            if len(bases["7"]) != 7 or len(bases["14"]) != 14:
                raise StructureError(
                    f"two-form eigenspaces have dims {len(bases['7'])}, {len(bases['14'])}")
            self._cache["two"] = bases
        return self._cache["two"]

    def three_form_bases(self):
        if "three" not in self._cache:
            b1 = [_coeffs(self.phi, _THREE_MASKS)]
            b7 = [_coeffs(hodge(self.Q, wedge(self.phi, Multivector.e(i))), _THREE_MASKS)
                  for i in range(1, DIM + 1)]
            rows = []
            for target in (self.phi, self.star_phi):
                images = [wedge(Multivector.blade(m), target) for m in _THREE_MASKS]
                masks = sorted({mm for im in images for mm, _ in im.items()})
                rows += [[im.coeff(mm) for im in images] for mm in masks]
            b27 = linalg.nullspace(rows, len(_THREE_MASKS))
            if (linalg.rank(b7), len(b27)) != (7, 27):
                raise StructureError(f"three-form pieces have dims 1, {linalg.rank(b7)}, {len(b27)}")
            self._cache["three"] = {"1": b1, "7": b7, "27": b27}
        return self._cache["three"]


def check_g2star(Q, l, phi):
    """The structure defined by φ, or None when φ does not satisfy the intrinsic equations."""
    if not phi.is_homogeneous(3):
        raise DegreeError("phi must be a pure 3-form")
    if l not in (1, -1):
        raise ValueError("l must be +1 or -1")
    n = inner(Q, phi, phi)
    if n >= 0:
        return None
    c0 = linalg.rational_sqrt(-n / 7)
    if c0 is None:
        raise IrrationalScaleError(f"-<phi,phi>/7 = {-n / 7} is not a rational square; rescale phi")
    rhs = hodge(Q, gen_product(Q, phi, phi, 1)) * l
    for kappa in (1, -1):
        if phi * (6 * kappa * c0) == rhs:
            return G2StarStructure(phi, Q, l, kappa, kappa * c0)
    return None


def _split(bases, v, dims_names):
    allb = [b for name in dims_names for b in bases[name]]
    coeffs = linalg.coordinates(allb, v)
    parts = []
    k = 0
    for name in dims_names:
        n = len(bases[name])
        vec = [Fraction(0)] * len(v)
        for c, b in zip(coeffs[k:k + n], bases[name]):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        parts.append(vec)
        k += n
    return parts


def split_two_form(S, omega):
    if not omega.is_homogeneous(2):
        raise DegreeError("omega must be a pure 2-form")
    p7, p14 = _split(S.two_form_bases(), _coeffs(omega, _TWO_MASKS), ("7", "14"))
    return _from_coeffs(p7, _TWO_MASKS), _from_coeffs(p14, _TWO_MASKS)


def split_three_form(S, rho):
    if not rho.is_homogeneous(3):
        raise DegreeError("rho must be a pure 3-form")
    parts = _split(S.three_form_bases(), _coeffs(rho, _THREE_MASKS), ("1", "7", "27"))
    return tuple(_from_coeffs(p, _THREE_MASKS) for p in parts)


def project_27(S, rho):
    return split_three_form(S, rho)[2]


def three_form_seven_covector(S, part7):
    """θ with part7 = *(φ∧θ)."""
    b7 = S.three_form_bases()["7"]
    coeffs = linalg.coordinates(b7, _coeffs(part7, _THREE_MASKS))
    return Multivector.covector(coeffs)


def decomposition_ranks(S):
    two = S.two_form_bases()
    three = S.three_form_bases()
    return {
        "two_7": linalg.rank(two["7"]), "two_14": linalg.rank(two["14"]),
        "three_1": linalg.rank(three["1"]), "three_7": linalg.rank(three["7"]),
        "three_27": linalg.rank(three["27"]),
        "two_total": linalg.rank(two["7"] + two["14"]),
        "three_total": linalg.rank(three["1"] + three["7"] + three["27"]),
    }


def lambda27_embed(S, A):
    """Σ A_ij h^{jk} e^i ∧ ι_{e_k} φ for symmetric, h-traceless A."""
    A = linalg.to_fractions(A)
    if any(A[i][j] != A[j][i] for i in range(DIM) for j in range(DIM)):
        raise ValueError("A must be symmetric")
    hinv = S.Q.inverse_metric
    if sum(hinv[i][j] * A[i][j] for i in range(DIM) for j in range(DIM)):
        raise ValueError("A must be traceless with respect to h")
    B = linalg.matmul(A, [list(r) for r in hinv])
    out = Multivector()
    for k in range(DIM):
        vec = [0] * DIM
        vec[k] = 1
        ik = interior(vec, S.phi)
        col = [B[i][k] for i in range(DIM)]
        if any(col):
            out = out + wedge(Multivector.covector(col), ik)
    return out


def random_traceless_symmetric(Q, rng, lo=-3, hi=3):
    A = [[Fraction(0)] * DIM for _ in range(DIM)]
    for i in range(DIM):
        for j in range(i, DIM):
            A[i][j] = A[j][i] = Fraction(rng.randint(lo, hi))
    hinv = Q.inverse_metric
    t = sum(hinv[i][j] * A[i][j] for i in range(DIM) for j in range(DIM))
    # remove the trace along h: Tr_h(h) = 7
    h = Q.metric
    return [[A[i][j] - t / 7 * h[i][j] for j in range(DIM)] for i in range(DIM)]


def lemma_identities_report(S, rng=None, samples=10):
    """Exact check of the four contraction identities; returns {item: bool}."""
    rng = rng or random.Random(0)
    Q, phi, l, c = S.Q, S.phi, S.l, S.c
    ok1 = True
    for _ in range(samples):
        v = [Fraction(rng.randint(-3, 3)) for _ in range(DIM)]
        lhs = gen_product(Q, interior(v, phi), phi, 1)
        rhs = hodge(Q, wedge(phi, Q.flat(v))) * (3 * l * c)
        ok1 &= lhs == rhs
    ok2 = all(not gen_product(Q, _from_coeffs(b, _TWO_MASKS), phi, 1)
              for b in S.two_form_bases()["14"])
    ok3 = True
    for _ in range(samples):
        th = Multivector.covector([rng.randint(-3, 3) for _ in range(DIM)])
        st = hodge(Q, wedge(th, phi))
        ok3 &= hodge(Q, gen_product(Q, st, phi, 1)) == st * (3 * l * c)
    # on Λ³₂₇ the eigenvalue is −lc: the operator ρ ↦ *(ρ △₁ φ) is traceless on Λ³
    # and acts by 6lc on Λ³₁ and 3lc on Λ³₇
    ok4 = True
    ok4_triple = True
    for b in S.three_form_bases()["27"]:
        rho = _from_coeffs(b, _THREE_MASKS)
        img = hodge(Q, gen_product(Q, rho, phi, 1))
        ok4 &= img == rho * (-l * c)
        ok4_triple &= img == rho * (-3 * l * c)
    return {"item1": ok1, "item2": ok2, "item3": ok3, "item4": ok4,
            "item4_with_factor_3": ok4_triple}


def three_form_operator_trace(S):
    """Trace of ρ ↦ *(ρ △₁ φ) over all of Λ³."""
    total = Fraction(0)
    for m in _THREE_MASKS:
        total += hodge(S.Q, gen_product(S.Q, Multivector.blade(m), S.phi, 1)).coeff(m)
    return total


# ---------------------------------------------------------------------------
# orthogonal changes of frame


def cayley(Q, M):
    """(I − M)^{-1}(I + M) for M ∈ so(h); lands in the identity component."""
    I = linalg.identity(DIM)
    return linalg.matmul(linalg.inverse(linalg.matadd(I, M, -1)), linalg.matadd(I, M))


def transform_form(g, a):
    """Push a form forward by the vector map g: each covector θ becomes θ∘g^{-1}."""
    ginv = linalg.inverse(g)
    images = [Multivector.covector(ginv[i]) for i in range(DIM)]
    out = Multivector()
    for mask, c in a.items():
        term = Multivector.scalar(c)
        for i in range(DIM):
            if mask >> i & 1:
                term = wedge(term, images[i])
        out = out + term
    return out


def random_so_element(Q, rng, lo=-1, hi=1):
    hinv = [list(r) for r in Q.inverse_metric]
    S = linalg.zeros(DIM)
    for p, q in itertools.combinations(range(DIM), 2):
        x = Fraction(rng.randint(lo, hi), rng.choice([1, 2]))
        S[p][q], S[q][p] = x, -x
    return linalg.matmul(hinv, S)


def random_structure(S, rng):
    """A rotated copy of S by a random Cayley element of SO_0(h)."""
    while True:
        M = random_so_element(S.Q, rng)
        try:
            g = cayley(S.Q, M)
        except linalg.SingularMatrixError:
            continue
        phi = transform_form(g, S.phi)
        out = check_g2star(S.Q, S.l, phi)
        if out is None:
            raise StructureError("rotated form lost the G2* equations")
        return out


# ---------------------------------------------------------------------------
# the canonical fixture


def search_canonical_fixtures(with_stabilizer=True):
    """All (signs, l, κ) making the canonical 3-form a G2*-structure with c = κ."""
    from .stabilizer import stabilizer_algebra

    phi = parse_multivector(CANONICAL_PHI)
    found = []
    for neg in itertools.combinations(range(DIM), 3):
        signs = [(-1 if i in neg else 1) for i in range(DIM)]
        Q = QuadraticSpace.diagonal(signs)
        if inner(Q, phi, phi) != -7:
            continue
        rhs = hodge(Q, gen_product(Q, phi, phi, 1))
        for l in (1, -1):
            for kappa in (1, -1):
                if phi * (6 * kappa) != rhs * l:
                    continue
                if with_stabilizer and stabilizer_algebra(Q, phi).dim != 14:
                    continue
                found.append({"signs": "".join("+" if s > 0 else "-" for s in signs),
                              "l": l, "kappa": kappa})
    return found


def write_fixture(path):
    found = search_canonical_fixtures()
    preferred = [f for f in found if f["kappa"] == 1] or found
    data = {"phi": CANONICAL_PHI, "orientation": 1, "canonical": preferred[0], "all": found}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
    return data


def load_fixture():
    text = resources.files("spinorforms").joinpath("data/g2_fixture.json").read_text()
    return json.loads(text)


def canonical_structure(scale=1):
    fx = load_fixture()
    can = fx["canonical"]
    Q = QuadraticSpace.diagonal(can["signs"], fx.get("orientation", 1))
    phi = parse_multivector(fx["phi"]) * scale
    S = check_g2star(Q, can["l"], phi)
    if S is None:
        raise StructureError("fixture does not define a G2*-structure")
    return S
