"""The Kähler-Atiyah algebra of a seven-dimensional quadratic space.

A :class:`Multivector` is an exact element of the exterior algebra of the dual
space, stored as ``{mask: Fraction}`` where bit ``i`` of ``mask`` stands for the
covector ``e^(i+1)`` and a mask denotes the blade with increasing indices.

The geometric product of two forms expands into generalized products,

    a ⋄ b = sum_k (-1)^(k(k+1)/2 + deg(a) k) a △_k b,

and ``a △_k b`` contracts ``k`` slots of ``a`` against ``k`` slots of ``b``
with the inverse metric.  For blades the double sum over index tuples
collapses to a sum over index subsets weighted by minors of the inverse
metric, which is what :class:`QuadraticSpace` caches.  Diagonal metrics take
a shortcut through the usual bitmask sign rule.
"""

import itertools
import re
from fractions import Fraction

from . import linalg

DIM = 7
FULL = (1 << DIM) - 1
NBLADES = 1 << DIM
LOW_MASKS = tuple(m for m in range(NBLADES) if m.bit_count() <= 3)


class MultivectorParseError(ValueError):
    """Malformed multivector text; ``column`` is 1-based."""

    def __init__(self, message, column=None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class DegreeError(ValueError):
    pass


class DegenerateMetricError(ValueError):
    pass


class IrrationalVolumeError(ValueError):
    pass


def mask_indices(mask):
    """1-based covector indices in a blade mask."""
    return tuple(i + 1 for i in range(DIM) if mask >> i & 1)


def indices_mask(indices):
    m = 0
    for i in indices:
        if not 1 <= i <= DIM:
            raise ValueError(f"covector index {i} out of range 1..{DIM}")
        if m >> (i - 1) & 1:
            raise ValueError(f"repeated index {i}")
        m |= 1 << (i - 1)
    return m


def _reorder_sign(a, b):
    """Sign of moving blade ``b``'s vectors past blade ``a``'s (bit masks)."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


_WEDGE_SIGN = [[0 if a & b else _reorder_sign(a, b) for b in range(NBLADES)]
               for a in range(NBLADES)]


def _contract_one(mask, i):
    """ι_{e_i} on blade ``mask`` (0-based ``i``): ``(sign, new_mask)`` or None."""
    if not mask >> i & 1:
        return None
    below = (mask & ((1 << i) - 1)).bit_count()
    return (-1 if below & 1 else 1), mask & ~(1 << i)


def _contract_subset(mask, sub):
    """ι_{e_i1} ... ι_{e_ik} applied to ``mask`` for the sorted indices of ``sub``.

    The innermost (last) index acts first.
    """
    sign = 1
    for i in reversed([j for j in range(DIM) if sub >> j & 1]):
        r = _contract_one(mask, i)
        if r is None:
            return None
        s, mask = r
        sign *= s
    return sign, mask


def _submasks_of_size(mask, k):
    bits = [1 << i for i in range(DIM) if mask >> i & 1]
    for combo in itertools.combinations(bits, k):
        yield sum(combo)


class Multivector:
    """Exact element of the exterior algebra; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mask, c in terms.items():
                c = Fraction(c)
                if c:
                    if not 0 <= mask < NBLADES:
                        raise ValueError(f"blade mask {mask} out of range")
                    clean[mask] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        mv = cls.__new__(cls)
        mv._terms = terms
        return mv

    @classmethod
    def scalar(cls, c):
        return cls({0: c})

    @classmethod
    def blade(cls, mask, coeff=1):
        return cls({mask: coeff})

    @classmethod
    def e(cls, *indices, coeff=1):
        """``Multivector.e(1, 2, 7)`` is e^127."""
        return cls({indices_mask(indices): coeff}) if indices else cls.scalar(coeff)

    @classmethod
    def covector(cls, coeffs):
        return cls({1 << i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text):
        return parse_multivector(text)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mask):
        return self._terms.get(mask, Fraction(0))

    def __getitem__(self, mask):
        return self.coeff(mask)

    def grade(self, k):
        return Multivector._raw({m: c for m, c in self._terms.items() if m.bit_count() == k})

    def grades(self):
        return sorted({m.bit_count() for m in self._terms})

    def scalar_part(self):
        return self._terms.get(0, Fraction(0))

    def is_homogeneous(self, k=None):
        g = self.grades()
        if not g:
            return True
        return len(g) == 1 and (k is None or g[0] == k)

    def max_grade(self):
        return max((m.bit_count() for m in self._terms), default=-1)

    def covector_coeffs(self):
        if any(m.bit_count() != 1 for m in self._terms):
            raise DegreeError("not a pure one-form")
        return [self._terms.get(1 << i, Fraction(0)) for i in range(DIM)]

    def truncated(self):
        """Projection onto degrees at most three."""
        return Multivector._raw({m: c for m, c in self._terms.items() if m.bit_count() <= 3})

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return Multivector._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Multivector._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s):
        if not isinstance(s, (int, Fraction)):
            return NotImplemented
        s = Fraction(s)
        if not s:
            return Multivector()
        return Multivector._raw({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s))

    def __xor__(self, other):
        return wedge(self, other)

    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({format_multivector(self)!r})"


def format_multivector(a):
    if not a._terms:
        return "0"
    parts = []
    for m in sorted(a._terms, key=lambda m: (m.bit_count(), mask_indices(m))):
        c = a._terms[m]
        mag = abs(c)
        if m == 0:
            body = str(mag)
        else:
            name = "e" + "".join(str(i) for i in mask_indices(m))
            body = name if mag == 1 else f"{mag}*{name}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(r"(\d+(?:/\d+)?)?\s*(\*)?\s*(e(\d*))?")


def parse_multivector(text):
    """Parse e.g. ``"-e127 - e135 + 1/8 + 3/2*e4"``."""
    if not isinstance(text, str):
        raise MultivectorParseError("multivector text must be a string")
    s = text
    n = len(s)
    pos = 0
    out = Multivector()
    first = True
    while True:
        while pos < n and s[pos].isspace():
            pos += 1
        if pos >= n:
            if first:
                raise MultivectorParseError("empty multivector", pos + 1)
            return out
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
            while pos < n and s[pos].isspace():
                pos += 1
        elif not first:
            raise MultivectorParseError(f"expected '+' or '-', found {s[pos]!r}", pos + 1)
        first = False
        start = pos
        m = _TERM_RE.match(s, pos)
        coeff_txt, star, blade_txt, digits = m.group(1), m.group(2), m.group(3), m.group(4)
        if coeff_txt is None and blade_txt is None:
            raise MultivectorParseError("expected a coefficient or a blade 'e...'", start + 1)
        if star and blade_txt is None:
            raise MultivectorParseError("'*' must be followed by a blade", m.end() + 1)
        if star and coeff_txt is None:
            raise MultivectorParseError("'*' needs a coefficient before it", start + 1)
        coeff = Fraction(coeff_txt) if coeff_txt else Fraction(1)
        mask = 0
        if blade_txt is not None:
            if not digits:
                raise MultivectorParseError("blade 'e' needs indices", m.start(3) + 1)
            idx = [int(ch) for ch in digits]
            for j, i in enumerate(idx):
                if not 1 <= i <= DIM:
                    raise MultivectorParseError(f"index {i} out of range 1..{DIM}", m.start(4) + j + 1)
                if j and idx[j - 1] >= i:
                    raise MultivectorParseError("blade indices must be strictly increasing",
                                                m.start(4) + j + 1)
            mask = indices_mask(idx)
        pos = m.end()
        if pos < n and not s[pos].isspace() and s[pos] not in "+-":
            raise MultivectorParseError(f"unexpected character {s[pos]!r}", pos + 1)
        out = out + Multivector({mask: sign * coeff})


# ---------------------------------------------------------------------------
# metric-independent operations


def wedge(a, b):
    out = {}
    for ma, ca in a._terms.items():
        row = _WEDGE_SIGN[ma]
        for mb, cb in b._terms.items():
            s = row[mb]
            if s:
                m = ma | mb
                v = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return Multivector._raw(out)


def wedge_all(*forms):
    out = Multivector.scalar(1)
    for f in forms:
        out = wedge(out, f)
    return out


def interior(v, a):
    """ι_v a for a vector ``v`` given by its seven components."""
    v = [Fraction(x) for x in v]
    out = {}
    for mask, c in a._terms.items():
        for i in range(DIM):
            if v[i] and mask >> i & 1:
                s, nm = _contract_one(mask, i)
                val = out.get(nm, 0) + s * v[i] * c
                if val:
                    out[nm] = val
                else:
                    out.pop(nm, None)
    return Multivector._raw(out)


def interior_basis(i, a):
    """ι_{e_i} a for the 1-based basis vector ``e_i``."""
    v = [0] * DIM
    v[i - 1] = 1
    return interior(v, a)


def grade_auto(a):
    """π: (-1)^k on degree k."""
    return Multivector._raw({m: (-c if m.bit_count() & 1 else c) for m, c in a._terms.items()})


def _rev_sign(k):
    return -1 if (k * (k - 1) // 2) & 1 else 1


def reversal(a):
    """τ: (-1)^(k(k-1)/2) on degree k."""
    return Multivector._raw({m: c * _rev_sign(m.bit_count()) for m, c in a._terms.items()})


def proj_low(a):
    """P_<: keep degrees 0..3."""
    return a.truncated()


def derivation_extension(linear_map, a):
    """Extend a linear map on one-forms to a degree-preserving derivation of ∧.

    ``linear_map`` takes a 1-based index ``i`` and returns the image of ``e^i``.
    """
    images = [linear_map(i + 1) for i in range(DIM)]
    out = Multivector()
    for mask, c in a._terms.items():
        idx = [i for i in range(DIM) if mask >> i & 1]
        for p, i in enumerate(idx):
            left = Multivector.blade(sum(1 << j for j in idx[:p]))
            right = Multivector.blade(sum(1 << j for j in idx[p + 1:]))
            out = out + wedge(wedge(left, images[i]), right) * c
    return out


# ---------------------------------------------------------------------------
# quadratic space


class QuadraticSpace:
    """A nondegenerate symmetric rational metric on V (vectors), with orientation.

    ``metric`` is h on vectors; ``inverse_metric`` is h* on covectors.  Product
    tables are filled lazily and cached; the object is otherwise immutable.
    """

    def __init__(self, metric, orientation=1, name=None):
        metric = linalg.to_fractions(metric)
        if len(metric) != DIM or any(len(r) != DIM for r in metric):
            raise ValueError("metric must be 7x7")
        if any(metric[i][j] != metric[j][i] for i in range(DIM) for j in range(DIM)):
            raise ValueError("metric must be symmetric")
        try:
            inv = linalg.inverse(metric)
        except linalg.SingularMatrixError:
            raise DegenerateMetricError("metric is degenerate") from None
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.metric = tuple(tuple(r) for r in metric)
        self.inverse_metric = tuple(tuple(r) for r in inv)
        self.orientation = orientation
        self.name = name
        self.dim_plus, self.dim_minus = linalg.signature(metric)
        self.is_diagonal = all(metric[i][j] == 0 for i in range(DIM) for j in range(DIM) if i != j)
        self._minors = None
        self._table = {}
        self._volume = None

    # -- constructors --------------------------------------------------
    @classmethod
    def diagonal(cls, signs, orientation=1):
        if isinstance(signs, str):
            signs = parse_signature(signs)
        signs = list(signs)
        if len(signs) != DIM:
            raise ValueError("need seven diagonal entries")
        m = [[Fraction(signs[i]) if i == j else Fraction(0) for j in range(DIM)] for i in range(DIM)]
        return cls(m, orientation, name="".join("+" if s > 0 else "-" for s in signs)
                   if all(abs(s) == 1 for s in signs) else None)

    @classmethod
    def null_basis(cls, orientation=1):
        """The isotropic-basis metric [[0, 1, 0], [1, 0, 0], [0, 0, 1]] in 3+3+1 blocks."""
        m = [[Fraction(0)] * DIM for _ in range(DIM)]
        for i in range(3):
            m[i][i + 3] = m[i + 3][i] = Fraction(1)
        m[6][6] = Fraction(1)
        return cls(m, orientation, name="null")

    def to_json(self):
        return {"metric": [[str(x) for x in row] for row in self.metric],
                "orientation": self.orientation}

    @classmethod
    def from_json(cls, data):
        return cls(data["metric"], data.get("orientation", 1), name=data.get("name"))

    @property
    def signature(self):
        return self.dim_plus, self.dim_minus

    def require_signature(self, p=4, q=3):
        if self.signature != (p, q):
            raise ValueError(f"signature {self.signature} but ({p},{q}) is required")

    def diagonal_entries(self):
        return [self.inverse_metric[i][i] for i in range(DIM)]

    # -- minors of the inverse metric ------------------------------------
    def _build_minors(self):
        hinv = self.inverse_metric
        by_size = [[m for m in range(NBLADES) if m.bit_count() == k] for k in range(DIM + 1)]
        minors = {}
        for k, masks in enumerate(by_size):
            for mi in masks:
                rows = [i for i in range(DIM) if mi >> i & 1]
                for mj in masks:
                    cols = [j for j in range(DIM) if mj >> j & 1]
                    d = linalg.det([[hinv[r][c] for c in cols] for r in rows])
                    if d:
                        minors.setdefault(mi, []).append((mj, d))
        self._minors = minors

    def minor(self, mi, mj):
        """det of h*[I, J] for index sets given as masks of equal size."""
        if self._minors is None:
            self._build_minors()
        for m, d in self._minors.get(mi, ()):
            if m == mj:
                return d
        return Fraction(0)

    def minor_partners(self, mi):
        if self._minors is None:
            self._build_minors()
        return self._minors.get(mi, ())

    # -- products of basis blades ---------------------------------------
    def blade_gen_product(self, ma, mb, k):
        """Terms of e^A △_k e^B as a dict mask -> Fraction."""
        out = {}
        if k > ma.bit_count() or k > mb.bit_count():
            return out
        for sub_a in _submasks_of_size(ma, k):
            ra = _contract_subset(ma, sub_a)
            sa, rest_a = ra
            for sub_b, d in self.minor_partners(sub_a):
                if sub_b & mb != sub_b:
                    continue
                sb, rest_b = _contract_subset(mb, sub_b)
                w = _WEDGE_SIGN[rest_a][rest_b]
                if not w:
                    continue
                m = rest_a | rest_b
                v = out.get(m, 0) + sa * sb * w * d
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def blade_product(self, ma, mb):
        """Terms of e^A ⋄ e^B, cached."""
        key = (ma, mb)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if self.is_diagonal:
            common = ma & mb
            c = Fraction(_reorder_sign(ma, mb))
            for i in range(DIM):
                if common >> i & 1:
                    c *= self.inverse_metric[i][i]
            res = ((ma ^ mb, c),)
        else:
            a = ma.bit_count()
            acc = {}
            for k in range(min(a, mb.bit_count()) + 1):
                s = -1 if (k * (k + 1) // 2 + a * k) & 1 else 1
                for m, v in self.blade_gen_product(ma, mb, k).items():
                    nv = acc.get(m, 0) + s * v
                    if nv:
                        acc[m] = nv
                    else:
                        acc.pop(m, None)
            res = tuple(acc.items())
        self._table[key] = res
        return res

    def product_table(self):
        """Full structure constants ``{(A, B): ((C, coeff), ...)}``."""
        for ma in range(NBLADES):
            for mb in range(NBLADES):
                self.blade_product(ma, mb)
        return self._table

    # -- volume ----------------------------------------------------------
    def volume(self):
        if self._volume is None:
            d = linalg.det(self.metric)
            root = linalg.rational_sqrt(abs(d))
            if root is None:
                raise IrrationalVolumeError(
                    f"|det h| = {abs(d)} is not a rational square; the volume form is irrational")
            self._volume = Multivector({FULL: self.orientation * root})
        return self._volume

    # -- musical isomorphisms --------------------------------------------
    def sharp(self, theta):
        c = theta.covector_coeffs() if isinstance(theta, Multivector) else [Fraction(x) for x in theta]
        return linalg.matvec([list(r) for r in self.inverse_metric], c)

    def flat(self, v):
        return Multivector.covector(linalg.matvec([list(r) for r in self.metric], list(v)))


def parse_signature(text):
    text = text.replace("−", "-")
    if len(text) != DIM or any(ch not in "+-" for ch in text):
        raise ValueError(f"signature must be {DIM} characters from '+-', got {text!r}")
    return [1 if ch == "+" else -1 for ch in text]


# ---------------------------------------------------------------------------
# metric-dependent operations


def sharp(Q, theta):
    if not isinstance(theta, Multivector) or not theta.is_homogeneous(1):
        if not (isinstance(theta, Multivector) and not theta):
            raise DegreeError("sharp needs a one-form")
    return Q.sharp(theta)


def flat(Q, v):
    return Q.flat(v)


def gen_product(Q, a, b, k):
    if not isinstance(k, int) or not 0 <= k <= DIM:
        raise ValueError(f"generalized product index {k} outside 0..{DIM}")
    out = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            for m, v in Q.blade_gen_product(ma, mb, k).items():
                nv = out.get(m, 0) + ca * cb * v
                if nv:
                    out[m] = nv
                else:
                    out.pop(m, None)
    return Multivector._raw(out)


def geo_product(Q, a, b):
    out = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            cc = ca * cb
            for m, v in Q.blade_product(ma, mb):
                nv = out.get(m, 0) + cc * v
                if nv:
                    out[m] = nv
                else:
                    out.pop(m, None)
    return Multivector._raw(out)


def geo_chain(Q, *forms):
    out = forms[0]
    for f in forms[1:]:
        out = geo_product(Q, out, f)
    return out


def inner(Q, a, b):
    """Extended metric ⟨a, b⟩, degree by degree; mixed degrees pair to zero."""
    total = Fraction(0)
    for ma, ca in a._terms.items():
        for mb, d in Q.minor_partners(ma):
            cb = b._terms.get(mb)
            if cb:
                total += ca * cb * d
    return total


def volume(Q):
    return Q.volume()


def hodge(Q, a):
    """*a := τ(a) ⋄ ν."""
    return geo_product(Q, reversal(a), Q.volume())


def proj_half(Q, l, a):
    """P_l(a) = ½(a + l *τ(a))."""
    _check_sign(l)
    return (a + hodge(Q, reversal(a)) * l) * Fraction(1, 2)


def _check_sign(s):
    if s not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {s!r}")


def _check_low(a, what):
    if a.max_grade() > 3:
        raise DegreeError(f"{what} has components of degree >= 4")


def vee(Q, l, a, b):
    """a ∨ b = 2 P_<(P_l(a ⋄ b)) for truncated forms."""
    _check_sign(l)
    _check_low(a, "left factor")
    _check_low(b, "right factor")
    p = geo_product(Q, a, b)
    return (p + hodge(Q, reversal(p)) * l).truncated()


def vee_chain(Q, l, *forms):
    out = forms[0]
    for f in forms[1:]:
        out = vee(Q, l, out, f)
    return out


def commutator(Q, a, b):
    return geo_product(Q, a, b) - geo_product(Q, b, a)


def basis_covector(i, coeff=1):
    return Multivector.e(i, coeff=coeff)
