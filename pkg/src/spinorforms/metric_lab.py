"""An explicit family of signature (4,3) metrics on R^7.

    g = Σ_i (H_i dx_i⊗dx_i + E_i dx_i⊙dy_i) + G dz⊗dz,   dx⊙dy = dx⊗dy + dy⊗dx,

in coordinates (x1, y1, x2, y2, x3, y3, z).  E_i and G stand for the positive
functions e^{K_i} and e^{F}; derivatives of K_i are written ∂E_i / E_i.  All
coefficient functions are polynomials and every derived quantity is an exact
rational function.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .blades import DIM, Multivector, QuadraticSpace, wedge_all
from .exact import VARS, Poly7, RatFun7, parse_poly

X = (0, 2, 4)
Y = (1, 3, 5)
Z = 6
ZERO = RatFun7(0)


class PreconditionError(ValueError):
    pass


def _rf(p):
    return RatFun7.coerce(p)


@dataclass
class AnsatzMetric:
    H: tuple
    E: tuple
    G: Poly7

    def __post_init__(self):
        self.H = tuple(self.H)
        self.E = tuple(self.E)
        if len(self.H) != 3 or len(self.E) != 3:
            raise ValueError("need three H and three E functions")
        if any(e.is_zero() for e in self.E) or self.G.is_zero():
            raise ValueError("E_i and G must not vanish identically")
        self._gamma = None

    @classmethod
    def from_strings(cls, H, E, G):
        return cls(tuple(parse_poly(h) for h in H), tuple(parse_poly(e) for e in E), parse_poly(G))

    @classmethod
    def from_json(cls, data):
        return cls.from_strings(data["H"], data["E"], data["G"])

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {"H": [str(h) for h in self.H], "E": [str(e) for e in self.E], "G": str(self.G)}

    def metric(self):
        g = [[Poly7() for _ in range(DIM)] for _ in range(DIM)]
        for i in range(3):
            x, y = X[i], Y[i]
            g[x][x] = self.H[i]
            g[x][y] = g[y][x] = self.E[i]
        g[Z][Z] = self.G
        return g

    def inverse(self):
        """Closed-form block inverse."""
        inv = [[ZERO] * DIM for _ in range(DIM)]
        for i in range(3):
            x, y = X[i], Y[i]
            e = _rf(self.E[i])
            inv[x][y] = inv[y][x] = e.reciprocal()
            inv[y][y] = -_rf(self.H[i]) / (e * e)
        inv[Z][Z] = _rf(self.G).reciprocal()
        return inv

    def metric_at(self, point):
        return [[p.eval(point) for p in row] for row in self.metric()]

    def christoffel(self):
        if self._gamma is None:
            self._gamma = christoffel(self)
        return self._gamma


def christoffel(g):
    """Γ[k][i][j] = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij)."""
    m = g.metric()
    inv = g.inverse()
    d = [[[m[a][b].diff(VARS[c]) for b in range(DIM)] for a in range(DIM)] for c in range(DIM)]
    first = [[[(d[i][l][j] + d[j][l][i] - d[l][i][j]) * Fraction(1, 2)
               for j in range(DIM)] for i in range(DIM)] for l in range(DIM)]
    gamma = [[[ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for k in range(DIM):
        row = [(l, inv[k][l]) for l in range(DIM) if not inv[k][l].is_zero()]
        for i in range(DIM):
            for j in range(i, DIM):
                acc = ZERO
                for l, c in row:
                    if not first[l][i][j].is_zero():
                        acc = acc + c * first[l][i][j]
                gamma[k][i][j] = gamma[k][j][i] = acc
    return gamma


def nabla_dx(g, i):
    """Matrix N[a][b] = (∇_{∂a} dx_i)(∂b) = −Γ^{x_i}_{ab}."""
    gam = g.christoffel()[X[i]]
    return [[-gam[a][b] for b in range(DIM)] for a in range(DIM)]


def _dlogE(g, i, var_index):
    return _rf(g.E[i].diff(VARS[var_index])) / _rf(g.E[i])


def formula_two_nabla_dx_z(g, i):
    """Displayed 2(∇dx_i)(∂_z) as a covector of rational functions."""
    out = [ZERO] * DIM
    out[X[i]] = -_dlogE(g, i, Z)
    out[Z] = _rf(g.G.diff(VARS[Y[i]])) / _rf(g.E[i])
    return out


def formula_two_nabla_dx_y(g, i, j):
    """Displayed 2(∇dx_i)(∂_{y_j})."""
    out = [ZERO] * DIM
    if i == j:
        return out
    out[X[j]] = _rf(g.E[j].diff(VARS[Y[i]])) / _rf(g.E[i])
    out[X[i]] = -_dlogE(g, i, Y[j])
    return out


def formula_two_nabla_dx_full(g, i, lead_sign=-1):
    """The displayed symmetric tensor 2∇dx_i as a 7x7 matrix.

    ``lead_sign`` is the exponent sign of the factor e^{±K_i} in the first term;
    −1 is the value that matches the Christoffel computation.
    """
    Ei = _rf(g.E[i])
    M = [[ZERO] * DIM for _ in range(DIM)]

    def sym(a, b, val):
        # dx_a ⊙ dx_b
        M[a][b] = M[a][b] + val
        M[b][a] = M[b][a] + val

    x, y = X[i], Y[i]
    lead = Ei.reciprocal() if lead_sign < 0 else Ei
    M[x][x] = M[x][x] + lead * _rf(g.H[i].diff(VARS[y]))
    for j in range(3):
        sym(x, X[j], -_dlogE(g, i, X[j]))
    for j in range(3):
        if j != i:
            sym(x, Y[j], -_dlogE(g, i, Y[j]))
    sym(x, Z, -_dlogE(g, i, Z))
    for j in range(3):
        if j != i:
            M[X[j]][X[j]] = M[X[j]][X[j]] + _rf(g.H[j].diff(VARS[y])) / Ei
            sym(X[j], Y[j], _rf(g.E[j].diff(VARS[y])) / Ei)
    M[Z][Z] = M[Z][Z] + _rf(g.G.diff(VARS[y])) / Ei
    return M


def check_displayed_formulas(g):
    """Compare the displayed 2∇dx_i data with the Christoffel computation."""
    z_ok = y_ok = full_ok = True
    full_printed_ok = True
    for i in range(3):
        N = nabla_dx(g, i)
        twice = [[N[a][b] * 2 for b in range(DIM)] for a in range(DIM)]
        col_z = [twice[a][Z] for a in range(DIM)]
        z_ok &= all(u == v for u, v in zip(col_z, formula_two_nabla_dx_z(g, i)))
        for j in range(3):
            col = [twice[a][Y[j]] for a in range(DIM)]
            y_ok &= all(u == v for u, v in zip(col, formula_two_nabla_dx_y(g, i, j)))
        F = formula_two_nabla_dx_full(g, i)
        full_ok &= all(twice[a][b] == F[a][b] for a in range(DIM) for b in range(DIM))
        P = formula_two_nabla_dx_full(g, i, lead_sign=1)
        full_printed_ok &= all(twice[a][b] == P[a][b] for a in range(DIM) for b in range(DIM))
    return {"z_column": z_ok, "y_columns": y_ok, "full_tensor": full_ok,
            "full_tensor_as_printed": full_printed_ok}


# ---------------------------------------------------------------------------
# contorsion


class ContorsionField:
    """A(u, v, w), antisymmetric in (v, w); stored sparsely."""

    def __init__(self, components=None):
        self._c = {}
        for (u, v, w), val in (components or {}).items():
            self.set(u, v, w, val)

    def set(self, u, v, w, val):
        val = RatFun7.coerce(val)
        if v == w:
            if not val.is_zero():
                raise ValueError("A(u, v, v) must vanish")
            return
        self._c[(u, v, w)] = val
        self._c[(u, w, v)] = -val

    def __call__(self, u, v, w):
        return self._c.get((u, v, w), ZERO)

    def items(self):
        return self._c.items()

    def is_antisymmetric(self):
        return all((self(u, w, v) + val).is_zero() for (u, v, w), val in self._c.items())

    def two_form_at(self, u, point):
        """A(∂_u, ·, ·) evaluated at a point, as a Multivector in the coordinate coframe."""
        terms = {}
        for v in range(DIM):
            for w in range(v + 1, DIM):
                val = self(u, v, w)
                if not val.is_zero():
                    terms[(1 << v) | (1 << w)] = val.eval(point)
        return Multivector(terms)


def contorsion_minimal(g, scale=Fraction(1, 2)):
    """The contorsion forced by involutivity; all other components vanish.

    2A(−, ∂_{y_i}, ∂_z) = ∂_z E_i dx_i − ∂_{y_i} G dz and
    2A(−, ∂_{y_i}, ∂_{y_j}) = ∂_{y_j} E_i dx_i − ∂_{y_i} E_j dx_j.
    ``scale = 2`` reproduces the normalisation with ½A on the left instead.
    """
    A = ContorsionField()
    for i in range(3):
        yi = Y[i]
        comp = {X[i]: _rf(g.E[i].diff("z")) * scale, Z: -_rf(g.G.diff(VARS[yi])) * scale}
        for u, val in comp.items():
            if not val.is_zero():
                A.set(u, yi, Z, val)
        for j in range(i + 1, 3):
            yj = Y[j]
            comp = {X[i]: _rf(g.E[i].diff(VARS[yj])) * scale,
                    X[j]: -_rf(g.E[j].diff(VARS[yi])) * scale}
            for u, val in comp.items():
                if not val.is_zero():
                    A.set(u, yi, yj, val)
    return A


def involutivity_check(g, A):
    """(∇_w dx_i)(∂_b) + E_i^{-1} A(w, ∂_{y_i}, ∂_b) = 0 for b ∈ {y_1, y_2, y_3, z}."""
    for i in range(3):
        N = nabla_dx(g, i)
        Ei = _rf(g.E[i])
        for w in range(DIM):
            for b in Y + (Z,):
                if not (N[w][b] + A(w, Y[i], b) / Ei).is_zero():
                    return False
    return True


def vanishing_components(A):
    """A(∂_{y_i}, ∂_{y_j}, ∂_z) = 0 and A(∂_{y_i}, ∂_{y_j}, ∂_{y_k}) = 0."""
    ok = all(A(yi, yj, Z).is_zero() for yi in Y for yj in Y)
    return ok and all(A(yi, yj, yk).is_zero() for yi in Y for yj in Y for yk in Y)


def torsion(A):
    """T(u, v, w) = A(u, v, w) − A(v, u, w) as a dict over nonzero components."""
    out = {}
    for u in range(DIM):
        for v in range(DIM):
            for w in range(DIM):
                t = A(u, v, w) - A(v, u, w)
                if not t.is_zero():
                    out[(u, v, w)] = t
    return out


def connection_torsion(g, A):
    """Torsion of ∇^g + A from its coefficients g(∇_{∂u} ∂v, ∂w) = Γ_{w,uv} + A(u, v, w)."""
    m = g.metric()
    gam = g.christoffel()
    out = {}
    for u in range(DIM):
        for v in range(DIM):
            for w in range(DIM):
                def coeff(a, b):
                    acc = A(a, b, w)
                    for k in range(DIM):
                        if not m[w][k].is_zero():
                            acc = acc + _rf(m[w][k]) * gam[k][a][b]
                    return acc
                t = coeff(u, v) - coeff(v, u)
                if not t.is_zero():
                    out[(u, v, w)] = t
    return out


# ---------------------------------------------------------------------------
# curvature


def ricci_component(g, b, d):
    """R_{bd} = ∂_a Γ^a_{db} − ∂_d Γ^a_{ab} + Γ^a_{ae} Γ^e_{db} − Γ^a_{de} Γ^e_{ab}."""
    gam = g.christoffel()
    acc = ZERO
    for a in range(DIM):
        t = gam[a][d][b]
        if not t.is_zero():
            acc = acc + t.diff(VARS[a])
        t = gam[a][a][b]
        if not t.is_zero():
            acc = acc - t.diff(VARS[d])
        for e in range(DIM):
            p, q = gam[a][a][e], gam[e][d][b]
            if not p.is_zero() and not q.is_zero():
                acc = acc + p * q
            p, q = gam[a][d][e], gam[e][a][b]
            if not p.is_zero() and not q.is_zero():
                acc = acc - p * q
    return acc


def scalar_curvature(g):
    """g^{bd} R_{bd}; only the (x_i,y_i), (y_i,y_i) and (z,z) entries of g^{-1} are nonzero."""
    inv = g.inverse()
    total = ZERO
    for b in range(DIM):
        for d in range(b, DIM):
            c = inv[b][d]
            if c.is_zero():
                continue
            r = ricci_component(g, b, d)
            total = total + c * r * (1 if b == d else 2)
    return total


def scalar_flat_condition(g):
    """Σ_i E_i^{-2} ∂²H_i/∂y_i²."""
    total = ZERO
    for i in range(3):
        y = VARS[Y[i]]
        e = _rf(g.E[i])
        total = total + _rf(g.H[i].diff(y).diff(y)) / (e * e)
    return total


def numeric_scalar_curvature(g, point, step=1e-2):
    """Floating-point scalar curvature from 5-point finite differences of g alone."""
    m = g.metric()
    p0 = np.array([float(x) for x in point])

    def gmat(p):
        return np.array([[q.eval_float(p) for q in row] for row in m])

    w = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12 * step)
    offs = (-2, -1, 0, 1, 2)

    def d1(f, p, c):
        acc = 0.0
        for k, o in zip(w, offs):
            if k:
                q = p.copy()
                q[c] += o * step
                acc = acc + k * f(q)
        return acc

    g0 = gmat(p0)
    ginv = np.linalg.inv(g0)
    dg = np.array([d1(gmat, p0, c) for c in range(DIM)])
    ddg = np.array([[d1(lambda q, c2=c2: d1(gmat, q, c2), p0, c1) for c2 in range(DIM)]
                    for c1 in range(DIM)])
    # first-kind symbols Γ_{l,ij} = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij) and their derivatives
    first = np.zeros((DIM, DIM, DIM))
    for l in range(DIM):
        for i in range(DIM):
            for j in range(DIM):
                first[l, i, j] = 0.5 * (dg[i, l, j] + dg[j, l, i] - dg[l, i, j])
    dfirst = np.zeros((DIM, DIM, DIM, DIM))
    for c in range(DIM):
        for l in range(DIM):
            for i in range(DIM):
                for j in range(DIM):
                    dfirst[c, l, i, j] = 0.5 * (ddg[c, i, l, j] + ddg[c, j, l, i] - ddg[c, l, i, j])
    gam = np.einsum("kl,lij->kij", ginv, first)
    dginv = -np.einsum("ka,cab,bl->ckl", ginv, dg, ginv)
    dgam = np.einsum("ckl,lij->ckij", dginv, first) + np.einsum("kl,clij->ckij", ginv, dfirst)
    ric = np.zeros((DIM, DIM))
    for b in range(DIM):
        for d in range(DIM):
            acc = 0.0
            for a in range(DIM):
                acc += dgam[a, a, d, b] - dgam[d, a, a, b]
                acc += gam[a, a, :] @ gam[:, d, b] - gam[a, d, :] @ gam[:, a, b]
            ric[b, d] = acc
    return float(np.sum(ginv * ric))


# ---------------------------------------------------------------------------
# isotropic triple and the Levi-Civita case


def triple_at(g, point):
    """(E_1 dx_1, E_2 dx_2, E_3 dx_3) at a point, in the coordinate coframe."""
    out = []
    for i in range(3):
        v = [Fraction(0)] * DIM
        v[X[i]] = g.E[i].eval(point)
        out.append(Multivector.covector(v))
    return tuple(out)


def nabla_triple_form_at(g, point, v):
    """∇^g_{∂v}(ϑ∧θ∧η) at a point."""
    gam = g.christoffel()
    tri = triple_at(g, point)
    derivs = []
    for i in range(3):
        coeffs = [Fraction(0)] * DIM
        Ei = g.E[i].eval(point)
        coeffs[X[i]] += g.E[i].diff(VARS[v]).eval(point)
        for b in range(DIM):
            gk = gam[X[i]][v][b]
            if not gk.is_zero():
                coeffs[b] -= Ei * gk.eval(point)
        derivs.append(Multivector.covector(coeffs))
    return (wedge_all(derivs[0], tri[1], tri[2]) + wedge_all(tri[0], derivs[1], tri[2])
            + wedge_all(tri[0], tri[1], derivs[2]))


def quadratic_space_at(g, point, unit_z=False):
    """The metric at a point; ``unit_z`` uses the frame vector ∂_z / sqrt(G)."""
    m = g.metric_at(point)
    if unit_z:
        m[Z][Z] = Fraction(1)
    return QuadraticSpace(m)


def lc_parallel_report(g, points, l=1):
    from .master import isotropic_rhs
    from .squares import check_square_conditions, is_isotropic_orthogonal

    allowed = {"x1", "x2", "x3"}
    for name, p in [(f"E{i + 1}", e) for i, e in enumerate(g.E)] + [("G", g.G)]:
        bad = sorted(set(var_names(p)) - allowed, key=VARS.index)
        if bad:
            raise PreconditionError(f"{name} depends on {bad[0]}; only x1, x2, x3 are allowed")
    zero = ContorsionField()
    report = {"involutive_with_A_zero": involutivity_check(g, zero), "points": []}
    for pt in points:
        pt = [Fraction(x) for x in pt]
        tri = triple_at(g, pt)
        Q = quadratic_space_at(g, pt, unit_z=True)
        verdict = check_square_conditions(Q, l, wedge_all(*tri))
        Qp = quadratic_space_at(g, pt)
        rates = []
        form = wedge_all(*tri)
        exact = True
        for v in range(DIM):
            nab = nabla_triple_form_at(g, pt, v)
            rhs, _ = isotropic_rhs(Qp, l, Multivector(), tri)
            diff = nab - rhs
            lam = _proportionality(diff, form)
            rates.append(str(lam) if lam is not None else None)
            exact &= lam == 0
        report["points"].append({
            "point": [str(x) for x in pt],
            "isotropic_orthogonal": is_isotropic_orthogonal(Qp, tri),
            "is_square": verdict.is_square,
            "kind": verdict.kind,
            "recurrence_rates": rates,
            "parallel_up_to_scale": all(r is not None for r in rates),
            "parallel_exactly": exact,
        })
    pts = report["points"]
    report["passed"] = (report["involutive_with_A_zero"]
                        and all(p["isotropic_orthogonal"] and p["is_square"]
                                and p["parallel_up_to_scale"] for p in pts))
    return report


def var_names(p):
    return [VARS[k] for k in range(DIM) if any(exp[k] for exp in p.terms)]


def _proportionality(diff, form):
    """λ with diff = λ·form, or None."""
    if not diff:
        return Fraction(0)
    m = next(iter(form.terms))
    lam = diff.coeff(m) / form.coeff(m)
    return lam if diff == form * lam else None


def torsion_cross_check(g, A, points, l=1):
    """At each point and direction, ∇^g_v(ϑ∧θ∧η) minus the isotropic right-hand side
    with 𝔞^(2) = A_v / 2, expressed as a multiple of ϑ∧θ∧η (None if not proportional)."""
    from .master import isotropic_rhs

    out = []
    for pt in points:
        pt = [Fraction(x) for x in pt]
        tri = triple_at(g, pt)
        Q = quadratic_space_at(g, pt)
        form = wedge_all(*tri)
        rates = []
        for v in range(DIM):
            a2 = A.two_form_at(v, pt) * Fraction(1, 2)
            rhs, _ = isotropic_rhs(Q, l, a2, tri)
            rates.append(_proportionality(nabla_triple_form_at(g, pt, v) - rhs, form))
        out.append(rates)
    return out


def load_data(name):
    return json.loads(resources.files("spinorforms").joinpath(f"data/{name}").read_text())


def sample_points():
    return [[Fraction(x) for x in p] for p in load_data("sample_points.json")["points"]]


def random_ansatz(rng, degree=2, lc=False):
    """Random polynomial ansatz; ``lc`` restricts E and G to x1, x2, x3."""
    def rpoly(vars_, const=0, deg=degree):
        p = Poly7.const(const)
        for _ in range(rng.randint(1, 3)):
            term = Poly7.const(Fraction(rng.randint(-3, 3), rng.choice([1, 2])))
            for _ in range(rng.randint(1, deg)):
                term = term * Poly7.var(rng.choice(vars_))
            p = p + term
        return p

    every = list(VARS)
    ev = ["x1", "x2", "x3"] if lc else every
    H = tuple(rpoly(every) for _ in range(3))
    E = tuple(rpoly(ev, const=rng.choice([1, 2, 3])) for _ in range(3))
    G = rpoly(ev, const=rng.choice([1, 2]))
    return AnsatzMetric(H, E, G)
