"""End-to-end verification suite.

Each ``criterion_N`` returns a dict with ``passed`` (bool), ``checks`` (named
booleans), ``certificates`` (exact data as strings or ints) and ``seconds``.
All randomness is seeded, so reports are reproducible apart from timings.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from . import linalg
from .blades import (NBLADES, Multivector, QuadraticSpace, geo_product, hodge, inner,
                     reversal, wedge_all)
from .g2 import (canonical_structure, decomposition_ranks, lemma_identities_report,
                 load_fixture, project_27, random_structure, split_three_form)
from .master import expanded_rhs, isotropic_rhs, master_rhs, reduced_rhs
from .metric_lab import (AnsatzMetric, check_displayed_formulas, contorsion_minimal,
                         involutivity_check, lc_parallel_report, load_data,
                         numeric_scalar_curvature, random_ansatz, sample_points,
                         scalar_curvature, scalar_flat_condition, vanishing_components)
from .spinors import (build_module, commutator_derivation, dequantize,
                      first_order_square_variation, matrix_commutator)
from .squares import (WitnessRejectedError, check_square_conditions,
                      is_isotropic_orthogonal, isotropic_factorize,
                      isotropic_normalized_equation)
from .stabilizer import (killing_radical, lie_structure_report, nilpotent_signature,
                         stabilizer_algebra)


def _result(checks, certificates, start):
    return {"passed": all(checks.values()), "checks": checks,
            "certificates": certificates, "seconds": round(time.perf_counter() - start, 3)}


# ---------------------------------------------------------------------------
# metrics used by the algebra checks


def random_metric(seed=3, signs=(4, 3)):
    """A symmetric integer metric of signature (4, 3) with small entries."""
    rng = random.Random(seed)
    while True:
        m = [[0] * 7 for _ in range(7)]
        for i in range(7):
            for j in range(i, 7):
                m[i][j] = m[j][i] = rng.randint(-2, 2)
        m = linalg.to_fractions(m)
        if linalg.det(m) == 0:
            continue
        if linalg.signature(m) == signs:
            return QuadraticSpace(m, name=f"random(seed={seed})")


def _integer_table(Q):
    """Structure constants scaled to integers: (rows, cols, values, scale) per product."""
    table = Q.product_table()
    scale = 1
    for terms in table.values():
        for _, c in terms:
            scale = math.lcm(scale, c.denominator)
    a_idx, b_idx, c_idx, vals = [], [], [], []
    for (a, b), terms in table.items():
        for c, v in terms:
            a_idx.append(a)
            b_idx.append(b)
            c_idx.append(c)
            vals.append(int(v * scale))
    return np.array(a_idx), np.array(b_idx), np.array(c_idx), vals, scale


def associativity_check(Q):
    """Exact check of (e^A ⋄ e^B) ⋄ e^C = e^A ⋄ (e^B ⋄ e^C) over all 128³ triples.

    The structure constants are scaled to integers and both sides are computed
    with sparse int64 products; a bound on the entries rules out overflow.
    """
    a, b, c, vals, scale = _integer_table(Q)
    peak = max(abs(v) for v in vals)
    if NBLADES * peak * peak >= 2 ** 62:
        raise OverflowError("structure constants too large for an int64 check")
    v = np.array(vals, dtype=np.int64)
    n = NBLADES
    # M1[(A, B), C] = T[A, B, C]; M2[E, (C, D)] = T[E, C, D]
    M1 = sp.csr_matrix((v, (a * n + b, c)), shape=(n * n, n), dtype=np.int64)
    M2 = sp.csr_matrix((v, (a, b * n + c)), shape=(n, n * n), dtype=np.int64)
    left_all = M1 @ M2
    for A in range(n):
        left = left_all[A * n:(A + 1) * n]                  # rows B, cols (C, D)
        LA = M1[A * n:(A + 1) * n]                          # rows E, cols D: T[A, E, D]
        right = (M1 @ LA).tocoo()                           # rows (B, C), cols D
        rows = right.row // n
        cols = (right.row % n) * n + right.col
        right = sp.csr_matrix((right.data, (rows, cols)), shape=(n, n * n), dtype=np.int64)
        if (left - right).count_nonzero():
            return False
    return True


# ---------------------------------------------------------------------------
# criteria


def criterion_1(seed=3):
    """Associativity of ⋄ for the orthonormal, null-basis and one random metric."""
    start = time.perf_counter()
    fx = load_fixture()
    spaces = {"orthonormal": QuadraticSpace.diagonal(fx["canonical"]["signs"]),
              "null_basis": QuadraticSpace.null_basis(),
              "random": random_metric(seed)}
    checks = {name: associativity_check(Q) for name, Q in spaces.items()}
    elapsed = time.perf_counter() - start
    checks["under_60s"] = elapsed < 60
    certs = {"random_metric": [[str(x) for x in row] for row in spaces["random"].metric]}
    return _result(checks, certs, start)


def criterion_2():
    """α⋄ν = ν⋄α = *τ(α) for all blades; ν⋄ν = 1."""
    start = time.perf_counter()
    Q = QuadraticSpace.diagonal(load_fixture()["canonical"]["signs"])
    nu = Q.volume()
    ok = True
    for m in range(NBLADES):
        a = Multivector.blade(m)
        left = geo_product(Q, a, nu)
        ok &= left == geo_product(Q, nu, a) == hodge(Q, reversal(a))
    checks = {"product_volume_all_blades": ok,
              "nu_squared_is_one": geo_product(Q, nu, nu) == Multivector.scalar(1)}
    return _result(checks, {"signature": list(Q.signature)}, start)


def criterion_3():
    """Canonical form, intrinsic equations and the 14-dim stabilizer."""
    start = time.perf_counter()
    fx = load_fixture()
    S = canonical_structure()
    L = stabilizer_algebra(S.Q, S.phi)
    krank = linalg.rank(L.killing_matrix())
    checks = {
        "norm_minus_7": inner(S.Q, S.phi, S.phi) == -7,
        "intrinsic_equations": S.l == fx["canonical"]["l"] and S.kappa == fx["canonical"]["kappa"],
        "stabilizer_dim_14": L.dim == 14,
        "killing_nondegenerate": krank == 14,
    }
    checks["under_5s"] = time.perf_counter() - start < 5
    certs = {"signs": fx["canonical"]["signs"], "l": S.l, "kappa": S.kappa, "c": str(S.c),
             "stabilizer_dim": L.dim, "killing_rank": krank}
    return _result(checks, certs, start)


def criterion_4():
    """Exact ranks of the type decompositions of Λ² and Λ³."""
    start = time.perf_counter()
    r = decomposition_ranks(canonical_structure())
    checks = {"two_form_ranks": (r["two_7"], r["two_14"], r["two_total"]) == (7, 14, 21),
              "three_form_ranks": (r["three_1"], r["three_7"], r["three_27"], r["three_total"])
              == (1, 7, 27, 35)}
    return _result(checks, r, start)


def criterion_5(seed=5):
    """The four contraction identities for c = 1, c = 2 and a rotated structure."""
    start = time.perf_counter()
    rng = random.Random(seed)
    S1 = canonical_structure()
    structures = {"c1": S1, "c2": canonical_structure(2), "rotated": random_structure(S1, rng)}
    checks, certs = {}, {}
    for name, S in structures.items():
        rep = lemma_identities_report(S, random.Random(seed), samples=10)
        for item in ("item1", "item2", "item3", "item4"):
            checks[f"{name}_{item}"] = rep[item]
        certs[name] = {"c": str(S.c), "l": S.l,
                       "item4_with_factor_3": rep["item4_with_factor_3"]}
    return _result(checks, certs, start)


def random_perturbations(rng, count):
    """Forms b·ε¹²³ + φ^⊥ with φ^⊥ free of ε¹²³ and ε⁴⁵⁶, and b² ≠ 1 or φ^⊥ ≠ 0."""
    masks = [m for m in range(NBLADES) if m.bit_count() == 3 and m not in (0b0000111, 0b0111000)]
    out = []
    while len(out) < count:
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if not b:
            continue
        perp = Multivector({m: Fraction(rng.choice([-2, -1, 1, 2]))
                            for m in rng.sample(masks, rng.randint(0, 3))})
        if b * b == 1 and not perp:
            continue
        out.append(Multivector.e(1, 2, 3) * b + perp)
    return out


def isotropic_rejects(Q, l, alpha, beta):
    """True when α fails the witness conditions or the normalised equation for β."""
    try:
        if not check_square_conditions(Q, l, alpha, beta).is_square:
            return True
    except WitnessRejectedError:
        return True
    return not isotropic_normalized_equation(Q, l, alpha, beta)


def criterion_6(seed=6, count=200):
    """The isotropic square ε¹²³ of the null-basis metric and its perturbations."""
    start = time.perf_counter()
    Q = QuadraticSpace.null_basis()
    alpha, beta = Multivector.e(1, 2, 3), Multivector.e(4, 5, 6)
    checks = {"pairing_is_one": inner(Q, alpha, beta) == 1}
    for l in (1, -1):
        checks[f"sandwich_l{l:+d}"] = isotropic_normalized_equation(Q, l, alpha, beta)
        checks[f"accepted_l{l:+d}"] = not isotropic_rejects(Q, l, alpha, beta)
    tri = isotropic_factorize(Q, alpha)
    checks["factorize_round_trip"] = (tri is not None and wedge_all(*tri) == alpha
                                      and is_isotropic_orthogonal(Q, tri))
    rng = random.Random(seed)
    perts = random_perturbations(rng, count)
    rejected = sum(isotropic_rejects(Q, rng.choice((1, -1)), p, beta) for p in perts)
    checks["perturbations_rejected"] = rejected == count
    certs = {"triple": [str(t) for t in tri] if tri else None,
             "perturbations": count, "rejected": rejected}
    return _result(checks, certs, start)


def criterion_7():
    """Structure of the stabilizer of ε¹²³ in the null-basis metric."""
    start = time.perf_counter()
    Q = QuadraticSpace.null_basis()
    L = stabilizer_algebra(Q, Multivector.e(1, 2, 3))
    rep = lie_structure_report(L)
    rad = L.subalgebra(killing_radical(L))
    sig = nilpotent_signature(rad)
    checks = {
        "dim_14": rep.dim == 14,
        "radical_dim_6": rep.killing_radical_dim == 6,
        "radical_lower_central": rep.killing_radical_lower_central_dims == [6, 3, 0],
        "radical_is_ideal": rep.killing_radical_is_ideal,
        "quotient_dim_8": rep.quotient_dim == 8,
        "quotient_killing_nondegenerate": rep.quotient_killing_rank == 8,
        "salamon_signature": sig == "(0,0,0,12,13,23)",
        "quotient_is_sl3": rep.quotient_real_form == "sl(3,R)",
    }
    certs = rep.to_json()
    certs["salamon"] = sig
    return _result(checks, certs, start)


def _random_spinor(rng):
    while True:
        eps = [Fraction(rng.randint(-3, 3)) for _ in range(8)]
        if any(eps):
            return eps


def criterion_8(seed=8, count=50):
    """Gamma relations, pairing, square identities and soundness of the classifier."""
    start = time.perf_counter()
    fx = load_fixture()
    signs, l = fx["canonical"]["signs"], fx["canonical"]["l"]
    m = build_module(signs, l)
    Q = m.space
    rng = random.Random(seed)
    eye = linalg.identity(8)
    relations = True
    for i in range(7):
        for j in range(7):
            ac = linalg.matadd(linalg.matmul(m.gammas[i], m.gammas[j]),
                               linalg.matmul(m.gammas[j], m.gammas[i]))
            want = linalg.matscale(eye, 2 * Q.inverse_metric[i][j])
            relations &= ac == want
    norm_ok = agree = square_ok = True
    for _ in range(count):
        eps = _random_spinor(rng)
        alpha = m.square(eps)
        phi = alpha.grade(3)
        norm_ok &= m.B(eps, eps) ** 2 == Fraction(-64, 7) * inner(Q, phi, phi)
        agree &= alpha == m.square_sum_formula(eps)
        square_ok &= check_square_conditions(Q, l, alpha).is_square
    checks = {
        "gamma_relations": relations,
        "volume_acts_as_l": m.gamma_volume() == linalg.matscale(eye, l),
        "pairing_space_1d_symmetric": m.pairing_space_dim() == 1
        and m.pairing == linalg.transpose(m.pairing),
        "pairing_norm_identity": norm_ok,
        "square_implementations_agree": agree,
        "squares_pass_classifier": square_ok,
    }
    return _result(checks, {"signs": signs, "l": l, "samples": count}, start)


def _random_two_form(rng):
    return Multivector({m: Fraction(rng.randint(-2, 2)) for m in range(NBLADES) if m.bit_count() == 2})


def _random_low(rng, density=0.3):
    return Multivector({m: Fraction(rng.randint(-3, 3)) for m in range(NBLADES)
                        if m.bit_count() <= 3 and rng.random() < density})


def criterion_9(seed=9, count=20):
    """Infinitesimal equivariance at blade and spinor level."""
    start = time.perf_counter()
    fx = load_fixture()
    m = build_module(fx["canonical"]["signs"], fx["canonical"]["l"])
    Q = m.space
    rng = random.Random(seed)
    blade_ok = spinor_ok = True
    for _ in range(count):
        omega, a = _random_two_form(rng), _random_low(rng)
        comm = geo_product(Q, omega, a) - geo_product(Q, a, omega)
        blade_ok &= commutator_derivation(Q, omega, a) == comm
        blade_ok &= dequantize(m, matrix_commutator(m.gamma(omega), m.gamma(a))) == comm
    for _ in range(count):
        omega, eps = _random_two_form(rng), _random_spinor(rng)
        s = m.square(eps)
        want = geo_product(Q, omega, s) - geo_product(Q, s, omega)
        spinor_ok &= first_order_square_variation(m, omega, eps) == want
    checks = {"blade_level": blade_ok, "spinor_level": spinor_ok}
    return _result(checks, {"samples": count}, start)


def _random_kappa27_free(S, rng):
    """A random 𝔞_v whose Λ³₂₇ component vanishes."""
    a = _random_low(rng)
    q1, q7, _ = split_three_form(S, a.grade(3))
    return a - a.grade(3) + q1 + q7


def criterion_10(seed=10):
    """Master system: expansion by degrees, reduction and the isotropic right-hand side."""
    start = time.perf_counter()
    rng = random.Random(seed)
    S = canonical_structure()
    Q = S.Q
    expand_ok = True
    for l in (1, -1):
        for _ in range(100):
            a_v = _random_low(rng)
            f = Fraction(rng.randint(-3, 3))
            phi = Multivector({m: Fraction(rng.randint(-2, 2)) for m in range(NBLADES)
                               if m.bit_count() == 3 and rng.random() < 0.4})
            rhs = master_rhs(Q, l, a_v, phi + f)
            scalar, three = expanded_rhs(Q, l, a_v, f, phi)
            expand_ok &= rhs.scalar_part() == scalar and rhs.grade(3) == three
            expand_ok &= not rhs.grade(1) and not rhs.grade(2)
    reduced_ok = obstruction_ok = True
    nonzero_seen = 0
    for _ in range(20):
        a_v = _random_kappa27_free(S, rng)
        rep = reduced_rhs(S, a_v, S.c)
        reduced_ok &= rep["identity_holds"] and not rep["obstruction"]
    for _ in range(20):
        a_v = _random_low(rng)
        rep = reduced_rhs(S, a_v, S.c)
        if rep["obstruction"]:
            nonzero_seen += 1
            obstruction_ok &= rep["obstruction"] == project_27(S, a_v.grade(3))
    obstruction_ok &= nonzero_seen > 0
    Qn = QuadraticSpace.null_basis()
    tri = isotropic_factorize(Qn, Multivector.e(1, 2, 3))
    iso_ok = True
    for _ in range(50):
        a_v = _random_low(rng)
        l = rng.choice((1, -1))
        rhs, constraint = isotropic_rhs(Qn, l, a_v, tri)
        scalar, three = expanded_rhs(Qn, l, a_v, 0, wedge_all(*tri))
        iso_ok &= rhs == three and constraint * -2 == scalar
    checks = {"master_equals_expanded": expand_ok, "reduced_equals_expanded": reduced_ok,
              "kappa27_reported": obstruction_ok, "isotropic_equals_expanded": iso_ok}
    return _result(checks, {"obstructions_seen": nonzero_seen}, start)


def criterion_11(seed=11, count=10):
    """Metric lab identities on random ansätze and the two fixtures."""
    start = time.perf_counter()
    rng = random.Random(seed)
    formulas_ok = contorsion_ok = vanishing_ok = condition_ok = True
    for _ in range(count):
        g = random_ansatz(rng)
        rep = check_displayed_formulas(g)
        formulas_ok &= rep["z_column"] and rep["y_columns"] and rep["full_tensor"]
        A = contorsion_minimal(g)
        contorsion_ok &= involutivity_check(g, A)
        vanishing_ok &= vanishing_components(A)
    for _ in range(3):
        g = random_ansatz(rng, lc=True)
        condition_ok &= scalar_curvature(g) == scalar_flat_condition(g)
    flat = AnsatzMetric.from_json(load_data("ansatz_scalar_flat.json"))
    exact = scalar_curvature(flat)
    points = sample_points()
    numeric = [numeric_scalar_curvature(flat, [float(x) for x in p]) for p in points]
    lc = AnsatzMetric.from_json(load_data("ansatz_lc.json"))
    lc_rep = lc_parallel_report(lc, points)
    checks = {
        "displayed_formulas": formulas_ok,
        "contorsion_involutive": contorsion_ok,
        "vanishing_components": vanishing_ok,
        "scalar_curvature_matches_condition": condition_ok,
        "fixture_scalar_flat_exact": exact.is_zero(),
        "fixture_scalar_flat_numeric": max(abs(x) for x in numeric) < 1e-6,
        "lc_fixture": lc_rep["passed"],
    }
    checks["under_120s"] = time.perf_counter() - start < 120
    certs = {"numeric_scalar_curvature_max_abs (float)": max(abs(x) for x in numeric),
             "lc_parallel_exactly": all(p["parallel_exactly"] for p in lc_rep["points"]),
             "lc_recurrence_rates": [p["recurrence_rates"] for p in lc_rep["points"]]}
    return _result(checks, certs, start)


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11,
}


def verify_all(which=None):
    """Run the selected criteria (all by default); returns {number: result}."""
    out = {}
    for n in sorted(which or CRITERIA):
        try:
            out[n] = CRITERIA[n]()
        except Exception as exc:  # a crash is a failed criterion, not a crashed run
            out[n] = {"passed": False, "checks": {}, "certificates": {},
                      "error": f"{type(exc).__name__}: {exc}", "seconds": None}
    return out
