"""Command-line front end.

Every subcommand prints a report with three sections: ``verdicts`` (booleans),
``certificates`` (exact data, rationals as "p/q" strings) and ``timing``.  The
exit status is 0 when every verdict is true, 1 when one is false and 2 on
malformed input.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .blades import (NBLADES, DegenerateMetricError, DegreeError, IrrationalVolumeError,
                     Multivector, MultivectorParseError, QuadraticSpace, geo_product, hodge,
                     inner, parse_multivector, parse_signature, reversal, wedge)
from .exact import EvaluationError, PolyParseError
from .g2 import (IrrationalScaleError, check_g2star, decomposition_ranks,
                 lemma_identities_report, load_fixture, split_three_form, split_two_form)
from .master import decompose_a, expanded_rhs, master_rhs, reduced_rhs
from .metric_lab import (AnsatzMetric, PreconditionError, check_displayed_formulas,
                         connection_torsion, contorsion_minimal, involutivity_check,
                         lc_parallel_report, numeric_scalar_curvature, sample_points,
                         scalar_curvature, scalar_flat_condition, torsion, vanishing_components,
                         var_names)
from .spinors import build_module, parse_spinor
from .squares import WitnessRejectedError, check_square_conditions
from .stabilizer import (NotNilpotentError, killing_radical, lie_structure_report,
                         nilpotent_signature, stabilizer_algebra)
from .verify import associativity_check, verify_all


class InputError(Exception):
    """Bad command-line input; carries the offending text and a 1-based column."""

    def __init__(self, flag, message, text=None, column=None):
        self.flag, self.text, self.column = flag, text, column
        super().__init__(message)

    def render(self):
        lines = [f"error: {self.flag}: {self}"]
        if self.text is not None and self.column is not None:
            lines.append(f"  {self.text}")
            lines.append("  " + " " * (self.column - 1) + "^")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, (Fraction, Multivector)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return str(x)


# ---------------------------------------------------------------------------
# input helpers


def _multivector(flag, text):
    try:
        return parse_multivector(text)
    except MultivectorParseError as exc:
        raise InputError(flag, str(exc), text, exc.column) from None


def _fixture():
    return load_fixture()["canonical"]


def _space(args):
    if getattr(args, "metric", None):
        try:
            with open(args.metric) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError("--metric", str(exc)) from None
        except json.JSONDecodeError as exc:
            raise InputError("--metric", f"{exc.msg} (line {exc.lineno}, column {exc.colno})") from None
        try:
            return QuadraticSpace.from_json(data)
        except (KeyError, TypeError, ValueError, ZeroDivisionError, DegenerateMetricError) as exc:
            raise InputError("--metric", f"invalid metric: {exc}") from None
    text = getattr(args, "signature", None) or _fixture()["signs"]
    try:
        return QuadraticSpace.diagonal(parse_signature(text))
    except ValueError as exc:
        raise InputError("--signature", str(exc)) from None


def _signs(args):
    text = getattr(args, "signature", None) or _fixture()["signs"]
    try:
        return parse_signature(text)
    except ValueError as exc:
        raise InputError("--signature", str(exc)) from None


def _l(args):
    return args.l if args.l is not None else _fixture()["l"]


def _ansatz(args):
    try:
        return AnsatzMetric.load(args.ansatz)
    except OSError as exc:
        raise InputError("--ansatz", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("--ansatz", f"{exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    except PolyParseError as exc:
        raise InputError("--ansatz", str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("--ansatz", f"invalid ansatz: {exc}") from None


def _structure(args):
    Q = _space(args)
    phi = _multivector("--phi", args.phi) if args.phi else parse_multivector(load_fixture()["phi"])
    try:
        return check_g2star(Q, _l(args), phi), Q, phi
    except (DegreeError, IrrationalScaleError) as exc:
        raise InputError("--phi", str(exc)) from None


def _require_structure(args):
    S, _, _ = _structure(args)
    if S is None:
        raise InputError("--phi", "phi does not define a G2*-structure for this metric and l")
    return S


# ---------------------------------------------------------------------------
# subcommands; each returns (verdicts, certificates)


def cmd_algebra_selftest(args):
    Q = _space(args)
    verdicts = {"associative": associativity_check(Q)}
    certs = {"signature": list(Q.signature)}
    try:
        nu = Q.volume()
    except IrrationalVolumeError as exc:
        certs["volume"] = str(exc)
        return verdicts, certs
    ok = gram = True
    for m in range(NBLADES):
        a = Multivector.blade(m)
        ok &= geo_product(Q, a, nu) == geo_product(Q, nu, a) == hodge(Q, reversal(a))
        for mb in range(NBLADES):
            if mb.bit_count() == m.bit_count():
                b = Multivector.blade(mb)
                gram &= wedge(a, hodge(Q, b)) == nu * inner(Q, a, b)
    square = geo_product(Q, nu, nu)
    verdicts["product_volume"] = ok
    verdicts["hodge_gram_identity"] = gram
    if Q.signature == (4, 3):
        verdicts["volume_squares_to_one"] = square == Multivector.scalar(1)
    certs["volume"] = str(nu)
    certs["volume_squared"] = str(square)
    return verdicts, certs


def cmd_square_check(args):
    Q = _space(args)
    alpha = _multivector("--alpha", args.alpha)
    beta = _multivector("--beta", args.beta) if args.beta else None
    try:
        verdict = check_square_conditions(Q, _l(args), alpha, beta)
    except DegreeError as exc:
        raise InputError("--alpha", str(exc)) from None
    except WitnessRejectedError as exc:
        raise InputError("--beta", str(exc)) from None
    return {"is_square": verdict.is_square}, verdict.to_json()


def cmd_g2_verify(args):
    S, Q, phi = _structure(args)
    certs = {"norm": inner(Q, phi, phi), "l": _l(args)}
    verdicts = {"g2star": S is not None}
    if S is not None:
        certs.update(S.to_json())
        if not args.no_stabilizer:
            dim = stabilizer_algebra(Q, phi).dim
            verdicts["stabilizer_dim_14"] = dim == 14
            certs["stabilizer_dim"] = dim
    return verdicts, certs


def cmd_g2_decompose(args):
    S = _require_structure(args)
    ranks = decomposition_ranks(S)
    verdicts = {"two_form_ranks": (ranks["two_7"], ranks["two_14"]) == (7, 14),
                "three_form_ranks": (ranks["three_1"], ranks["three_7"], ranks["three_27"])
                == (1, 7, 27)}
    certs = {"ranks": ranks}
    if args.alpha:
        a = _multivector("--alpha", args.alpha)
        if a.grade(2):
            p7, p14 = split_two_form(S, a.grade(2))
            certs["two_form"] = {"7": p7, "14": p14}
        if a.grade(3):
            q1, q7, q27 = split_three_form(S, a.grade(3))
            certs["three_form"] = {"1": q1, "7": q7, "27": q27}
    return verdicts, certs


def cmd_g2_lemma(args):
    S = _require_structure(args)
    rep = lemma_identities_report(S, random.Random(args.seed), samples=args.samples)
    verdicts = {k: rep[k] for k in ("item1", "item2", "item3", "item4")}
    certs = {"c": S.c, "l": S.l, "item4_with_factor_3": rep["item4_with_factor_3"]}
    return verdicts, certs


def cmd_stab_compute(args):
    Q = _space(args)
    alpha = _multivector("--alpha", args.alpha)
    L = stabilizer_algebra(Q, alpha)
    rep = lie_structure_report(L)
    certs = rep.to_json()
    rad = killing_radical(L)
    if rad:
        try:
            certs["radical_salamon"] = nilpotent_signature(L.subalgebra(rad))
        except NotNilpotentError as exc:
            certs["radical_salamon"] = f"not nilpotent: {exc}"
    verdicts = {"radical_is_ideal": rep.killing_radical_is_ideal}
    if args.expect_dim is not None:
        verdicts["expected_dim"] = rep.dim == args.expect_dim
    return verdicts, certs


def cmd_spinor_square(args):
    try:
        eps = parse_spinor(args.spinor)
    except ValueError as exc:
        raise InputError("--spinor", str(exc)) from None
    if not any(eps):
        raise InputError("--spinor", "the spinor must be nonzero")
    l = _l(args)
    m = build_module(_signs(args), l)
    alpha = m.square(eps, args.mu)
    verdict = check_square_conditions(m.space, l, alpha)
    verdicts = {"sum_formula_agrees": alpha == m.square_sum_formula(eps, args.mu),
                "passes_classifier": verdict.is_square}
    certs = {"square": alpha, "pairing": m.B(eps, eps), "classification": verdict.to_json()}
    return verdicts, certs


def cmd_master_check(args):
    Q = _space(args)
    l = _l(args)
    a_v = _multivector("--a", args.a)
    phi = _multivector("--phi", args.phi) if args.phi else parse_multivector(load_fixture()["phi"])
    try:
        f = Fraction(args.f)
    except (ValueError, ZeroDivisionError):
        raise InputError("--f", f"not a rational: {args.f!r}") from None
    try:
        rhs = master_rhs(Q, l, a_v, phi + f)
        scalar, three = expanded_rhs(Q, l, a_v, f, phi)
    except DegreeError as exc:
        raise InputError("--a", str(exc)) from None
    verdicts = {"master_equals_expanded": rhs.scalar_part() == scalar and rhs.grade(3) == three
                and not rhs.grade(1) and not rhs.grade(2)}
    certs = {"scalar_rate": scalar, "three_form_rate": three}
    try:
        S = check_g2star(Q, l, phi)
    except IrrationalScaleError:
        S = None
    if S is not None and f == S.c:
        red = reduced_rhs(S, a_v, f)
        verdicts["reduced_equals_expanded"] = red["identity_holds"]
        certs.update(abar0=red["abar0"], abar1=red["abar1"], kappa27=red["obstruction"],
                     decomposition=decompose_a(S, a_v).to_json())
    return verdicts, certs


def cmd_metric_christoffel(args):
    g = _ansatz(args)
    rep = check_displayed_formulas(g)
    verdicts = {k: rep[k] for k in ("z_column", "y_columns", "full_tensor")}
    certs = {"full_tensor_as_printed": rep["full_tensor_as_printed"]}
    if args.components:
        gam = g.christoffel()
        certs["christoffel"] = {f"{k}{i}{j}": str(gam[k][i][j]) for k in range(7)
                                for i in range(7) for j in range(i, 7)
                                if not gam[k][i][j].is_zero()}
    return verdicts, certs


def cmd_metric_contorsion(args):
    g = _ansatz(args)
    A = contorsion_minimal(g)
    T = torsion(A)
    T2 = connection_torsion(g, A)
    verdicts = {"involutive": involutivity_check(g, A),
                "vanishing_components": vanishing_components(A),
                "antisymmetric": A.is_antisymmetric(),
                "torsion_consistent": T.keys() == T2.keys()
                and all((T[k] - T2[k]).is_zero() for k in T)}
    comps = {f"{u}{v}{w}": str(val) for (u, v, w), val in sorted(A.items()) if v < w}
    return verdicts, {"contorsion": comps, "torsion_components": len(T)}


def cmd_metric_scalar(args):
    g = _ansatz(args)
    s = scalar_curvature(g)
    cond = scalar_flat_condition(g)
    verdicts = {}
    lc = all(not (set(var_names(p)) - {"x1", "x2", "x3"}) for p in list(g.E) + [g.G])
    if lc:
        verdicts["scalar_equals_condition"] = (s - cond).is_zero()
    worst = 0.0
    for p in sample_points():
        try:
            exact = s.eval(p)
        except (EvaluationError, ZeroDivisionError):
            continue
        approx = numeric_scalar_curvature(g, [float(x) for x in p])
        worst = max(worst, abs(float(exact) - approx) / max(1.0, abs(float(exact))))
    verdicts["numeric_oracle_agrees"] = worst < 1e-6
    certs = {"scalar_curvature": str(s), "scalar_flat_condition": str(cond),
             "scalar_flat": s.is_zero(), "numeric_relative_error (float)": worst}
    return verdicts, certs


def cmd_metric_lc_check(args):
    g = _ansatz(args)
    try:
        rep = lc_parallel_report(g, sample_points(), _l(args))
    except PreconditionError as exc:
        raise InputError("--ansatz", str(exc)) from None
    return {"lc_parallel": rep["passed"]}, rep


def cmd_paper_verify_all(args):
    results = verify_all(args.only)
    verdicts = {f"criterion_{n}": r["passed"] for n, r in results.items()}
    return verdicts, {f"criterion_{n}": r for n, r in results.items()}


# ---------------------------------------------------------------------------
# argument parsing


def _add_metric(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--metric", metavar="FILE", help="JSON file with a 7x7 metric")
    g.add_argument("--signature", metavar="STR", help="diagonal signs, e.g. ++++---")


def _add_l(p):
    p.add_argument("--l", type=int, choices=(1, -1), help="volume action sign (default: fixture)")


def build_parser():
    parser = argparse.ArgumentParser(prog="spinorforms", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name, func, help_):
        p = group.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    alg = groups.add_parser("algebra").add_subparsers(dest="action", required=True)
    p = command(alg, "selftest", cmd_algebra_selftest, "associativity and volume identities")
    _add_metric(p)

    sq = groups.add_parser("square").add_subparsers(dest="action", required=True)
    p = command(sq, "check", cmd_square_check, "decide whether alpha is a spinor square")
    _add_metric(p)
    _add_l(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta")

    g2 = groups.add_parser("g2").add_subparsers(dest="action", required=True)
    p = command(g2, "verify", cmd_g2_verify, "check the intrinsic G2* equations")
    _add_metric(p)
    _add_l(p)
    p.add_argument("--phi")
    p.add_argument("--no-stabilizer", action="store_true")
    p = command(g2, "decompose", cmd_g2_decompose, "type decomposition of forms")
    _add_metric(p)
    _add_l(p)
    p.add_argument("--phi")
    p.add_argument("--alpha")
    p = command(g2, "lemma", cmd_g2_lemma, "the four contraction identities")
    _add_metric(p)
    _add_l(p)
    p.add_argument("--phi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)

    st = groups.add_parser("stab").add_subparsers(dest="action", required=True)
    p = command(st, "compute", cmd_stab_compute, "infinitesimal stabilizer of a form")
    _add_metric(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--expect-dim", type=int)

    spn = groups.add_parser("spinor").add_subparsers(dest="action", required=True)
    p = command(spn, "square", cmd_spinor_square, "square of a spinor")
    p.add_argument("--signature", metavar="STR")
    _add_l(p)
    p.add_argument("--spinor", required=True, help="8 comma-separated rationals")
    p.add_argument("--mu", type=int, choices=(1, -1), default=1)

    ms = groups.add_parser("master").add_subparsers(dest="action", required=True)
    p = command(ms, "check", cmd_master_check, "pointwise master system")
    _add_metric(p)
    _add_l(p)
    p.add_argument("--a", required=True, help="the multivector a_v")
    p.add_argument("--phi")
    p.add_argument("--f", default="1")

    mt = groups.add_parser("metric").add_subparsers(dest="action", required=True)
    for name, func, help_ in (("christoffel", cmd_metric_christoffel, "displayed nabla dx formulas"),
                              ("contorsion", cmd_metric_contorsion, "minimal contorsion"),
                              ("scalar", cmd_metric_scalar, "scalar curvature"),
                              ("lc-check", cmd_metric_lc_check, "Levi-Civita parallel triple")):
        p = command(mt, name, func, help_)
        p.add_argument("--ansatz", required=True, metavar="FILE")
        if name == "christoffel":
            p.add_argument("--components", action="store_true")
        if name == "lc-check":
            _add_l(p)

    pp = groups.add_parser("paper").add_subparsers(dest="action", required=True)
    p = command(pp, "verify-all", cmd_paper_verify_all, "run every acceptance criterion")
    p.add_argument("--only", type=int, nargs="+", metavar="N")
    return parser


def _print_text(report):
    print(report["command"])
    for k, v in sorted(report["verdicts"].items()):
        print(f"  {'PASS' if v else 'FAIL'}  {k}")
    for k, v in sorted(report["certificates"].items()):
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        print(f"  {k}: {v}")
    print(f"  seconds: {report['timing']['seconds']}")


def run(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        verdicts, certs = args.func(args)
    except InputError as exc:
        print(exc.render(), file=sys.stderr)
        return 2
    report = {"command": " ".join(argv), "verdicts": verdicts,
              "certificates": _jsonable(certs),
              "timing": {"seconds": round(time.perf_counter() - start, 3)}}
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _print_text(report)
    return 0 if all(verdicts.values()) else 1


def main():
    sys.exit(run())
