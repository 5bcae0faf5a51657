"""Command-line front end and the verification harness.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error,
3 internal error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
import warnings
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import gamma_series as gs
from .curve import CurveMatrix, Exponent, kernel_vectors
from .errors import CurveError, GKZError, NearSingular
from .laurent import LaurentPoly, apply_euler, box_annihilates
from .numeric import (
    Point,
    Tolerances,
    continue_logs,
    derivative_identity_check,
    eval_chi,
    eval_laurent,
    eval_psi_rho,
    family_rank,
    find_roots,
    power_sum_numeric,
    residue_total_numeric,
    sample_point,
)
from .semigroup import Tag, classification_json, classify, e_set, holonomic_rank, is_cohen_macaulay
from .solutions import (
    basis_descriptor,
    newton_power_sum,
    phi,
    power_sum,
    psi_0,
    psi_d,
    psi_root_sum,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- input readers -------------------------------------------------------------


def read_curve(text: str) -> CurveMatrix:
    try:
        return CurveMatrix.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"bad --curve {text!r}: expected {{\"k\": [...], \"d\": n}}") from exc


def read_alpha(text: str) -> Exponent:
    try:
        return Exponent.parse(text)
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise UsageError(f"bad --alpha {text!r}: expected [a1, a2]") from exc


def read_point(curve: CurveMatrix, text: str) -> Point:
    try:
        return Point.parse(curve, json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise UsageError(f"bad --point {text!r}: expected a list of numbers or [re, im] pairs") from exc


def complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- query verbs -----------------------------------------------------------------


def _poly(fn: Callable[[CurveMatrix, Exponent], LaurentPoly]):
    def run(args) -> dict:
        return fn(read_curve(args.curve), read_alpha(args.alpha)).to_json()

    return run


def cmd_classify(args) -> dict:
    return classification_json(read_curve(args.curve), read_alpha(args.alpha))


def cmd_eset(args) -> dict:
    return {"E": [list(a) for a in e_set(read_curve(args.curve))]}


def cmd_cm(args) -> dict:
    curve = read_curve(args.curve)
    return {"cohen_macaulay": is_cohen_macaulay(curve), "E": [list(a) for a in e_set(curve)]}


def cmd_rank(args) -> dict:
    curve, alpha = read_curve(args.curve), read_alpha(args.alpha)
    return {"alpha": list(alpha), "rank": holonomic_rank(curve, alpha)}


def cmd_powersum(args) -> dict:
    return power_sum(read_curve(args.curve), args.s).to_json()


def total_residue_poly(curve: CurveMatrix, a: int, b: int) -> LaurentPoly:
    """Sum over the roots of Res t^b / f^a dt/t, as a Laurent polynomial."""
    return psi_root_sum(curve, (-a, -b)).scale(Fraction((-1) ** a, math.factorial(a - 1)))


def cmd_residue(args) -> dict:
    curve = read_curve(args.curve)
    if args.a < 1:
        raise UsageError("--a must be >= 1")
    poly = total_residue_poly(curve, args.a, args.b)
    out: dict = {"a": args.a, "b": args.b, "symbolic": poly.to_json()}
    if args.point:
        rs = find_roots(read_point(curve, args.point), TOL)
        num = residue_total_numeric(rs, args.a, args.b, TOL)
        sym = eval_laurent(poly, rs.point)
        out.update(numeric=complex_json(num), symbolic_value=complex_json(sym), difference=abs(num - sym))
    return out


def cmd_basis(args) -> dict:
    return basis_descriptor(read_curve(args.curve), read_alpha(args.alpha)).to_json()


def cmd_gamma_roots(args) -> dict:
    curve = read_curve(args.curve)
    point = read_point(curve, args.point)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        series = gs.all_root_series(point, args.trunc)
    rs = find_roots(point, TOL)
    pairs = []
    for i, j, dist in gs.match_roots(series, rs.roots):
        pairs.append(
            {
                "series": complex_json(series[i]),
                "iterated": complex_json(rs.roots[j]),
                "difference": dist,
                "series_residual": abs(complex(sum(x * series[i] ** k for k, x in zip(curve.support, point.coords)))),
            }
        )
    return {
        "trunc": args.trunc,
        "outside_region": any(issubclass(w.category, gs.OutsideRegion) for w in caught),
        "pairs": pairs,
        "iterated_residual": rs.residual,
    }


# -- verification harness ---------------------------------------------------------


class Checks:
    def __init__(self, tol: Tolerances):
        self.tol = tol
        self.rows: dict[str, dict] = {}

    def add(self, name: str, residual: float, tolerance: Optional[float] = None, exact: bool = False) -> None:
        tolerance = 0.0 if exact else (self.tol.eps_check if tolerance is None else tolerance)
        residual = float(residual)
        ok = residual == 0 if exact else residual < tolerance
        self.rows[name] = {"name": name, "residual": residual, "tolerance": tolerance, "pass": bool(ok)}

    def report(self) -> list[dict]:
        return [self.rows[k] for k in sorted(self.rows)]


def scaled_error(value: complex, reference: complex) -> float:
    """|value - reference| measured absolutely up to size 1 and relatively beyond."""
    return abs(value - reference) / max(1.0, abs(reference))


def _box_exponents(curve: CurveMatrix, r: int) -> list[Exponent]:
    return [Exponent(a1, a2) for a1 in range(-r, r + 1) for a2 in range(-curve.d * r, curve.d * r + 1)]


def _representatives(curve: CurveMatrix, r: int = 2) -> dict[Tag, Exponent]:
    reps: dict[Tag, Exponent] = {}
    for a in _box_exponents(curve, r):
        reps.setdefault(classify(curve, a).tag, a)
    return reps


def _rational_solutions(curve: CurveMatrix, a: Exponent) -> list[tuple[str, LaurentPoly]]:
    tag = classify(curve, a).tag
    if tag is Tag.InI:
        return [("phi", phi(curve, a))]
    out = []
    if tag in (Tag.E0Only, Tag.EBoth):
        out.append(("psi0", psi_0(curve, a)))
    if tag in (Tag.EdOnly, Tag.EBoth):
        out.append(("psid", psi_d(curve, a)))
    return out


def run_verify(curve: CurveMatrix, seed: int, suite: str, tol: Tolerances) -> dict:
    rng = np.random.default_rng(seed)
    full = suite == "full"
    checks = Checks(tol)
    d = curve.d
    n_points = 4 if full else 2
    points = [sample_point(curve, rng, tol) for _ in range(n_points)]

    # exact rational identities
    checks.add(
        "exact.power_sum_newton",
        sum(power_sum(curve, s) != newton_power_sum(curve, s) for s in range(1, (10 if full else 5) + 1)),
        exact=True,
    )
    vectors = kernel_vectors(curve, 2 * d if full else d)
    box = _box_exponents(curve, 2 if full else 1)
    sample = sorted(set(_representatives(curve).values()) | {box[i] for i in rng.choice(len(box), size=8, replace=False)})
    bad = 0
    for a in sample:
        for _, p in _rational_solutions(curve, a):
            r1, r2 = apply_euler(p, a)
            bad += bool(r1) or bool(r2) or not box_annihilates(p, vectors)
    checks.add("exact.annihilation", bad, exact=True)

    # numerical identities
    res = 0.0
    for rs in points:
        for s in [s for s in range(-5, 6) if s]:
            res = max(res, scaled_error(power_sum_numeric(rs, s), eval_laurent(power_sum(curve, s), rs.point)))
    checks.add("numeric.power_sum", res)

    ej = tot = 0.0
    for rs in points:
        for b in range(1, d):
            ej = max(ej, abs(residue_total_numeric(rs, 1, b, tol)))
        for b in range(d, d + 3):
            tot = max(tot, scaled_error(residue_total_numeric(rs, 1, b, tol), eval_laurent(-psi_d(curve, (-1, -b)), rs.point)))
    checks.add("numeric.euler_jacobi", ej)
    checks.add("numeric.total_residue", tot)

    alphas = [a for a in _box_exponents(curve, 1) if classify(curve, a).tag is not Tag.InI]
    picks = [alphas[i] for i in rng.choice(len(alphas), size=min(len(alphas), 6), replace=False)]
    rsum = 0.0
    for rs in points:
        for a in picks:
            total = sum((eval_psi_rho(curve, a, rs, j, tol) for j in range(d)), 0j)
            rsum = max(rsum, scaled_error(total, eval_laurent(psi_root_sum(curve, a), rs.point)))
    checks.add("numeric.psi_root_sum", rsum)

    dres = 0.0
    for rs in points:
        for _ in range(6):
            a = Exponent(int(rng.integers(1, 3)), int(rng.integers(-d, 2 * d + 1)))
            j, l = int(rng.integers(0, d)), int(rng.choice(curve.support))
            dres = max(dres, derivative_identity_check(curve, a, rs, j, l, tol))
    checks.add("numeric.derivative_identity", dres)

    tres = 0.0
    j_alphas = [a for a in _box_exponents(curve, 2) if a.a1 < 0 and classify(curve, a).tag is Tag.J][:3]
    for a in j_alphas:
        for rs in points[:2]:
            for th in np.linspace(-3.0, 3.0, 5):
                tres = max(tres, chi_torus_residual(curve, a, rs, complex(cmath.exp(1j * th)), 1j * th, tol))
    checks.add("numeric.chi_torus", tres, tolerance=10 * tol.eps_check)

    if full:
        mism = 0
        for tag, a in sorted(_representatives(curve).items()):
            mism += family_rank(basis_descriptor(curve, a), rng, tol) != holonomic_rank(curve, a)
        checks.add("numeric.rank", mism, exact=True)
        gres = 0.0
        for _ in range(2):
            c = [cmath.exp(1j * rng.uniform(-3, 3))]
            c += [0.05 * cmath.exp(1j * rng.uniform(-3, 3)) for _ in curve.ks]
            c += [cmath.exp(1j * rng.uniform(-3, 3))]
            pt = Point(curve, tuple(c))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", gs.OutsideRegion)
                ser = gs.all_root_series(pt)
            gres = max(gres, max(m[2] for m in gs.match_roots(ser, find_roots(pt, tol).roots)))
        checks.add("numeric.gamma_roots", gres, tolerance=1e-6)

    rows = checks.report()
    return {
        "command": "verify",
        "inputs": {
            "curve": curve.to_json(),
            "seed": seed,
            "suite": suite,
            "tolerances": {"eps_root": tol.eps_root, "eps_check": tol.eps_check, "delta_sep": tol.delta_sep},
        },
        "results": rows,
        "failures": sum(not r["pass"] for r in rows),
    }


def chi_torus_residual(curve: CurveMatrix, alpha, roots, t: complex, log_t: complex, tol: Tolerances) -> float:
    """|chi(t*x) - t^a2 chi(x) + t^a2 log(t) sum_j psi_j(x)| with branches continued along t."""
    a = Exponent(*alpha)
    moved = find_roots(roots.point.torus(t), tol)
    moved = continue_logs(moved, [r / t for r in roots.roots], [L - log_t for L in roots.logs])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lhs = eval_chi(curve, a, moved, tol)
        base = eval_chi(curve, a, roots, tol)
    psi = sum((eval_psi_rho(curve, a, roots, j, tol) for j in range(curve.d)), 0j)
    ta = t ** a.a2
    return abs(lhs - ta * base + ta * log_t * psi)


def cmd_verify(args) -> dict:
    curve = read_curve(args.curve)
    try:
        return run_verify(curve, args.seed, args.suite, TOL)
    except NearSingular as exc:
        raise GKZError(f"sampling failed: {exc}") from exc


# -- output --------------------------------------------------------------------------


def render_text(verb: str, out: dict) -> str:
    if "terms" in out and "support" in out:
        return LaurentPoly.from_json(out).render()
    if verb == "rank":
        return str(out["rank"])
    if verb == "verify":
        lines = [
            f"{'PASS' if r['pass'] else 'FAIL'} {r['name']} residual={r['residual']:.3e} tol={r['tolerance']:.1e}"
            for r in out["results"]
        ]
        lines.append(f"failures: {out['failures']}")
        return "\n".join(lines)
    if verb == "residue":
        text = LaurentPoly.from_json(out["symbolic"]).render()
        if "difference" in out:
            text += f"\nnumeric difference: {out['difference']:.3e}"
        return text
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in out.items())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--curve", required=True, help='curve as JSON, e.g. \'{"k":[1,3],"d":4}\'')

    parser = argparse.ArgumentParser(prog="gkz", description="Solutions of hypergeometric systems for monomial curves.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, alpha: bool = False):
        p = sub.add_parser(name, parents=[common])
        if alpha:
            p.add_argument("--alpha", required=True, help="exponent as JSON, e.g. '[1,2]'")
        p.set_defaults(fn=fn)
        return p

    verb("classify", cmd_classify, alpha=True)
    verb("eset", cmd_eset)
    verb("cm", cmd_cm)
    verb("rank", cmd_rank, alpha=True)
    verb("phi", _poly(phi), alpha=True)
    verb("psi0", _poly(psi_0), alpha=True)
    verb("psid", _poly(psi_d), alpha=True)
    verb("basis", cmd_basis, alpha=True)
    verb("powersum", cmd_powersum).add_argument("--s", type=int, required=True)
    p = verb("residue", cmd_residue)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--point", help="coefficients in support order, numbers or [re, im] pairs")
    p = verb("gamma-roots", cmd_gamma_roots)
    p.add_argument("--point", required=True)
    p.add_argument("--trunc", type=int, default=gs.DEFAULT_TRUNCATION)
    p = verb("verify", cmd_verify)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", choices=["fast", "full"], default="fast")
    return parser


TOL = Tolerances()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    global TOL
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    TOL = Tolerances.from_env()
    try:
        out = args.fn(args)
    except (UsageError, CurveError, GKZError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(out, sort_keys=True), file=stdout)
    else:
        print(render_text(args.verb, out), file=stdout)
    if args.verb == "verify" and out["failures"]:
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
