"""Command-line interface: ``bethenorm {solve,verify,count,schubert}``.

Reports are JSON (``"schema": 1``).  Complex numbers are ``[re, im]``
pairs, rationals ``"p/q"`` strings, quadratic irrationals objects with the
exact form and its complex value.
"""
from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
import sympy

from . import __version__
from .bethe import verify_bethe
from .exact import QuadraticNumber, cube_root_of_unity, rational_inverse
from .lie import RootSystemA, Weight, alpha_of, is_dominant_integral, parse_weight
from .master import CriticalPoint, MasterProblem
from .multiplicity import decompose_fundamental, sing_dim, weyl_dimension
from .schubert import PolynomialPlane, plucker_report, weights_to_ramification
from .solver import NewtonError, PathError, SolverError, SolverOptions, dedupe_orbits, newton_refine, solve_all

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 2, 3, 4
SCHEMA = 1


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _num(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return str(x.a)
        c = complex(x)
        return {"exact": str(x), "value": [c.real, c.imag]}
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, Weight):
        return obj.label()
    return _num(obj)


def _emit(report: dict, out) -> None:
    out.write(json.dumps(_jsonable(report), indent=2, sort_keys=False))
    out.write("\n")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _algebra(text: str) -> RootSystemA:
    m = re.fullmatch(r"sl(\d+)", text.strip().lower())
    if not m or int(m.group(1)) < 2:
        raise UsageError(f"--algebra must look like sl2, sl3, ...; got {text!r}")
    return RootSystemA(int(m.group(1)) - 1)


def _weights(sys, text: str) -> list:
    try:
        return [parse_weight(sys, w) for w in text.split(",") if w.strip()]
    except (ValueError, IndexError) as exc:
        raise UsageError(f"cannot parse weights {text!r}: {exc}") from exc


def _ints(text: str, r: int) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc
    if len(vals) != r:
        raise UsageError(f"expected {r} entries in {text!r}")
    return vals


def _point(tok: str):
    tok = tok.strip()
    if re.fullmatch(r"[+-]?\d+(/\d+)?", tok):
        return Fraction(tok)
    try:
        return complex(tok.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse point {tok!r}") from exc


def _points(args, n: int):
    if args.z_exact and args.z:
        raise UsageError("--z and --z-exact are exclusive")
    if args.z_exact:
        if args.z_exact != "cbrt-of-unity":
            raise UsageError(f"unknown --z-exact preset {args.z_exact!r}")
        if n != 3:
            raise UsageError("cbrt-of-unity needs exactly three points")
        eta = cube_root_of_unity()
        return (Fraction(1), eta, eta * eta)
    if args.z:
        z = tuple(_point(t) for t in args.z.split(",") if t.strip())
        if len(z) != n:
            raise UsageError(f"{n} weights but {len(z)} points")
        return z
    return None


def _options(args) -> SolverOptions:
    try:
        return SolverOptions(tol=args.tol, eps0=args.eps0, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _total(sys_, weights) -> Weight:
    total = Weight.zero(sys_.rank)
    for w in weights:
        total = total + w
    return total


def _problem_header(sys, weights, l, z, opts) -> dict:
    return {
        "schema": SCHEMA,
        "algebra": f"sl{sys.rank + 1}",
        "weights": [w.label() for w in weights],
        "l": list(l),
        "z_input": None if z is None else list(z),
        "tolerances": {
            "newton_residual": opts.tol,
            "orbit_merge": opts.merge_tol,
            "eps0": opts.eps0,
            "eps_steps": opts.eps_steps,
            "nondegeneracy": opts.det_threshold,
            "norm_hessian_ratio": 1e-8,
            "singularity": 1e-10,
            "eigen_residual": 1e-9,
        },
        "seed": opts.seed,
    }


# ---------------------------------------------------------------------------
# critical points at exact (possibly non-generic) points
# ---------------------------------------------------------------------------

def _to_sympy(x):
    if isinstance(x, QuadraticNumber):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.d)
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(e, radicand):
    e = sympy.nsimplify(sympy.expand(e))
    if radicand is None:
        q = sympy.Rational(e)
        return Fraction(int(q.p), int(q.q))
    s = sympy.sqrt(radicand)
    P = sympy.Poly(e, s)
    cs = P.all_coeffs()
    b = cs[-2] if len(cs) > 1 else 0
    a = cs[-1]
    a, b = sympy.Rational(a), sympy.Rational(b)
    return QuadraticNumber(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)), radicand)


def exact_single_variable_points(p: MasterProblem) -> list:
    """Critical points of a one-variable master function with exact ``z``:
    roots of the numerator of the Bethe equation, exact where they lie in the
    field generated by ``z``, otherwise refined numerically."""
    t = sympy.Symbol("t")
    radicands = {x.d for x in p.z if isinstance(x, QuadraticNumber) and x.b != 0}
    if len(radicands) > 1:
        raise UsageError("points from different quadratic fields")
    rad = radicands.pop() if radicands else None
    z = [_to_sympy(x) for x in p.z]
    B = [_to_sympy(b) for b in p.B[0]]
    num = sympy.expand(-sum(B[s] * sympy.prod([t - z[u] for u in range(p.n) if u != s]) for s in range(p.n)))
    ext = [sympy.sqrt(rad)] if rad is not None else []
    pts = []
    for fac, _ in sympy.factor_list(num, t, extension=ext or None)[1]:
        P = sympy.Poly(fac, t)
        if P.degree() == 1:
            c1, c0 = P.all_coeffs()
            root = _from_sympy(-c0 / c1, rad)
            if all(root != zz for zz in p.z):
                pts.append(CriticalPoint.from_point(p, (root,)))
        elif P.degree() > 1:
            for r0 in np.roots([complex(c) for c in P.all_coeffs()]):
                try:
                    pts.append(newton_refine(p, (complex(r0),)))
                except NewtonError:
                    pass
    return dedupe_orbits(pts, 1e-8)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _orbit_json(cp: CriticalPoint) -> dict:
    return {
        "t": list(cp.canonical),
        "residual_norm": cp.residual_norm,
        "hessian_det": cp.hessian_det,
        "nondegenerate": cp.nondegenerate,
    }


def _solve(args):
    sys_ = _algebra(args.algebra)
    weights = _weights(sys_, args.weights)
    l = _ints(args.l, sys_.rank)
    opts = _options(args)
    z = _points(args, len(weights))
    header = _problem_header(sys_, weights, l, z, opts)
    p_target = _total(sys_, weights) - alpha_of(sys_, l)
    if not is_dominant_integral(sys_, p_target):
        raise UsageError(f"Lambda - alpha(l) = {p_target.label()} is not dominant integral")
    expected = sing_dim(sys_, weights, p_target)
    if args.z_exact and sum(l) == 1:
        cps = exact_single_variable_points(MasterProblem(sys_, weights, l, z))
        z_used, resamples = z, 0
    elif args.z_exact:
        raise UsageError("--z-exact supports one-variable problems only")
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            cps = solve_all(sys_, weights, l, z, opts)
        z_used, resamples = cps.z, cps.resamples
        header["warnings"] = [str(w.message) for w in caught]
    header.update({
        "z_used": list(z_used),
        "resamples": resamples,
        "expected_multiplicity": expected,
        "orbit_count": len(cps),
        "count_matches": len(cps) == expected,
    })
    return header, list(cps), opts


def cmd_solve(args, out) -> int:
    report, cps, _ = _solve(args)
    report["command"] = "solve"
    report["orbits"] = [_orbit_json(cp) for cp in cps]
    _emit(report, out)
    return EXIT_OK


def _verify_one(cp: CriticalPoint, rtol: float) -> dict:
    rep = verify_bethe(cp.problem, cp, rtol=rtol)
    ratio = rep.ratio
    return {
        "t": list(cp.canonical),
        "residual_norm": cp.residual_norm,
        "omega_is_zero": rep.is_zero,
        "is_singular": rep.is_singular,
        "singular_residual": rep.singular_residual,
        "eigenvalues": rep.eigenvalues,
        "eigen_residuals": rep.eigen_residuals,
        "eigenvalue_sum": rep.eigenvalue_sum,
        "shapovalov_norm": rep.norm,
        "hessian_det": rep.hessian_det,
        "ratio_minus_one": None if ratio is None else abs(ratio - 1),
        "norm_matches_hessian": rep.norm_matches_hessian,
        "degenerate": rep.degenerate,
        "exact": rep.exact,
    }


def cmd_verify(args, out) -> int:
    report, cps, opts = _solve(args)
    report["command"] = "verify"
    rtol = 1e-8
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            orbits = list(pool.map(lambda cp: _verify_one(cp, rtol), cps))
    else:
        orbits = [_verify_one(cp, rtol) for cp in cps]
    report["orbits"] = orbits
    failed = [o for o in orbits if not o["norm_matches_hessian"] and not o["omega_is_zero"]]
    report["all_passed"] = not failed
    _emit(report, out)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_count(args, out) -> int:
    sys_ = _algebra(args.algebra)
    weights = _weights(sys_, args.weights)
    total = _total(sys_, weights)
    report = {"schema": SCHEMA, "command": "count", "algebra": args.algebra, "weights": [w.label() for w in weights]}
    if args.mu:
        mu = parse_weight(sys_, args.mu)
        report["mu"] = mu.label()
        report["multiplicity"] = sing_dim(sys_, weights, mu)
    else:
        # every dominant weight below the total
        rows = []
        inv = rational_inverse(sys_.cartan)
        top = [sum(inv[i][j] * total[j] for j in range(sys_.rank)) for i in range(sys_.rank)]
        bound = [int(x) for x in top]
        for l in itertools.product(*(range(b + 1) for b in bound)):
            mu = total - alpha_of(sys_, l)
            if is_dominant_integral(sys_, mu):
                m = sing_dim(sys_, weights, mu)
                if m:
                    rows.append({"mu": mu.label(), "l": list(l), "multiplicity": m, "dim": weyl_dimension(sys_, mu)})
        report["decomposition"] = rows
        report["dimension_check"] = sum(r["multiplicity"] * r["dim"] for r in rows) == int(
            np.prod([weyl_dimension(sys_, w) for w in weights]))
    if len(weights) == 2:
        w2 = weights[1]
        nz = [i for i, c in enumerate(w2) if c != 0]
        if len(nz) == 1 and w2[nz[0]] == 1:
            rule = decompose_fundamental(sys_, weights[0], nz[0] + 1)
            report["fundamental_rule"] = [mu.label() for mu in rule]
    _emit(report, out)
    return EXIT_OK


def cmd_schubert(args, out) -> int:
    report = {"schema": SCHEMA, "command": "schubert"}
    if args.plane:
        with open(args.plane) as fh:
            try:
                plane = PolynomialPlane.from_text(fh.read(), args.d)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"bad plane file: {exc}") from exc
        rep = plucker_report(plane)
        report.update({"mode": "plane", **rep})
    elif args.from_weights:
        if not (args.algebra and args.weights and args.l and args.d is not None):
            raise UsageError("--from-weights needs --algebra, --weights, --l and --d")
        sys_ = _algebra(args.algebra)
        weights = _weights(sys_, args.weights)
        l = _ints(args.l, sys_.rank)
        lam_inf = _total(sys_, weights) - alpha_of(sys_, l)
        z = [f"z{s + 1}" for s in range(len(weights))]
        try:
            data = weights_to_ramification(sys_, weights, z, lam_inf, args.d)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        r = sys_.rank
        report.update({
            "mode": "weights",
            "lambda_inf": lam_inf.label(),
            "d": args.d,
            "table": [{"point": p, "a": list(a)} for p, a in data.points],
            "total": data.total(),
            "dim_grassmannian": (r + 1) * (args.d - r),
            "holds": data.total() == (r + 1) * (args.d - r),
        })
    else:
        raise UsageError("schubert needs --plane FILE or --from-weights")
    _emit(report, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bethenorm", description="Bethe vectors, master-function critical points and their norms.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def problem_args(p):
        p.add_argument("--algebra", required=True, help="sl2, sl3, ...")
        p.add_argument("--weights", required=True, help="comma separated, e.g. w1,w1,w2")
        p.add_argument("--l", required=True, help="comma separated color counts l_1..l_r")
        p.add_argument("--z", help="comma separated points (p/q exact, or complex like 0.5+1j)")
        p.add_argument("--z-exact", dest="z_exact", help="symbolic point preset: cbrt-of-unity")
        p.add_argument("--seed", type=int, default=0, help="seed for sampling and resampling points")
        p.add_argument("--tol", type=float, default=1e-12, help="Newton residual tolerance")
        p.add_argument("--eps0", type=float, default=1e-3, help="starting epsilon of the rescaling homotopy")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers for per-orbit checks")
        p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("solve", help="all critical-point orbits")
    problem_args(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("verify", help="solve, then check Bethe vectors and norm = Hessian")
    problem_args(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("count", help="multiplicities in a tensor product")
    p.add_argument("--algebra", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--mu", help="target weight; omitted: full decomposition")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_count)
    p = sub.add_parser("schubert", help="ramification tables and the Plücker formula")
    p.add_argument("--plane", help="file with one polynomial per line, coefficients low to high")
    p.add_argument("--from-weights", dest="from_weights", action="store_true")
    p.add_argument("--algebra")
    p.add_argument("--weights")
    p.add_argument("--l")
    p.add_argument("--d", type=int)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_schubert)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, PathError, NewtonError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
