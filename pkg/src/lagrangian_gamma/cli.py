"""Command-line front end.

Exit codes are shared by all subcommands: 0 success, 1 verification or
coverage failure, 2 bad input or out-of-scope request.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import framework as fw
from .combinatorics import BRUTE_MAX_N, d_brute, d_closed, d_recursion, lemma_report
from .degree import (
    AngleSpec,
    all_eps,
    default_angles,
    degree,
    preimage_point,
)
from .errors import InvariantError, LagrangianError, ScopeError, VerificationError
from .io import dumps, matrix_from_json, matrix_to_json
from .models import (
    AntiSympInvolution,
    SymmetricUnitary,
    theta_involution,
    theta_unitary,
)
from .properties import run_properties
from .search import SearchConfig, multistart

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 42


def _emit(args, payload: dict, table: str) -> None:
    print(dumps(payload) if args.json else table)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _angles(args) -> AngleSpec:
    if args.n < 1:
        raise ScopeError("--n must be positive")
    if args.angles is None:
        return default_angles(args.n)
    try:
        thetas = tuple(float(x) for x in args.angles.split(","))
    except ValueError:
        raise InvariantError(f"malformed --angles: {args.angles!r}") from None
    if len(thetas) != args.n:
        raise InvariantError(f"--angles has {len(thetas)} values, expected {args.n}")
    return AngleSpec(thetas)


def _fmt_eps(eps) -> str:
    return "".join(str(b) for b in eps)


def cmd_degree(args) -> int:
    spec = _angles(args)
    report = degree(spec, strict=False)
    pos = sum(p.sign_numeric > 0 for p in report.points)
    neg = sum(p.sign_numeric < 0 for p in report.points)
    table = "\n".join([
        f"n = {report.n} (m = {report.m}), {len(report.points)} preimages of id",
        f"signs: {pos} positive, {neg} negative",
        f"degree (signed sum) = {report.degree_signed_sum}",
        f"closed form 2^(m+1) = {report.degree_closed_form}",
        f"all regular: {report.all_regular}, sign paths agree: {report.signs_agree}",
        f"max residual: {report.max_residual:.3e}",
    ])
    _emit(args, report.to_dict(), table)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_preimages(args) -> int:
    spec = _angles(args)
    b = np.diag(np.exp(1j * spec.as_array()))
    points = [preimage_point(spec, eps, b) for eps in all_eps(spec.n)]
    ok = all(p.residual < 1e-11 and p.sign_numeric == p.sign_analytic for p in points)
    payload = {
        "n": spec.n,
        "thetas": list(spec.thetas),
        "points": [
            {"eps": list(p.eps), "a": matrix_to_json(p.a_eps.a), "residual": p.residual,
             "sign_numeric": p.sign_numeric, "sign_analytic": p.sign_analytic,
             "log_abs_det": p.log_abs_det}
            for p in points
        ],
    }
    rows = []
    for p in points:
        phases = np.angle(np.diagonal(p.a_eps.a)) / np.pi
        rows.append([_fmt_eps(p.eps), " ".join(f"{x:+.4f}" for x in phases),
                     f"{p.residual:.2e}", f"{p.sign_numeric:+d}", f"{p.sign_analytic:+d}"])
    table = "diagonal phases in units of pi\n" + _table(
        ["eps", "phases", "residual", "sign_lu", "sign_rule"], rows)
    _emit(args, payload, table)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lemma(args) -> int:
    n, method = args.n, args.method
    if n < 1:
        raise ScopeError("--n must be positive")
    if method in ("brute", "all") and n > BRUTE_MAX_N:
        raise ScopeError(f"brute force budget exceeded: n={n} > {BRUTE_MAX_N}")
    note = None
    if n % 2 == 0:
        if method == "closed":
            raise ScopeError(f"closed form 2^(m+1) only holds for odd n, got n={n}")
        note = "non-theorem scope: n is even, closed form not applicable"

    if method == "all" and n % 2 == 1:
        report = lemma_report(n)
        payload = report.to_dict()
        values = {"brute": report.d_brute, "recursion": report.d_rec, "closed": report.d_closed}
    else:
        values = {}
        if method in ("brute", "all"):
            values["brute"] = d_brute(n)
        if method in ("recursion", "all"):
            values["recursion"] = d_recursion(n)
        if method == "closed":
            values["closed"] = d_closed(n)
        payload = {"n": n, **{f"d_{k}": v for k, v in values.items()}}
    agree = len(set(values.values())) == 1
    payload["agree"] = agree
    if note:
        payload["note"] = note
    table = _table(["method", "d_n"], [[k, v] for k, v in values.items()])
    table = f"n = {n}\n{table}\nagree: {agree}" + (f"\nnote: {note}" if note else "")
    _emit(args, payload, table)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_search(args) -> int:
    spec = _angles(args)
    config = SearchConfig(n=args.n, spec=spec, starts=args.starts, seed=args.seed,
                          max_iter=args.max_iter, residual_tol=args.residual_tol,
                          dedup_tol=args.dedup_tol)
    out = multistart(config)
    rows = []
    for s, eps in zip(out.solutions, out.matched):
        phases = np.angle(np.diagonal(s.a)) / np.pi
        rows.append([_fmt_eps(eps) if eps is not None else "stray",
                     " ".join(f"{x:+.4f}" for x in phases)])
    table = "\n".join([
        f"n = {args.n}, starts = {args.starts}, seed = {args.seed}",
        f"converged {out.converged}, failed {out.failed}",
        f"solutions {len(out.solutions)}, coverage {out.coverage:.3f}, strays {out.strays}",
    ])
    if rows:
        table += "\n" + _table(["eps", "diagonal phases / pi"], rows)
    _emit(args, out.to_dict(), table)
    return EXIT_OK if out.coverage == 1.0 and out.strays == 0 else EXIT_FAIL


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvariantError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvariantError(f"{path} is not valid JSON: {exc}") from None


def load_point(path: str, model: str | None = None, tol: float = 1e-10):
    """Read a stored point, validating it against the declared model."""
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise InvariantError(f"{path}: expected a JSON object")
    declared = obj.get("model")
    model = model or declared or "symmetric_unitary"
    if model == "unitary":
        model = "symmetric_unitary"
    if declared is not None and declared != model:
        raise InvariantError(f"{path}: file declares model {declared!r}, expected {model!r}")
    arr = matrix_from_json(obj)
    size = {"symmetric_unitary": 1, "involution": 2}.get(model, 1) * int(obj["n"])
    if arr.shape[0] != size:
        raise InvariantError(f"{path}: a {model} point with n={obj['n']} needs a {size}x{size} matrix")
    try:
        if model == "symmetric_unitary":
            return SymmetricUnitary(arr, tol=tol)
        if model == "involution":
            return AntiSympInvolution(arr, tol=tol)
    except InvariantError as exc:
        raise InvariantError(f"{path}: {exc}") from None
    raise InvariantError(f"unknown model {model!r}")


def point_to_json(p) -> dict:
    if isinstance(p, SymmetricUnitary):
        return {"model": "symmetric_unitary", **matrix_to_json(p.a)}
    return {"model": "involution", "n": p.n, "entries": matrix_to_json(p.r)["entries"]}


def cmd_verify(args) -> int:
    if args.n < 1 or args.trials < 1:
        raise ScopeError("--n and --trials must be positive")
    extra = load_point(args.matrix, "symmetric_unitary") if args.matrix else None
    if extra is not None and extra.n != args.n:
        raise InvariantError(f"stored matrix has n={extra.n}, expected {args.n}")
    rng = np.random.default_rng(args.seed)
    results = [r.to_dict() for r in run_properties(args.n, args.trials, rng, extra=extra)]
    ks = fw.component_spectrum(args.n, 100, rng)
    results.append({"name": "k_spectrum_distinct", "n": args.n, "max_deviation": len(set(ks)),
                    "tol": 2, "passed": len(set(ks)) >= 2})
    if args.n % 2 == 1 and args.n <= 9:
        rep = degree(default_angles(args.n), strict=False)
        results.append({"name": "degree_closed_form", "n": args.n,
                        "max_deviation": abs(rep.degree_signed_sum - rep.degree_closed_form),
                        "tol": 0, "passed": rep.ok})
    ok = all(r["passed"] for r in results)
    rows = [[r["name"], f"{r['max_deviation']:.3e}" if isinstance(r["max_deviation"], float)
             else r["max_deviation"], r["tol"], "PASS" if r["passed"] else "FAIL"] for r in results]
    table = _table(["property", "max deviation", "tol", "result"], rows)
    _emit(args, {"n": args.n, "trials": args.trials, "seed": args.seed,
                 "passed": ok, "properties": results}, table)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_product(args) -> int:
    model = {"unitary": "symmetric_unitary", "involution": "involution", None: None}[args.model]
    a = load_point(args.file_a, model, tol=args.tol)
    b = load_point(args.file_b, model, tol=args.tol)
    if type(a) is not type(b):
        raise InvariantError("both files must use the same model")
    if a.n != b.n:
        raise InvariantError(f"dimension mismatch: n={a.n} vs n={b.n}")
    prod = theta_unitary(a, b) if isinstance(a, SymmetricUnitary) else theta_involution(a, b)
    print(dumps(point_to_json(prod)))
    return EXIT_OK


def cmd_framework(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.demo == "grassmannian":
        ks = fw.component_spectrum(args.n, args.samples, rng)
        counts = {k: ks.count(k) for k in range(args.n + 1)}
        ok = len(set(ks)) >= 2 or args.samples < 2
        payload = {"demo": "grassmannian", "n": args.n, "samples": args.samples,
                   "counts": {str(k): c for k, c in counts.items()}, "distinct": len(set(ks))}
        table = f"components G(k,{args.n}) hit by {args.samples} samples\n" + _table(
            ["k", "count"], [[k, c] for k, c in counts.items()])
    elif args.demo == "su2":
        rows, pts = [], []
        for _ in range(args.samples):
            p = rng.standard_normal(3)
            p /= np.linalg.norm(p)
            g = fw.su2_fix_point(p)
            fw.FixSample(g, fw.Group.SU, fw.AntiIso.TRANSPOSE)
            pts.append(g)
            rows.append([" ".join(f"{x:+.4f}" for x in p), f"{abs(np.linalg.det(g) - 1):.1e}",
                         f"{np.linalg.norm(g - g.T):.1e}"])
        ok = True
        payload = {"demo": "su2", "samples": [matrix_to_json(g) for g in pts]}
        table = _table(["p", "|det - 1|", "|g - g^T|"], rows)
    else:
        dev_t = fw.fix_closure_check(
            [(fw.random_fix_sample(fw.Group.U, fw.AntiIso.TRANSPOSE, args.n, rng),
              fw.random_fix_sample(fw.Group.U, fw.AntiIso.TRANSPOSE, args.n, rng))
             for _ in range(args.samples)])
        dev_i = fw.fix_closure_check(
            [(fw.random_fix_sample(fw.Group.O, fw.AntiIso.INVERSE, args.n, rng),
              fw.random_fix_sample(fw.Group.O, fw.AntiIso.INVERSE, args.n, rng))
             for _ in range(args.samples)])
        ok = max(dev_t, dev_i) <= 1e-9
        payload = {"demo": "closure", "n": args.n, "transpose_in_U": dev_t, "inverse_in_O": dev_i,
                   "passed": ok}
        table = _table(["fixed set", "max deviation"],
                       [["Fix(transpose) in U(n)", f"{dev_t:.3e}"],
                        ["Fix(inverse) in O(n)", f"{dev_i:.3e}"]])
    _emit(args, payload, table)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagrangian-gamma",
        description="Degree of the product A conj(B) A on the Lagrangian Grassmannian.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, angles=True):
        p.add_argument("--n", type=int, required=True, help="complex dimension")
        if angles:
            p.add_argument("--angles", help="comma-separated basepoint angles in (0, 2pi)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")

    p = sub.add_parser("degree", help="signed count of preimages of id (n odd)")
    common(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("preimages", help="list all closed-form preimages with both signs")
    common(p)
    p.set_defaults(func=cmd_preimages)

    p = sub.add_parser("lemma", help="signed binary-sequence count by several routes")
    common(p, angles=False)
    p.add_argument("--method", choices=["brute", "recursion", "closed", "all"], default="all")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("search", help="multistart numerical root search")
    common(p)
    p.add_argument("--starts", type=int, default=500)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--residual-tol", type=float, default=1e-10)
    p.add_argument("--dedup-tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="randomized property suite")
    common(p, angles=False)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--matrix", help="stored symmetric unitary (matrix JSON) to include as a sample")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", help="product of two stored points")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--model", choices=["unitary", "involution"])
    p.add_argument("--tol", type=float, default=1e-10, help="validation tolerance for the inputs")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("framework", help="general product on fixed sets of anti-isomorphisms")
    p.add_argument("--demo", choices=["grassmannian", "su2", "closure"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_framework)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ScopeError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LagrangianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
