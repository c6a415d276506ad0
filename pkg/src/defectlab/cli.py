"""``defectlab`` command line.

Every subcommand writes one JSON report (stdout, or ``report.json`` under
``--out``).  Exit status: 0 all checks pass, 2 a check failed, 1 bad input,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import errors
from .exact_algebra import format_rational, parse_rational

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_USAGE = 0, 1, 2, 64
INPUT_ERRORS = (errors.InvalidInput, errors.CurveDegeneracy, errors.NotAnImmersion, errors.UndefinedDefect)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _clean(obj):
    """Deterministic JSON values: 15 significant digits for floats, fraction strings for rationals."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x or x in (float("inf"), float("-inf")):
            return str(x)
        return float(f"{x:.15g}")
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def _emit(args, report: dict, extra_files: dict | None = None) -> None:
    report = dict(report)
    report["seed"] = args.seed
    report["command"] = args.command
    text = json.dumps(_clean(report), sort_keys=True, indent=2) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text)
        for name, content in (extra_files or {}).items():
            (out / name).write_text(content)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise errors.InvalidInput(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise errors.InvalidInput(f"{path}: invalid JSON ({exc})") from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except errors.InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# ---------------------------------------------------------------- commands

def cmd_bounds(args) -> int:
    from .bounds import gauss_parameters, precondition_ratio, theorem_parameters, verify_lemma_new
    ps = theorem_parameters(args.n, args.k, args.d, args.eps, args.rho, corollary=args.corollary)
    rep = verify_lemma_new(ps, args.b)
    out = ps.as_dict()
    lem = rep.as_dict()
    out["lemma_new"] = {"a": lem["a"]["verdict"], "b": lem["b_bound"]["verdict"], "detail": lem}
    out["precondition_ratio"] = format_rational(precondition_ratio(ps))
    if args.gauss:
        out["gauss"] = gauss_parameters(args.n, args.k, args.d, args.eps, args.rho)
    _emit(args, out)
    return EXIT_OK if rep.passed else EXIT_CHECK


def _family(path, k=None):
    from .position import HypersurfaceFamily
    fam = HypersurfaceFamily.from_json(_load_json(path))
    if k is not None:
        fam = HypersurfaceFamily(fam.n, fam.members, k)
    return fam


def cmd_check_position(args) -> int:
    from .position import check_subgeneral, normalize_degrees, position_constants
    fam = _family(args.family)
    k = args.k if args.k is not None else fam.k
    if k is None:
        raise errors.InvalidInput("give --k or put 'k' in the family file")
    fam, d = normalize_degrees(fam)
    res = check_subgeneral(fam, k)
    out = res.as_dict()
    out["verdict"] = "holds" if res.holds else "violated"
    out["d"] = d
    if args.constants:
        out["constants"] = position_constants(fam, args.constants, args.seed).as_dict()
    _emit(args, out)
    return EXIT_OK if res.holds else EXIT_CHECK


def cmd_replace(args) -> int:
    from .position import normalize_degrees, replace_hypersurfaces, verify_replacement
    fam, _ = normalize_degrees(_family(args.family))
    if args.subset:
        subset = args.subset.split(",")
    else:
        k = args.k if args.k is not None else fam.k
        if k is None:
            raise errors.InvalidInput("give --subset, --k, or 'k' in the family file")
        subset = sorted(fam.labels)[:k + 1]
    res = replace_hypersurfaces(fam, subset, args.seed, args.budget)
    chk = verify_replacement(fam, res)
    out = res.to_json()
    out["verification"] = chk
    _emit(args, out)
    return EXIT_OK if chk["ok"] else EXIT_CHECK


def cmd_filtration(args) -> int:
    from .filtration import build_filtration, table_summary, verify_cz
    fam = _family(args.family)
    forms = fam.forms[:fam.n]
    table = build_filtration(forms, args.N)
    cz = verify_cz(table)
    out = table.to_json(include_basis=args.basis)
    out["summary"] = table_summary(table)
    out["cz"] = cz.as_dict()
    out["decompositions_ok"] = table.check_decompositions()
    _emit(args, out)
    return EXIT_OK if cz.passed and out["decompositions_ok"] else EXIT_CHECK


def cmd_wronskian(args) -> int:
    from .polyring import MPoly
    from .wronskian import SymbolicTuple, admissible_search, wronskian_eval
    raw = _load_json(args.tuple)
    m = raw.get("m")
    entries = []
    for e in raw.get("entries", []):
        e = dict(e)
        e.setdefault("m", m)
        entries.append(MPoly.from_json(e))
    F = SymbolicTuple(m, tuple(entries))
    A = admissible_search(F, args.seed)
    W = wronskian_eval(F, A, "symbolic")
    out = {"admissible": A.to_json(), "wronskian": W.to_json()}
    ok = not W.is_zero()
    if args.point:
        pt = [parse_rational(x) for x in args.point.split(",")]
        out["value"] = wronskian_eval(F, A, pt)
    if args.h:
        h = dict(_load_json(args.h))
        h.setdefault("m", m)
        hp = MPoly.from_json(h)
        same = wronskian_eval(F.scaled(hp), A, "symbolic") == hp ** len(F) * W
        out["scaling_law"] = same
        ok = ok and same
    _emit(args, out)
    return EXIT_OK if ok else EXIT_CHECK


def _grid(args):
    from .nevanlinna import RGrid
    return RGrid.parse(args.grid, r0=args.r0, nodes=args.nodes)


def _forms(path):
    from .polyring import HomPoly
    raw = _load_json(path)
    if isinstance(raw, dict) and "members" in raw:
        return [(m.get("label", f"Q{i + 1}"), HomPoly.from_json(m["poly"])) for i, m in enumerate(raw["members"])]
    return [("Q", HomPoly.from_json(raw))]


def cmd_nevanlinna(args) -> int:
    from .nevanlinna import MeromorphicCurve, fmt_report, veronese_check, multinomial_weights
    from .polyring import HomPoly, _monomials
    f = MeromorphicCurve.from_json(_load_json(args.curve))
    grid = _grid(args)
    reports, csvs = [], {}
    ok = True
    for lab, Q in _forms(args.hypersurface):
        rep = fmt_report(f, Q, grid, l=args.trunc, defect=not f.is_constant())
        d = rep.as_dict()
        d["label"] = lab
        d["residual_ok"] = rep.variation <= args.tol
        ok = ok and d["residual_ok"] and all(rep.invariants.values()) and rep.sandwich_ok is not False
        reports.append(d)
        csvs[f"profile_{lab}.csv"] = rep.profile.to_csv()
    out = {"curve": f.to_json(), "grid": {"r0": grid.r0, "radii": list(grid.radii), "nodes": grid.nodes},
           "reports": reports}
    if args.veronese:
        forms = [HomPoly.monomial(a) for a in _monomials(f.n, args.veronese)]
        vr = veronese_check(f, forms, grid, weights=multinomial_weights(f.n, args.veronese))
        out["veronese"] = vr.as_dict()
        ok = ok and vr.passed
    if args.csv:
        Path(args.csv).write_text("".join(csvs.values()))
    _emit(args, out, csvs if args.out else None)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_smt(args) -> int:
    from .nevanlinna import MeromorphicCurve, divisor_truncation_check, smt_margin
    from .position import normalize_degrees
    f = MeromorphicCurve.from_json(_load_json(args.curve))
    fam, _ = normalize_degrees(_family(args.family, args.k))
    rep = smt_margin(f, fam, args.eps, args.N, _grid(args), samples=args.samples, radius=args.radius,
                     seed=args.seed)
    out = rep.as_dict()
    ok = out["pointwise"]["relative_change"] < 0.01
    if args.claim:
        dc = divisor_truncation_check(f, fam, args.N, seed=args.seed, b=rep.b)
        out["divisor_check"] = dc.as_dict()
        ok = ok and dc.passed
    _emit(args, out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_gauss(args) -> int:
    from .gaussmap import PolyImmersion, gauss_defect_pipeline, gauss_map, pluecker_relation
    f = PolyImmersion.from_json(_load_json(args.immersion))
    G = gauss_map(f)
    out = {"gauss_map": G.to_json(), "generic_rank": f.generic_rank(args.seed)}
    ok = True
    if (f.m, f.n) == (2, 4):
        out["pluecker_relation_zero"] = pluecker_relation(G).is_zero()
        ok = out["pluecker_relation_zero"]
    if args.family:
        rep = gauss_defect_pipeline(f, _family(args.family, args.k), args.eps, args.rho, _grid(args))
        out["defects"] = rep.as_dict()
        ok = ok and rep.holds
    _emit(args, out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(args.seed, only)
    for r in results:
        sys.stderr.write(r.line() + "\n")
    passed = all(r.passed for r in results)
    _emit(args, {"verdict": "pass" if passed else "fail", "criteria": [r.as_dict() for r in results]})
    return EXIT_OK if passed else EXIT_CHECK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a value given before it
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for every random choice (default 0)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="directory for report.json and CSV profiles")

    grid = _Parser(add_help=False)
    grid.add_argument("--grid", default="geom:2,64,24", help="radii: geom:lo,hi,count | lin:lo,hi,count | list")
    grid.add_argument("--r0", type=float, default=1.0)
    grid.add_argument("--nodes", type=int, default=4096)

    p = _Parser(prog="defectlab", description="Defect-relation machinery checks")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    p.add_argument("--out", help="directory for report.json and CSV profiles")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("bounds", parents=[common], help="parameter formulas and the parameter lemma")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--eps", type=_rational, required=True)
    s.add_argument("--rho", type=_rational, default=Fraction(0))
    s.add_argument("--b", type=_rational, default=None, help="weight b (default: closed-form lower bound)")
    s.add_argument("--corollary", action="store_true")
    s.add_argument("--gauss", action="store_true", help="also print the Gauss-map variant")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("check-position", parents=[common], help="k-subgeneral position test")
    s.add_argument("family")
    s.add_argument("--k", type=int)
    s.add_argument("--constants", type=int, default=0, metavar="SAMPLES", help="also estimate alpha, beta")
    s.set_defaults(func=cmd_check_position)

    s = sub.add_parser("replace", parents=[common], help="replacement of k+1 members by n+1")
    s.add_argument("family")
    s.add_argument("--subset", help="comma-separated labels, in order")
    s.add_argument("--k", type=int)
    s.add_argument("--budget", type=int, default=64)
    s.set_defaults(func=cmd_replace)

    s = sub.add_parser("filtration", parents=[common], help="filtration by the first n members")
    s.add_argument("family")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--basis", action="store_true", help="include the adapted basis")
    s.set_defaults(func=cmd_filtration)

    s = sub.add_parser("wronskian", parents=[common], help="admissible set and generalized Wronskian")
    s.add_argument("tuple")
    s.add_argument("--point", help="comma-separated rational coordinates")
    s.add_argument("--h", help="polynomial JSON for the scaling-law check")
    s.set_defaults(func=cmd_wronskian)

    s = sub.add_parser("nevanlinna", parents=[common, grid], help="T, N, m, residual and defects")
    s.add_argument("curve")
    s.add_argument("hypersurface")
    s.add_argument("--trunc", type=int, default=1)
    s.add_argument("--tol", type=float, default=1e-5)
    s.add_argument("--csv", help="write the profile CSV here")
    s.add_argument("--veronese", type=int, default=0, metavar="D", help="also run the degree-D Veronese check")
    s.set_defaults(func=cmd_nevanlinna)

    s = sub.add_parser("smt", parents=[common, grid], help="second-main-theorem margins")
    s.add_argument("curve")
    s.add_argument("family")
    s.add_argument("--k", type=int)
    s.add_argument("--eps", type=_rational, default=Fraction(1))
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--radius", type=float, default=2.0)
    s.add_argument("--claim", action="store_true", help="also run the per-zero divisor inequality")
    s.set_defaults(func=cmd_smt)

    s = sub.add_parser("gauss", parents=[common, grid], help="Gauss map and its defects")
    s.add_argument("immersion")
    s.add_argument("--family")
    s.add_argument("--k", type=int)
    s.add_argument("--eps", type=_rational, default=Fraction(1))
    s.add_argument("--rho", type=_rational, default=Fraction(0))
    s.set_defaults(func=cmd_gauss)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance battery")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_INPUT
    except errors.DefectLabError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
