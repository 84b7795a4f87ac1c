"""Command-line entry point: ``nilcomm <subcommand> ...``.

Exit codes: 0 on success or informational output, 1 when a verification
fails, 2 on usage errors and out-of-range parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .appendix import special_cases_report, verify_case_constants, verify_lemma_A1, verify_sos_identities
from .components import (
    OutOfRangeError, crossover_lists, dim_ccv_gl, dim_ccv_sl, dim_G_u_component,
    generic_component_dim, jacobian_component_report, max_component_count, nilpotent_report,
    regular_component_dim,
)
from .complexity import (
    ComplexityQuery, frobenius_kernel_complexity, chevalley_p_rank_sln, maxcomplex_verdict,
    nullcone_cross_check, p_adic_decompose, ratio_inequality_check,
)
from .counting import BudgetExceeded, budget_from_env, count_report
from .linalg import QQ, ExactMatrix, FieldSpec
from .nilpotent import (
    associated_cocharacter, graded_centralizer, square_zero_form, square_zero_weight0_nilpotent,
    square_zero_zprime_element, standard_nilpotent, zprime_counterexample_charp, zprime_membership,
)
from .partitions import Partition, centralizer_dim, orbit_dim

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _params(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--params expects key=value pairs, got {item!r}")
        out[key.strip()] = int(val)
    return out


def _matrix(text: str, field: FieldSpec) -> ExactMatrix:
    rows = [[Fraction(x) for x in row.split(",")] for row in text.split(";")]
    return ExactMatrix.from_rows(rows, field)


# ----------------------------------------------------------------------
# subcommands; each returns (report dict, exit code)

def cmd_orbit_info(args):
    lam = Partition.parse(args.partition)
    field = FieldSpec.parse(args.field)
    x = standard_nilpotent(lam, field)
    graded = graded_centralizer(x)
    return {
        "partition": str(lam), "n": lam.n, "field": str(field),
        "centralizer_dim": centralizer_dim(lam), "orbit_dim": orbit_dim(lam),
        "graded_dims": {str(w): d for w, d in graded.dims().items()},
        "cocharacter": list(associated_cocharacter(lam).weights),
    }, OK


def cmd_dim(args):
    n, r, what = args.n, args.r, args.what
    if what == "nilpotent":
        rep = nilpotent_report(n, r).to_dict()
        rep["components"] = rep["count_of_max_components"]
        return rep, OK
    if what == "gl":
        return {"what": what, "n": n, "r": r, "dim": dim_ccv_gl(n, r)}, OK
    if what == "sl":
        if args.p is None:
            raise UsageError("--p is required for --what sl")
        return {"what": what, "n": n, "r": r, "p": args.p, "dim": dim_ccv_sl(n, r, args.p)}, OK
    if what == "regular":
        return {"what": what, "n": n, "r": r, "dim": regular_component_dim(n, r)}, OK
    if what == "generic":
        return {"what": what, "n": n, "r": r, "dim": generic_component_dim(n, r)}, OK
    s = n // 2 if args.s is None else args.s
    if not 0 <= s <= n or r < 1:
        raise UsageError("need 0 <= s <= n and r >= 1")
    jac = jacobian_component_report(n, s, r, seed=args.seed)
    rep = {"name": "G_u_component", "n": n, "r": r, "s": s, "dim": dim_G_u_component(n, s, r),
           "jacobian_dim": jac["dim"], "jacobian_attempts": jac["attempts"], "agrees": jac["agrees"],
           "is_max": s in (n // 2, (n + 1) // 2),
           "count_of_max_components": max_component_count(n)}
    return rep, OK if jac["agrees"] else FAIL


def cmd_crossover(args):
    try:
        nil, ordinary = crossover_lists(args.n_max, args.r_max)
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"n_max": args.n_max, "r_max": args.r_max,
            "nilpotent_regular": [list(p) for p in nil],
            "ordinary_generic": [list(p) for p in ordinary]}, OK


def cmd_count(args):
    params = _params(args.params)
    qs = _int_list(args.q)
    try:
        rep = count_report(args.variety, params, qs, budget=args.budget)
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc} for variety {args.variety}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(rep.to_csv())
    out = rep.to_dict()
    return out, FAIL if out["verdict"] == "FAIL" else OK


def cmd_appendix(args):
    if args.action == "verify":
        box = tuple(_int_list(args.box)) if args.box else None
        kwargs = {"r": args.r}
        if box is not None:
            kwargs["box"] = box
        rep = verify_lemma_A1(**kwargs)
        out = rep.to_dict()
        out["case_constants"] = verify_case_constants().to_dict()
        ok = rep.ok and out["case_constants"]["verdict"] == "PASS"
        out["verdict"] = "PASS" if ok else "FAIL"
        return out, OK if ok else FAIL
    if args.action == "identities":
        results = verify_sos_identities()
        ok = all(x.ok for x in results)
        return {"identities": [x.to_dict() for x in results],
                "verdict": "PASS" if ok else "FAIL"}, OK if ok else FAIL
    rep = special_cases_report()
    return rep, OK if rep["verdict"] == "PASS" else FAIL


def cmd_complexity(args):
    q = ComplexityQuery(args.n, args.r, args.p)
    check = ratio_inequality_check(args.n, args.r, args.p)
    return {"n": args.n, "r": args.r, "p": args.p,
            "frobenius": frobenius_kernel_complexity(q),
            "chevalley": chevalley_p_rank_sln(args.n, args.r),
            "ratio_rhs": check.rhs, "equality": check.equality, "holds": check.holds,
            "cross_check": nullcone_cross_check(q),
            "simple_module_criterion": maxcomplex_verdict()}, OK if check.holds else FAIL


def cmd_weight_digits(args):
    wd = p_adic_decompose(_int_list(args.weight), args.p, args.r)
    out = wd.to_dict()
    out["reassembled"] = list(wd.reassemble())
    return out, OK


def cmd_zprime(args):
    modes = sum(x is not None for x in (args.partition, args.square_zero, args.charp))
    if modes != 1:
        raise UsageError("give exactly one of --partition (with --y), --square-zero S,T or --charp P")
    if args.charp is not None:
        ok = zprime_counterexample_charp(args.charp)
        return {"mode": "charp", "p": args.charp, "nilpotent_pencil_vanishes": ok}, OK
    if args.partition is not None:
        if args.y is None:
            raise UsageError("--partition needs --y 'row;row;...'")
        e = standard_nilpotent(Partition.parse(args.partition), QQ)
        y = _matrix(args.y, QQ)
        if y.shape != (e.n, e.n):
            raise UsageError(f"--y must be {e.n} x {e.n}")
        return {"mode": "membership", "partition": str(e.partition),
                "member": zprime_membership(e.matrix, y)}, OK
    s, t = _int_list(args.square_zero)
    rng = random.Random(args.seed)
    e = square_zero_form(s, t)
    y = square_zero_zprime_element([[rng.randint(-9, 9) for _ in range(t)] for _ in range(s)],
                                   [[rng.randint(-9, 9) for _ in range(s)] for _ in range(s)], s, t)
    member = zprime_membership(e, y)
    out = {"mode": "square_zero", "s": s, "t": t, "explicit_element_member": member,
           "explicit_set_dim": s * (s + t)}
    ok = member
    pert = square_zero_weight0_nilpotent(s, t)
    if pert is not None:
        perturbed = zprime_membership(e, y + pert)
        out["weight0_perturbation_member"] = perturbed
        ok = ok and not perturbed
    else:
        out["weight0_perturbation_member"] = None
        out["note"] = "z(e;0) has no nonzero nilpotent for these (s, t)"
    return out, OK if ok else FAIL


# ----------------------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Flags accepted before or after the subcommand; the copy attached to
    subcommands suppresses defaults so it cannot overwrite earlier values."""
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=dflt(0), help="seed for randomized oracles (default 0)")
    common.add_argument("--output", choices=["json", "csv", "text"], default=dflt("json"))
    common.add_argument("--budget", type=int, default=dflt(None),
                        help="enumeration budget (default $NILCOMM_BUDGET or 10^8)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="nilcomm", parents=[_global_flags(suppress=False)],
                                     description="Nilpotent commuting varieties: constructions and checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit-info", parents=[common], help="centralizer and orbit data of a partition")
    p.add_argument("--partition", required=True)
    p.add_argument("--field", default="q", help="q or p:<prime>")
    p.set_defaults(func=cmd_orbit_info)

    p = sub.add_parser("dim", parents=[common], help="dimension formulas for commuting varieties")
    p.add_argument("--what", required=True,
                   choices=["nilpotent", "gl", "sl", "regular", "generic", "component"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("crossover", parents=[common], help="where other components win")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--r-max", type=int, default=30)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("count", parents=[common], help="F_q point counts with slope fit")
    p.add_argument("--variety", required=True, choices=["U", "W", "V", "Cnil"])
    p.add_argument("--params", required=True, help="e.g. s=2,t=2 or r=3,s=2,t=1")
    p.add_argument("--q", default="2,3,5")
    p.add_argument("--csv", help="also write the (q, count) table to this file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("appendix", parents=[common], help="bound-function verification")
    p.add_argument("action", choices=["verify", "identities", "special-cases"])
    p.add_argument("--r", type=int, default=7)
    p.add_argument("--box", help="a,b,c,d upper bounds (default 5,8,6,12)")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("complexity", parents=[common], help="trivial-module complexities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("weight-digits", parents=[common], help="p-adic digits of a weight")
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_weight_digits)

    p = sub.add_parser("zprime-test", parents=[common], help="rank-condition tests for z'(e)")
    p.add_argument("--partition")
    p.add_argument("--y", help="matrix rows separated by ';', entries by ','")
    p.add_argument("--square-zero", help="s,t for the (s,t,s) square-zero form")
    p.add_argument("--charp", type=int, help="run the [p,p] characteristic-p construction")
    p.set_defaults(func=cmd_zprime)
    return parser


def _cell(v):
    return v if isinstance(v, (str, int, bool)) or v is None else json.dumps(v, sort_keys=True)


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in report.items())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    table = next((v for v in report.values()
                  if isinstance(v, list) and v and all(isinstance(x, dict) for x in v)), None)
    if table is not None:
        keys = list(table[0])
        w.writerow(keys)
        for row in table:
            w.writerow([_cell(row.get(k)) for k in keys])
    else:
        w.writerow(["key", "value"])
        for k, v in report.items():
            w.writerow([k, _cell(v)])
    return buf.getvalue().rstrip("\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.budget is None:
        args.budget = budget_from_env()
    if args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return USAGE
    try:
        report, code = args.func(args)
    except (OutOfRangeError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    report = _jsonable(report)
    report["seed"] = args.seed
    report["command"] = args.command
    print(_render(report, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
