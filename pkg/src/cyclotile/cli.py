"""Command-line front end.

Exit codes: 0 when the property holds or the computation succeeded, 1 when the
property is refuted, 2 for usage or input errors (and exhausted budgets).
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from math import gcd

from .cyclotomic import average_property_check, cyclotomic_poly, phi_divides
from .divsets import (
    dilate_check,
    div_between,
    div_set,
    is_factorization_brute,
    is_factorization_sands,
    lemma24_check,
)
from .errors import BudgetExceeded, CyclotileError
from .residue import ModulusContext, ZmSet, make_modulus
from .search import SearchOptions, complement_search, random_instance, verify_theorem
from .setio import load_set, save_set
from .szabo import build_a, build_b, check_div_structure, check_prop210, verify_szabo_pair

OK, REFUTED, USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


# -- output -------------------------------------------------------------------------

def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            elif isinstance(v, dict):
                lines.append(f"{pad}{k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: " + " ".join(map(str, v)))
            else:
                lines.append(f"{pad}{k}: {v}")
        return lines
    if isinstance(obj, list):
        out = []
        for item in obj:
            out.extend(_text(item, indent))
            out.append("")
        return out
    return [f"{pad}{obj}"]


def _emit(args, obj):
    if args.format == "json":
        print(json.dumps(obj))
    else:
        print("\n".join(_text(obj)).rstrip())


def _emit_set(args, E: ZmSet):
    if args.format == "json":
        print(json.dumps(E.to_dict()))
    else:
        print(" ".join(map(str, E.elements)))


# -- argument helpers ---------------------------------------------------------------

def _primes(args) -> ModulusContext | None:
    if getattr(args, "primes", None) is None:
        return None
    try:
        vals = [int(x) for x in args.primes.split(",")]
    except ValueError:
        raise _UsageError(f"--primes expects p,q,r, got {args.primes!r}") from None
    if len(vals) != 3:
        raise _UsageError(f"--primes expects three primes, got {args.primes!r}")
    return make_modulus(*vals)


def _need_ctx(args) -> ModulusContext:
    ctx = _primes(args)
    if ctx is None:
        raise _UsageError(f"{args.command}: --primes p,q,r is required")
    return ctx


def _check_files(*paths):
    for path in paths:
        if path is not None and not os.path.isfile(path):
            raise _UsageError(f"no such file: {path}")


def _load(paths, ctx: ModulusContext | None) -> list[ZmSet]:
    _check_files(*paths)
    expected = None if ctx is None else ctx.M
    return [load_set(p, expected) for p in paths]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise _UsageError(f"expected a list of integers, got {text!r}") from None


def _options(args) -> SearchOptions:
    return SearchOptions(
        max_solutions=args.limit if args.limit and args.limit > 0 else None,
        time_budget=args.budget if args.budget and args.budget > 0 else None,
        require_not_subgroup=args.require_nonsubgroup,
        seed=args.seed,
        workers=args.workers,
        stable=args.stable,
        branching=args.branching,
        frontier=args.frontier,
    )


# -- commands -----------------------------------------------------------------------

def cmd_verify(args) -> int:
    ctx = _primes(args)
    A, B = _load([args.a, args.b], ctx)
    if A.modulus != B.modulus:
        raise _UsageError(f"moduli differ: {A.modulus} vs {B.modulus}")
    out = {"modulus": A.modulus, "size_a": len(A), "size_b": len(B)}
    results = []
    if args.method in ("brute", "both"):
        out["brute"] = is_factorization_brute(A, B)
        results.append(out["brute"])
    if args.method in ("sands", "both"):
        out["sands"] = is_factorization_sands(A, B)
        results.append(out["sands"])
    out["agree"] = len(set(results)) == 1
    out["factorization"] = all(results)
    _emit(args, out)
    if not out["agree"]:
        print("error: brute-force and Sands checks disagree", file=sys.stderr)
        return REFUTED
    return OK if out["factorization"] else REFUTED


def cmd_divset(args) -> int:
    ctx = _primes(args)
    paths = [args.a] + ([args.b] if args.b else [])
    sets = _load(paths, ctx)
    d = div_set(sets[0]) if len(sets) == 1 else div_between(*sets)
    _emit(args, {"modulus": d.modulus, "divisors": d.sorted()})
    return OK


def cmd_cyclotomic(args) -> int:
    if args.s < 1:
        raise _UsageError("--s must be positive")
    if args.divides:
        (E,) = _load([args.divides], _primes(args))
        res = phi_divides(args.s, E)
        if args.format == "json":
            print(json.dumps(res))
        else:
            print("true" if res else "false")
        return OK if res else REFUTED
    _emit(args, {"s": args.s, "coefficients": list(cyclotomic_poly(args.s).coeffs)})
    return OK


def cmd_szabo_check(args) -> int:
    ctx = _need_ctx(args)
    A, B = _load([args.a, args.b], ctx)
    w = verify_szabo_pair(A, B, ctx)
    if w is None:
        print("NOT-SZABO")
        return REFUTED
    _emit(args, w.to_dict())
    return OK


def _assign(value, name: str):
    if value is None or isinstance(value, int):
        return value
    if isinstance(value, dict):
        try:
            return {int(k): v for k, v in value.items()}
        except ValueError:
            raise _UsageError(f"{name}: orbit keys must be integers") from None
    raise _UsageError(f"{name}: expected an int or an object")


def cmd_szabo_build(args) -> int:
    ctx = _need_ctx(args)
    _check_files(args.spec)
    with open(args.spec, encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"{args.spec}: invalid JSON: {exc}") from None
    if not isinstance(spec, dict):
        raise _UsageError(f"{args.spec}: expected a JSON object")
    missing = [k for k in ("U", "V", "W", "H_p", "H_q", "H_r") if k not in spec]
    if missing:
        raise _UsageError(f"{args.spec}: missing keys {missing}")
    A = build_a(spec["U"], spec["V"], spec["W"], ctx)
    B = build_b(spec["H_p"], spec["H_q"], spec["H_r"],
                *(_assign(spec.get(k), k) for k in ("assign_p", "assign_q", "assign_r")),
                ctx=ctx)
    out = {}
    for E, path, key in ((A, args.out_a, "A"), (B, args.out_b, "B")):
        if path:
            save_set(E, path)
            out[key] = path
        else:
            out[key] = E.to_dict()
    _emit(args, out)
    return OK


def cmd_szabo_random(args) -> int:
    ctx = _need_ctx(args)
    A, B, w = random_instance(args.seed, ctx)
    out = {"seed": args.seed}
    for E, path, key in ((A, args.out_a, "A"), (B, args.out_b, "B")):
        if path:
            save_set(E, path)
            out[key] = path
        else:
            out[key] = E.to_dict()
    out["witness"] = w.to_dict()
    _emit(args, out)
    return OK


def cmd_search_complement(args) -> int:
    ctx = _primes(args)
    (A,) = _load([args.a], ctx)
    try:
        for B in complement_search(A, _options(args), ctx):
            _emit_set(args, B)
            sys.stdout.flush()
    except BudgetExceeded as exc:
        n = len(exc.partial) if exc.partial is not None else 0
        print(f"error: time budget exhausted after {n} complement(s); output is partial",
              file=sys.stderr)
        return USAGE
    return OK


def cmd_search_theorem(args) -> int:
    ctx = _need_ctx(args)
    (A,) = _load([args.a], ctx)
    try:
        report = verify_theorem(A, _options(args), ctx)
    except BudgetExceeded as exc:
        if exc.partial is not None:
            _emit(args, exc.partial.to_dict())
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    _emit(args, report.to_dict())
    return REFUTED if report.violations else OK


def cmd_props_check210(args) -> int:
    ctx = _need_ctx(args)
    A, B = _load([args.a, args.b], ctx)
    rep = check_prop210(A, B, ctx)
    _emit(args, rep.to_dict())
    return OK if rep.ok else REFUTED


def cmd_props_average(args) -> int:
    ctx = _need_ctx(args)
    A, B = _load([args.a, args.b], ctx)
    ells = [args.ell] if args.ell else list(ctx.primes)
    reps = [average_property_check(A, B, ell, ctx) for ell in ells]
    _emit(args, [r.to_dict() for r in reps])
    return OK if all(r.ok for r in reps) else REFUTED


def cmd_props_divstructure(args) -> int:
    ctx = _need_ctx(args)
    (A,) = _load([args.a], ctx)
    rep = check_div_structure(A, ctx)
    _emit(args, rep.to_dict())
    return OK if rep.ok else REFUTED


def cmd_props_lemma24(args) -> int:
    ctx = _need_ctx(args)
    (E,) = _load([args.set], ctx)
    order = tuple(_int_list(args.order)) if args.order else None
    if order is not None and len(order) != 3:
        raise _UsageError("--order expects three primes")
    rep = lemma24_check(E, ctx, order)
    _emit(args, {"hypothesis": rep.hypothesis_holds, "conclusion": rep.conclusion_holds,
                 "targets": list(rep.targets), "ok": rep.ok})
    return OK if rep.ok else REFUTED


def cmd_props_dilate(args) -> int:
    ctx = _primes(args)
    A, B = _load([args.a, args.b], ctx)
    if args.k:
        ks = _int_list(args.k)
    else:
        ks = [k for k in range(1, args.k_max + 1) if gcd(k, len(A)) == 1]
    results = {str(k): dilate_check(A, B, k) for k in ks}
    _emit(args, {"checked": results, "ok": all(results.values())})
    return OK if all(results.values()) else REFUTED


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--primes", metavar="P,Q,R", help="primes fixing M = (pqr)^2")

    parser = _Parser(prog="cyclotile", description="Factorizations of Z_M with M = (pqr)^2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check A + B = Z_M")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--method", choices=("brute", "sands", "both"), default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("divset", parents=[common], help="Div(A) or Div(A, B)")
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.set_defaults(func=cmd_divset)

    p = sub.add_parser("cyclotomic", parents=[common], help="Phi_s, or whether Phi_s divides a set")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--divides", metavar="SETFILE")
    p.set_defaults(func=cmd_cyclotomic)

    sz = sub.add_parser("szabo", help="Szabó pair certificates").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = sz.add_parser("check", parents=[common])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_szabo_check)
    p = sz.add_parser("build", parents=[common],
                      help="build A and B from a JSON file with U, V, W, H_p, H_q, H_r")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-a")
    p.add_argument("--out-b")
    p.set_defaults(func=cmd_szabo_build)
    p = sz.add_parser("random", parents=[common], help="a random verified pair")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-a")
    p.add_argument("--out-b")
    p.set_defaults(func=cmd_szabo_random)

    se = sub.add_parser("search", help="complement search").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func, limit in (("complement", cmd_search_complement, 100),
                              ("theorem", cmd_search_theorem, 50)):
        p = se.add_parser(name, parents=[common])
        p.add_argument("--a", required=True)
        p.add_argument("--limit", type=int, default=limit, help="0 for no limit")
        p.add_argument("--budget", type=float, default=600.0, help="seconds, 0 for none")
        p.add_argument("--stable", action="store_true", help="sequential, deterministic order")
        p.add_argument("--require-nonsubgroup", action="store_true")
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--branching", choices=("mrv", "smallest"), default="mrv")
        p.add_argument("--frontier", type=int, default=2)
        p.set_defaults(func=func)

    pr = sub.add_parser("props", help="structural checks").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func in (("check210", cmd_props_check210), ("average", cmd_props_average),
                       ("dilate", cmd_props_dilate)):
        p = pr.add_parser(name, parents=[common])
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.set_defaults(func=func)
        if name == "average":
            p.add_argument("--ell", type=int)
        if name == "dilate":
            p.add_argument("--k", help="comma-separated multipliers")
            p.add_argument("--k-max", type=int, default=50)
    p = pr.add_parser("divstructure", parents=[common])
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_props_divstructure)
    p = pr.add_parser("lemma24", parents=[common])
    p.add_argument("--set", required=True)
    p.add_argument("--order", help="permutation of the primes, first plays p")
    p.set_defaults(func=cmd_props_lemma24)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("szabo", "search", "props"):
            args.command = f"{args.command} {args.action}"
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return args.func(args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else USAGE
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CyclotileError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
