"""Command line interface.

Exit codes: 0 success, 1 mathematical mismatch, 2 invalid input, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import SUITES, CertifyConfig, run_certify
from .jacobitrudi import TruncationWarning, jt_determinant
from .onerow import one_row
from .permtools import (
    Permutation,
    PermutationError,
    canonical_flagging,
    diagram,
    essential_set,
    flagging_sets,
    grothendieck_polynomial,
    is_vexillary,
    shape_lambda,
)
from .polyring import Polynomial, TruncationPolicy
from .shapes import SKEW_MODES, InvalidShape, SkewFlaggedShape, beta_degree_bound
from .tableaux import count_tableaux, enumerate_tableaux, tableau_sum

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--beta-cap", type=int, default=None, help="report beta-degrees up to N")
    p.add_argument("--guard", type=int, default=2, help="extra beta-degrees computed as a check band")


def _shape_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--lambda", dest="lam", type=_ints, required=required, help="partition, e.g. 2,1")
    p.add_argument("--mu", type=_ints, default=None)
    p.add_argument("--f", type=_ints, required=required, help="upper flag")
    p.add_argument("--g", type=_ints, default=None, help="lower flag (default all 1)")
    p.add_argument("--skew-mode", choices=SKEW_MODES, default="conditional")


def _shape(args) -> SkewFlaggedShape:
    shape = SkewFlaggedShape(args.lam, args.mu or (), args.f, args.g or ())
    try:
        return shape.check(args.skew_mode)
    except InvalidShape as exc:
        raise InputError(str(exc))


def _policy(args, shape) -> TruncationPolicy:
    cap = beta_degree_bound(shape) if args.beta_cap is None else args.beta_cap
    try:
        return TruncationPolicy(cap, args.guard)
    except ValueError as exc:
        raise InputError(str(exc))


def _poly_out(p: Polynomial, fmt: str):
    return p.to_json_obj() if fmt == "json" else (p.to_text() or "0")


def cmd_compute(args) -> int:
    shape = _shape(args)
    policy = _policy(args, shape)
    out: dict = {"shape": shape.to_json_obj(), "method": args.method,
                 "beta_cap": policy.beta_cap, "guard": policy.guard}
    status = EXIT_OK
    tab = det = None
    if args.method in ("tableaux", "both"):
        tab = tableau_sum(shape).truncate(policy.beta_cap)
    if args.method in ("determinant", "both"):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            det = jt_determinant(shape, policy)
        out["guard_terms"] = det.guard_terms.to_json_obj()
        out["warnings"] = list(det.warnings)
    value = tab if tab is not None else det.value
    out["polynomial"] = value.to_json_obj()
    if args.method == "both":
        out["agree"] = det.value == tab
        if not out["agree"]:
            status = EXIT_MISMATCH
    if args.format == "json":
        print(_dump(out))
    else:
        print(value.to_text() or "0")
        if det is not None:
            for w in det.warnings:
                print(f"warning: {w}", file=sys.stderr)
            if det.guard_terms:
                print(f"guard band: {det.guard_terms.to_text()}")
        if args.method == "both":
            print("routes agree" if out["agree"] else f"MISMATCH: determinant = {det.value.to_text() or '0'}")
    return status


def cmd_tableaux(args) -> int:
    shape = _shape(args)
    if args.list:
        items = list(enumerate_tableaux(shape))
        if args.format == "json":
            print(_dump({"shape": shape.to_json_obj(), "count": len(items),
                         "tableaux": [t.to_json_obj() for t in items]}))
        else:
            for t in items:
                print(t.to_text())
                print()
            print(f"{len(items)} tableaux")
        return EXIT_OK
    total = tableau_sum(shape)
    if args.beta_cap is not None:
        total = total.truncate(args.beta_cap)
    if args.format == "json":
        print(_dump({"shape": shape.to_json_obj(), "count": count_tableaux(shape), "polynomial": total.to_json_obj()}))
    else:
        print(total.to_text() or "0")
    return EXIT_OK


def cmd_onerow(args) -> int:
    if args.p < 1 or args.q < 1:
        raise InputError("p and q must be positive")
    cap = 0 if args.beta_cap is None else args.beta_cap
    if cap < 0 or args.guard < 0:
        raise InputError("beta cap and guard must be nonnegative")
    value = one_row(args.m, args.p, args.q, cap + args.guard)
    shown = value.truncate(cap)
    if args.format == "json":
        print(_dump({"m": args.m, "p": args.p, "q": args.q, "beta_cap": cap, "guard": args.guard,
                     "polynomial": shown.to_json_obj()}))
    else:
        print(shown.to_text() or "0")
    return EXIT_OK


def cmd_grothendieck(args) -> int:
    try:
        w = Permutation.parse(args.perm)
    except PermutationError as exc:
        raise InputError(str(exc))
    g = grothendieck_polynomial(w)
    if args.beta_cap is not None:
        g = g.truncate(args.beta_cap)
    out: dict = {"perm": list(w.word), "length": w.length(), "vexillary": is_vexillary(w),
                 "polynomial": g.to_json_obj()}
    vex = out["vexillary"]
    if args.show_diagram:
        out["diagram"] = [list(b) for b in sorted(diagram(w))]
    if args.show_essential:
        out["essential_set"] = [list(b) for b in sorted(essential_set(w))]
    if vex:
        out["lambda"] = list(shape_lambda(w))
        if args.show_flaggings:
            out["flagging_sets"] = [[list(b) for b in fs] for fs in flagging_sets(w)]
            out["flags"] = [[p for p, _ in fs] for fs in flagging_sets(w)]
    status = EXIT_OK
    if args.verify:
        if not vex:
            raise InputError(f"{w} is not vexillary; nothing to verify")
        shape = canonical_flagging(w)
        tab = tableau_sum(shape)
        if args.beta_cap is not None:
            tab = tab.truncate(args.beta_cap)
        out["verify"] = {"f": list(shape.f), "agree": tab == g}
        status = EXIT_OK if tab == g else EXIT_MISMATCH
    if args.format == "json":
        print(_dump(out))
        return status
    print(g.to_text() or "0")
    print(f"length {out['length']}, {'vexillary' if vex else 'not vexillary'}")
    if vex:
        print(f"lambda(w) = {tuple(out['lambda'])}")
    if "diagram" in out:
        print(f"D(w) = {sorted(diagram(w))}")
    if "essential_set" in out:
        print(f"Ess(w) = {sorted(essential_set(w))}")
    if "flags" in out:
        for fs in flagging_sets(w):
            print(f"flagging set {list(fs)}  f = {tuple(p for p, _ in fs)}")
    if "verify" in out:
        print(f"G_w = G_lambda,f with f = {tuple(out['verify']['f'])}: "
              + ("agree" if out["verify"]["agree"] else "MISMATCH"))
    return status


def cmd_certify(args) -> int:
    kwargs = {}
    if args.lam is not None:
        if args.f is None:
            raise InputError("--lambda needs --f")
        shape = _shape(args)
        kwargs.update(lam=shape.lam, f=shape.f, mu=args.mu, g=args.g)
    if args.perm is not None:
        try:
            kwargs["perm"] = Permutation.parse(args.perm).word
        except PermutationError as exc:
            raise InputError(str(exc))
    try:
        config = CertifyConfig(
            suites=tuple(args.suite) if args.suite else SUITES,
            rows=args.rows, cols=args.cols, max_flag=args.max_flag,
            skew_rows=args.skew_rows, skew_cols=args.skew_cols, skew_max_flag=args.skew_max_flag,
            max_n=args.max_n, lemma_cap=args.lemma_cap, random_pairs=args.random_pairs, seed=args.seed,
            beta_cap=args.beta_cap or 0, guard=args.guard, time_limit=args.time_limit,
            corrupt_binomial=args.corrupt_binomial, skew_mode=args.skew_mode, **kwargs,
        )
    except ValueError as exc:
        raise InputError(str(exc))
    report = run_certify(config)
    if args.format == "json":
        print(_dump(report.to_json_obj(timings=args.timings)))
    else:
        print(report.to_text())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagged-groth", description="Flagged Grothendieck polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="G for a (skew) flagged shape")
    _shape_args(p)
    p.add_argument("--method", choices=("tableaux", "determinant", "both"), default="both")
    _common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("tableaux", help="enumerate or sum set-valued tableaux")
    _shape_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--sum", action="store_true", help="(default)")
    _common(p)
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("onerow", help="one-row series G_m^[p/q]")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_onerow)

    p = sub.add_parser("grothendieck", help="Grothendieck polynomial of a permutation")
    p.add_argument("--perm", required=True, help="one-line notation, e.g. 2,3,5,4,1")
    p.add_argument("--show-diagram", action="store_true")
    p.add_argument("--show-essential", action="store_true")
    p.add_argument("--show-flaggings", action="store_true")
    p.add_argument("--verify", action="store_true", help="compare with the flagged tableau sum")
    _common(p)
    p.set_defaults(func=cmd_grothendieck)

    p = sub.add_parser("certify", help="run the certification suites")
    p.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    _shape_args(p, required=False)
    p.add_argument("--perm", default=None)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--max-flag", type=int, default=4)
    p.add_argument("--skew-rows", type=int, default=3)
    p.add_argument("--skew-cols", type=int, default=3)
    p.add_argument("--skew-max-flag", type=int, default=4)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--lemma-cap", type=int, default=5)
    p.add_argument("--random-pairs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None, help="seconds; exceeding it exits 3")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in JSON")
    p.add_argument("--corrupt-binomial", action="store_true", help=argparse.SUPPRESS)
    _common(p)
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidShape) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MemoryError:
        print("error: resource cap exceeded", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
