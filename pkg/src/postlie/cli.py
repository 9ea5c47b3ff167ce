"""Command-line interface: ``postlie <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 malformed input.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import concrete, identities, magnus, tubings
from .forests import ForestSyntaxError, enumerate_forests, parse_forest, render, size

LEAF_SYMBOL = "■"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _text_term(forest, c: Fraction, first: bool) -> str:
    name = LEAF_SYMBOL if forest == ((),) else render(forest)
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    coeff = "" if mag == 1 else (f"{mag.numerator}/{mag.denominator} " if mag.denominator != 1 else f"{mag.numerator} ")
    body = f"{coeff}{name}"
    if first:
        return f"{sign}{body}" if sign else body
    return f"{sign} {body}"


def format_element_text(el) -> str:
    terms = el.sorted_terms()
    if not terms:
        return "0"
    return " ".join(_text_term(f, c, i == 0) for i, (f, c) in enumerate(terms))


def _degree(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be an integer, got {value!r}")
    if not 1 <= n <= magnus.MAX_DEGREE:
        raise argparse.ArgumentTypeError(f"degree must lie in 1..{magnus.MAX_DEGREE}")
    return n


def _forest(value: str):
    try:
        forest = parse_forest(value)
    except ForestSyntaxError as exc:
        raise argparse.ArgumentTypeError(f"bad forest {value!r}: {exc}")
    if not forest:
        raise argparse.ArgumentTypeError("forest must be nonempty")
    return forest


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="postlie", description="Post-Lie Magnus expansion on planar forests.")
    p.add_argument("--threads", type=int, default=1, help="cap on worker processes")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("chi", help="coefficients of chi up to a degree")
    c.add_argument("--degree", type=_degree, default=5)
    c.add_argument("--method", choices=["log", "direct_log", "recursive", "vertical", "horizontal", "all"],
                   default="log")
    c.add_argument("--format", choices=["json", "text"], default="json")

    f = sub.add_parser("forests", help="list planar forests with N vertices")
    f.add_argument("--degree", type=_degree, required=True)

    t = sub.add_parser("tubings", help="nested tubings of a forest")
    t.add_argument("--forest", type=_forest, required=True)
    t.add_argument("--kind", choices=tubings.KINDS, required=True)
    t.add_argument("--count", action="store_true")

    k = sub.add_parser("coeff", help="chi coefficient of one forest")
    k.add_argument("--forest", type=_forest, required=True)
    k.add_argument("--method", choices=["vertical", "horizontal", "log"], default="vertical")

    v = sub.add_parser("verify", help="run a structural check")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--degree", type=_degree, default=4)

    con = sub.add_parser("concrete", help="finite-dimensional post-Lie algebras")
    csub = con.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = csub.add_parser("check-axioms")
    a.add_argument("--file", required=True)
    x = csub.add_parser("chi")
    x.add_argument("--file", required=True)
    x.add_argument("--x", required=True, help="comma-separated rationals")
    x.add_argument("--degree", type=_degree, default=4)
    b = csub.add_parser("verify-bch")
    b.add_argument("--file", required=True)
    b.add_argument("--a", required=True)
    b.add_argument("--b", required=True)
    b.add_argument("--degree", type=_degree, default=4)
    return p


# ---------------------------------------------------------------------------
# verification suites

def _suite_defining(N: int) -> list[str]:
    return [] if magnus.verify_defining_equation(N) else [f"exp_*(chi) != exp_.(x) up to degree {N}"]


def _suite_primitivity(N: int) -> list[str]:
    result = magnus.chi(N)
    return [f"chi_{n} is not primitive" for n, ok in magnus.primitive_components(result).items() if not ok]


def _suite_associativity(N: int) -> list[str]:
    return identities.check_gl_associativity(N) + identities.check_gl_unit(N)


def _suite_dbialgebra(N: int) -> list[str]:
    return identities.check_d_bialgebra(N)


SUITES = {
    "defining": _suite_defining,
    "primitivity": _suite_primitivity,
    "associativity": _suite_associativity,
    "dbialgebra": _suite_dbialgebra,
}


# ---------------------------------------------------------------------------
# handlers

def _cmd_chi(args, out, err) -> int:
    if args.method == "all":
        report = magnus.compare_methods(args.degree, threads=args.threads)
        if args.format == "json":
            data = {
                "degree": args.degree,
                "results": [r.to_json() for r in report.results.values()],
                "diff": [{"forest": render(f), "values": {m: fmt(v) for m, v in vals.items()}}
                         for f, vals in report.diff],
            }
            out.write(json.dumps(data) + "\n")
        else:
            for m, r in report.results.items():
                out.write(f"{m}: {format_element_text(r.element)}\n")
            out.write("diff: " + ("empty" if report.ok else "\n" + report.format_diff()) + "\n")
        if not report.ok:
            err.write("methods disagree\n")
            return 1
        return 0
    result = magnus.chi(args.degree, args.method, threads=args.threads)
    if args.format == "json":
        out.write(json.dumps(result.to_json()) + "\n")
    else:
        out.write(format_element_text(result.element) + "\n")
    return 0


def _cmd_forests(args, out, err) -> int:
    for F in enumerate_forests(args.degree):
        out.write(render(F) + "\n")
    return 0


def _cmd_tubings(args, out, err) -> int:
    found = tubings.enumerate_tubings(args.forest, args.kind)
    if args.count:
        out.write(f"{len(found)}\n")
    else:
        for t in found:
            out.write(json.dumps(t.to_json()) + "\n")
    return 0


def _cmd_coeff(args, out, err) -> int:
    F = args.forest
    if size(F) > magnus.MAX_DEGREE:
        raise UsageError(f"forest has more than {magnus.MAX_DEGREE} vertices")
    if args.method == "vertical":
        c = tubings.coeff_vertical(F)
    elif args.method == "horizontal":
        try:
            c = tubings.coeff_horizontal(F)
        except ValueError as exc:
            raise UsageError(str(exc))
    else:
        c = magnus.chi(size(F)).coefficient(F)
    out.write(fmt(c) + "\n")
    return 0


def _cmd_verify(args, out, err) -> int:
    failures = SUITES[args.suite](args.degree)
    if failures:
        out.write(f"FAIL {args.suite} degree {args.degree}\n")
        for line in failures:
            out.write(f"  {line}\n")
        return 1
    out.write(f"PASS {args.suite} degree {args.degree}\n")
    return 0


def _load_sc(path):
    try:
        return concrete.load_structure_constants(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad structure constants in {path}: {exc}")


def _vector(text, dim):
    try:
        return concrete.parse_vector(text, dim)
    except ValueError as exc:
        raise UsageError(str(exc))


def _cmd_concrete(args, out, err) -> int:
    sc = _load_sc(args.file)
    if args.action == "check-axioms":
        report = concrete.check_post_lie_axioms(sc)
        out.write(report.summary() + "\n")
        return 0 if report.ok else 1
    if args.action == "chi":
        x = _vector(args.x, sc.dim)
        vec = concrete.concrete_chi(sc, x, args.degree)
        out.write(",".join(fmt(c) for c in vec) + "\n")
        return 0
    a, b = _vector(args.a, sc.dim), _vector(args.b, sc.dim)
    ok = concrete.verify_integration_theorem(sc, a, b, args.degree)
    out.write(("PASS" if ok else "FAIL") + f" integration identity at degree {args.degree}\n")
    return 0 if ok else 1


HANDLERS = {
    "chi": _cmd_chi,
    "forests": _cmd_forests,
    "tubings": _cmd_tubings,
    "coeff": _cmd_coeff,
    "verify": _cmd_verify,
    "concrete": _cmd_concrete,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return HANDLERS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"postlie: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
