"""Command-line entry point: ``gradedaf solve|verify|analyze|repr|fol``.

Exit codes: 0 success or YES, 1 NO or unrepresentable, 2 usage or parse
error, 3 enumeration cap exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import analysis, fixpoint, fol, representation, suites
from .core import (Aaf, ArgSet, ExtensionFamily, Params, emit_apx, emit_dot, from_json, parse_apx,
                   parse_tgf, to_json)
from .errors import CapExceeded, GradedAfError, InvariantViolation, ParseError, PreconditionError
from .generate import FIXTURES
from .semantics import Catalog, as_spec

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4


# ---------------------------------------------------------------- helpers


def load_frame(source: str, fmt: str | None = None) -> Aaf:
    """Read a framework from a path, or use a named fixture such as F_CHAIN."""
    if source in FIXTURES and not Path(source).exists():
        return FIXTURES[source]
    path = Path(source)
    try:
        text = sys.stdin.read() if source == "-" else path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    fmt = fmt or {".tgf": "tgf", ".json": "json"}.get(path.suffix.lower(), "apx")
    if fmt == "tgf":
        return parse_tgf(text)
    if fmt == "json":
        return from_json(text)
    return parse_apx(text)


def _params(args: argparse.Namespace) -> Params:
    return Params(args.l, args.m, args.n, args.eta)


def _set_arg(F: Aaf, text: str | None) -> ArgSet:
    if not text:
        return 0
    names = [t.strip() for t in text.split(",") if t.strip()]
    for a in names:
        if a not in F.index:
            raise PreconditionError(f"{a!r} is not an argument of the framework")
    return F.set_of(names)


def _named(F: Aaf, sets) -> list[list[str]]:
    return [list(F.names(s)) for s in sets]


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _add_frame_flags(p: argparse.ArgumentParser, spec_default: str | None = "co") -> None:
    p.add_argument("input", nargs="?", help="framework file, '-' for stdin, or a fixture name like F_CHAIN")
    p.add_argument("--input", dest="input_flag", metavar="PATH")
    p.add_argument("--format", choices=("apx", "tgf", "json"), help="input format (default: from the file suffix)")
    p.add_argument("--spec", default=spec_default, help="semantics, e.g. co, max(param(ad,pr))")
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--grades", type=int, nargs=4, metavar=("L", "M", "N", "ETA"),
                   help="all four grades at once")
    p.add_argument("--cap", type=int, default=22, help="largest framework to enumerate")
    p.add_argument("--jobs", type=int, default=1)


def _frame_from(args: argparse.Namespace) -> Aaf:
    source = args.input_flag or args.input
    if not source:
        raise PreconditionError("no input framework given")
    if args.grades:
        args.l, args.m, args.n, args.eta = args.grades
    return load_frame(source, args.format)


# ---------------------------------------------------------------- commands


def cmd_solve(args: argparse.Namespace) -> int:
    F = _frame_from(args)
    p = _params(args)
    spec = as_spec(args.spec)
    fam = Catalog(F, p, cap=args.cap, jobs=args.jobs).family(spec)
    task = args.task
    if task in ("DC", "DS") and not args.arg:
        raise PreconditionError(f"task {task} needs --arg")
    if args.arg and args.arg not in F.index:
        raise PreconditionError(f"{args.arg!r} is not an argument of the framework")

    if task == "EE":
        if args.out == "json":
            print(_dump(to_json(F, {str(spec): fam})))
        elif args.out == "dot":
            print(emit_dot(F, fam.sets[0] if fam else None), end="")
        else:
            print(_dump(fam.named()))
        return EXIT_OK
    if task == "SE":
        if not fam:
            print("NO")
            return EXIT_NO
        first = fam.sets[0]
        if args.out == "json":
            print(_dump(to_json(F, {str(spec): ExtensionFamily(F, (first,))})))
        elif args.out == "dot":
            print(emit_dot(F, first), end="")
        else:
            print(_dump(list(F.names(first))))
        return EXIT_OK
    if task == "DC":
        yes = analysis.is_extensible(F, fam, F.set_of([args.arg]))
    else:
        if not fam:
            print(f"warning: {spec} has no extensions; skeptical acceptance holds vacuously", file=sys.stderr)
        yes = analysis.infers(F, fam, 0, args.arg)
    print("YES" if yes else "NO")
    return EXIT_OK if yes else EXIT_NO


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    kwargs = {}
    if args.frames is not None:
        kwargs["count"] = args.frames
    if args.sizes is not None:
        kwargs["max_size"] = args.sizes
    if args.max_grade is not None:
        kwargs["max_grade"] = args.max_grade
    reports = [suites.run_suite(name, seed=args.seed, **kwargs) for name in names]
    for r in reports:
        print(json.dumps(r.as_dict(), indent=2 if args.pretty else None))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_NO


def cmd_analyze(args: argparse.Namespace) -> int:
    F = _frame_from(args)
    p = _params(args)
    what = args.what
    if what == "wf":
        X = _set_arg(F, args.set) if args.set else F.full
        print(_dump({"wf": fixpoint.wf_on(F, X), "wf_plus": fixpoint.wf_plus_on(F, X)}))
        return EXIT_OK
    if what == "reach":
        prof = fixpoint.reachability_profile(F, _set_arg(F, args.set))
        print(_dump({"sigma": list(F.names(prof.sigma)), "dist": prof.dist,
                     "covers_all": prof.covers_all, "strictly_layered": prof.strictly_layered}))
        return EXIT_OK
    if what == "safe-op":
        print(emit_apx(analysis.safe_restrict_cf(F, p.l)), end="")
        return EXIT_OK
    if what == "canonical":
        print(emit_apx(analysis.canonical_cf(F, p.l, choice_cap=args.choice_cap)), end="")
        return EXIT_OK
    if what == "galois":
        ok = analysis.galois_check(F, p)
        print(_dump({"galois": ok}))
        return EXIT_OK if ok else EXIT_NO
    if what == "compare":
        if not args.other:
            raise PreconditionError("compare needs --other")
        G = load_frame(args.other, args.format)
        print(_dump(analysis.compare_frameworks(F, G, args.spec, p).as_dict()))
        return EXIT_OK
    cat = Catalog(F, p, cap=args.cap, jobs=args.jobs)
    fam = cat.family(args.spec)
    if what == "anti":
        print(_dump(analysis.anti_sets(F, fam).named()))
        return EXIT_OK
    if what == "gamma":
        if not args.arg:
            raise PreconditionError("gamma needs --arg")
        rep = analysis.gamma_at(F, fam, args.arg)
        print(_dump({"gamma": _named(F, rep.gamma), "classes": [_named(F, c) for c in rep.classes]}))
        return EXIT_OK
    # order
    basis = cat.family(args.inf_basis) if args.inf_basis else None
    print(_dump(analysis.order_report(fam, inf_basis=basis).as_dict()))
    return EXIT_OK


def _load_omega(text: str) -> representation.CandidateOmega:
    path = Path(text)
    if not text.lstrip().startswith("{") and path.exists():
        text = path.read_text(encoding="utf-8")
    return representation.omega_from_json(text)


def cmd_repr(args: argparse.Namespace) -> int:
    omega = _load_omega(args.omega)
    if args.rho:
        print(representation.rho(omega, cap=args.choice_cap).describe())
        return EXIT_OK
    res = representation.representable(omega, args.l, args.variant, cap=args.choice_cap)
    if res.ok:
        print("YES")
        print(" ".join(emit_apx(res.witness).split()))
        return EXIT_OK
    print("NO")
    print(_dump(res.report.as_dict()))
    return EXIT_NO


def cmd_fol(args: argparse.Namespace) -> int:
    F = _frame_from(args)
    p = _params(args)
    if args.formula:
        phi = fol.parse_formula(args.formula)
        sigma: tuple = (phi,)
    elif args.sigma:
        sigma = fol.sentence_library(p)[fol.SIGMA_TARGETS[args.sigma]]
    else:
        raise PreconditionError("fol needs --formula or --sigma")
    if args.definability:
        if not args.sigma:
            raise PreconditionError("--definability needs --sigma")
        fam = Catalog(F, p, cap=args.cap).family(args.sigma)
        res = fol.verify_definability(F, sigma, fam)
        if res.ok:
            print("DEFINED")
            return EXIT_OK
        print("NOT DEFINED")
        print(_dump({"counterexample": list(F.names(res.counterexample)), "satisfies": res.satisfies}))
        return EXIT_NO
    rho = {}
    for part in (args.assign or "").split(","):
        if part.strip():
            var, _, val = part.partition("=")
            rho[var.strip()] = val.strip()
    model = fol.FolModel(F, _set_arg(F, args.set))
    if args.nua:
        out = fol.nua(model, sigma[0], rho)
        print("NONUNIVERSAL" if out else "UNIVERSAL")
        return EXIT_OK
    sat = all(fol.evaluate(model, s, rho) for s in sigma)
    print("SAT" if sat else "UNSAT")
    return EXIT_OK if sat else EXIT_NO


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradedaf", description="Graded argumentation semantics toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate or query extensions")
    _add_frame_flags(p)
    p.add_argument("--task", choices=("EE", "SE", "DC", "DS"), default="EE")
    p.add_argument("--arg", help="argument for DC/DS")
    p.add_argument("--out", choices=("text", "json", "dot"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", default="all", choices=["all", *suites.SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--frames", type=int, help="number of random frames")
    p.add_argument("--sizes", type=int, help="largest random framework")
    p.add_argument("--max-grade", type=int, help="largest grade in the grid")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="anti-sets, order report, Galois check and more")
    _add_frame_flags(p, spec_default="cf")
    p.add_argument("--what", default="anti",
                   choices=("anti", "gamma", "order", "galois", "wf", "reach", "safe-op", "canonical", "compare"))
    p.add_argument("--set", help="comma-separated argument set (wf, reach)")
    p.add_argument("--arg", help="argument for gamma")
    p.add_argument("--other", help="second framework for compare")
    p.add_argument("--inf-basis", help="semantics whose members feed the infimum formula")
    p.add_argument("--choice-cap", type=int, default=16)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("repr", help="decide whether a family is a conflict-free family")
    p.add_argument("omega", help='JSON text or file: {"universe": [...], "sets": [[...], ...]}')
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--variant", choices=representation.VARIANTS, default="I")
    p.add_argument("--rho", action="store_true", help="report every grade that represents the family")
    p.add_argument("--choice-cap", type=int, default=16)
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("fol", help="evaluate a formula or sentence bundle")
    _add_frame_flags(p, spec_default=None)
    p.add_argument("--formula", help="S-expression, e.g. '(all x (not (att x x)))'")
    p.add_argument("--sigma", choices=tuple(fol.SIGMA_TARGETS))
    p.add_argument("--set", help="interpretation of P, comma-separated")
    p.add_argument("--assign", help="assignment, e.g. x=a,y=b")
    p.add_argument("--nua", action="store_true", help="report whether the assignment is non-universal")
    p.add_argument("--definability", action="store_true", help="check that --sigma defines its semantics")
    p.set_defaults(func=cmd_fol)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except GradedAfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
