"""Command line front end.

Exit codes: 0 pass, 1 usage/parse/unsupported field, 2 validation, 3 property failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import applications as apps
from . import jsonio
from .bimodule import BimoduleError, bimodule_from_hom, hom_bimodule, zero_bimodule
from .duality import double_dual_check, dualize_module, nu_square_check, theta_hat, witness_to_dict
from .exact_linalg import FieldMismatchError, UnsupportedFieldError
from .fixtures import LAMBDA_FIXTURES, QUIVERS, fixture, projectives, simples
from .functor_modules import (
    ModuleError, check_triple, module_from_triple, projective_iso, random_triple,
)
from .klinear_core import CategoryError
from .quiver_cat import QuiverParseError, parse_quiver, path_category
from .suites import SUITES, Target, fixture_targets, run
from .trimat import build_lambda, check_radical_formula, lambda_radical

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ValidationError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _color(ok):
    word = "PASS" if ok else "FAIL"
    if os.environ.get("TRIMATCAT_COLOR", "0") == "1":
        return f"\033[{32 if ok else 31}m{word}\033[0m"
    return word


def _emit(obj, out):
    text = jsonio.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_quiver(spec):
    """A quiver file, or the name of a built-in quiver."""
    if spec in QUIVERS and not os.path.exists(spec):
        return parse_quiver(QUIVERS[spec])
    return parse_quiver(_read(spec))


def load_lambda(spec):
    if (spec in LAMBDA_FIXTURES or spec.startswith("window")) and not os.path.exists(spec):
        return fixture(spec).L
    try:
        d = jsonio.load(spec)
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    return jsonio.lambda_from_dict(d)


def load_triple(path, L):
    try:
        d = jsonio.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return jsonio.triple_from_dict(d, L.bimod)


def _objs(vals):
    out = []
    for v in vals or []:
        out += [s for s in v.split(",") if s]
    return out


# ---------------------------------------------------------------------------


def cmd_build(args):
    if args.fixture:
        L = fixture(args.fixture).L
    elif args.quiver:
        pc = path_category(load_quiver(args.quiver))
        M = bimodule_from_hom(pc, _objs(args.u_objs), _objs(args.t_objs))
        L = build_lambda(M.tcat, M.ucat, M, zero_objects=args.zero_objects)
    elif args.tcat and args.ucat:
        ttext, utext = _read(args.tcat), _read(args.ucat)
        tc = path_category(parse_quiver(ttext))
        if args.bimod == "hom":
            if ttext != utext:
                raise UsageError("--bimod hom needs the same quiver for --tcat and --ucat "
                                 "(or use --quiver with --u-objs/--t-objs)")
            M = hom_bimodule(tc, tc, tc)
            uc = tc
        else:
            uc = path_category(parse_quiver(utext))
            if args.bimod == "zero":
                M = zero_bimodule(tc, uc)
            else:
                M = jsonio.bimodule_from_dict(jsonio.load(args.bimod), tc, uc)
        L = build_lambda(tc, uc, M, zero_objects=args.zero_objects)
    else:
        raise UsageError("build needs --fixture, --quiver, or --tcat/--ucat/--bimod")
    d = jsonio.lambda_to_dict(L)
    report = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "build",
        "objects": list(L.objects),
        "end_dims": {x: L.dim(x, x) for x in L.objects},
        "total_hom_dim": L.total_dim(),
    }
    if args.out:
        _emit(d, args.out)
    else:
        report["lambda"] = d
    _emit(report, None)
    print(f"build {_color(True)}: {len(L.objects)} objects", file=sys.stderr)
    return EXIT_OK


def cmd_check(args):
    if args.lambda_ or args.category:
        targets = []
        if args.category:
            cat = jsonio.category_from_dict(jsonio.load(args.category))
            targets.append(Target(args.category, category=cat, user=True))
        if args.lambda_:
            L = load_lambda(args.lambda_)
            trs = [load_triple(p, L) for p in args.triple or []]
            targets.append(Target(args.lambda_, L, triples=trs, user=True))
    else:
        if args.triple:
            raise UsageError("--triple needs --lambda")
        targets = fixture_targets(args.field)
    report = run(args.suite, targets, seed=args.seed, trials=args.trials, field=args.field)
    _emit(report, args.out)
    for e in report["checks"]:
        if not e["passed"]:
            print(f"{_color(False)} {e['suite']}/{e['target']}/{e['check']}: {e['failures'][:1]}",
                  file=sys.stderr)
    n = len(report["checks"])
    print(f"check {_color(report['passed'])}: {n} checks", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _rep_exit(rep):
    return EXIT_OK if rep.ok else EXIT_FAIL


def apply_one_point(args):
    q = load_quiver(args.quiver)
    try:
        ope = apps.one_point_extension(q, args.source)
    except CategoryError as exc:
        raise ValidationError(str(exc)) from None
    out = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "one-point",
        "source": args.source,
        "reduced_quiver": ope.reduced.to_text(),
        "M_dims": {u: ope.M.dim(u, args.source) for u in ope.M.ucat.objects},
        "lambda": jsonio.lambda_to_dict(ope.L),
        "equivalence": ope.functor.to_dict(),
        "report": ope.report.to_dict(),
    }
    return out, _rep_exit(ope.report)


def _load_cat(spec):
    return path_category(load_quiver(spec))


def apply_torsion(args):
    pc = _load_cat(args.cat)
    spec = apps.TorsionPairSpec(pc, _objs(args.u), _objs(args.t))
    try:
        L, H, rep = apps.splitting_equivalence(spec)
    except apps.TorsionPairError as exc:
        msg = {"schema_version": jsonio.SCHEMA_VERSION, "command": "torsion-pair",
               "error": str(exc), "witness": exc.witness}
        _emit(msg, None)
        raise ValidationError(str(exc)) from None
    return {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "torsion-pair",
        "lambda": jsonio.lambda_to_dict(L),
        "H": H.to_dict(),
        "report": rep.to_dict(),
    }, _rep_exit(rep)


def apply_hom_matrix(args):
    pc = _load_cat(args.cat)
    L = apps.hom_matrix_category(pc)
    rep = apps.check_diagonal_recovery(pc, L)
    return {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "hom-matrix",
        "lambda": jsonio.lambda_to_dict(L),
        "report": rep.to_dict(),
    }, _rep_exit(rep)


def apply_ext1(args):
    pc = _load_cat(args.quiver)
    reps = simples(pc) if args.reps == "simples" else projectives(pc)
    try:
        L = apps.ext1_matrix_category(pc, reps)
    except BimoduleError as exc:
        raise ValidationError(str(exc)) from None
    return {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "ext1",
        "M_dims": {f"{u}->{t}": sp.dim for (u, t), sp in L.bimod.space.items()},
        "lambda": jsonio.lambda_to_dict(L),
    }, EXIT_OK


def apply_radical(args):
    L = load_lambda(args.lambda_)
    fld = L.field
    if fld.characteristic != 0:
        raise UnsupportedFieldError(f"radical computations need characteristic 0, got {fld}")
    pairs = [tuple(args.pair)] if args.pair else [(x, y) for x in L.objects for y in L.objects]
    rep = check_radical_formula(L, pairs)
    out = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": "radical",
        "radical": [{"source": x, "target": y,
                     "basis": [jsonio._vec(fld, v) for v in lambda_radical(L, x, y)]}
                    for x, y in pairs],
        "report": rep.to_dict(),
    }
    return out, _rep_exit(rep)


def _triple_arg(args, L):
    if not args.triple:
        raise UsageError("--triple is required")
    return load_triple(args.triple, L)


def apply_dualize(args):
    L = load_lambda(args.lambda_)
    tr = _triple_arg(args, L)
    rep = check_triple(tr)
    out = {"schema_version": jsonio.SCHEMA_VERSION, "command": "dualize"}
    if rep.ok:
        C = module_from_triple(tr, L)
        _, dd = double_dual_check(C)
        rep.extend(dd)
        out["dual_module"] = jsonio.module_to_dict(dualize_module(C))
        out["theta_hat"] = jsonio.triple_to_dict(theta_hat(tr))
    out["report"] = rep.to_dict()
    return out, _rep_exit(rep)


def apply_nu_check(args):
    L = load_lambda(args.lambda_)
    tr = _triple_arg(args, L)
    nu, rep = nu_square_check(tr, L)
    out = witness_to_dict(nu, rep, L.field)
    out["command"] = "nu-check"
    return out, _rep_exit(rep)


def apply_projective(args):
    L = load_lambda(args.lambda_)
    L.check_object(args.object)
    P, _, rep = projective_iso(L, args.object)
    out = jsonio.triple_to_dict(P)
    return out, _rep_exit(rep)


def apply_random_triple(args):
    L = load_lambda(args.lambda_)
    tr = random_triple(L.bimod, np.random.default_rng(args.seed))
    return jsonio.triple_to_dict(tr), EXIT_OK


APPLY = {
    "one-point": apply_one_point,
    "torsion-pair": apply_torsion,
    "hom-matrix": apply_hom_matrix,
    "ext1": apply_ext1,
    "radical": apply_radical,
    "dualize": apply_dualize,
    "nu-check": apply_nu_check,
    "projective": apply_projective,
    "random-triple": apply_random_triple,
}


def cmd_apply(args):
    out, code = APPLY[args.what](args)
    _emit(out, args.out)
    print(f"apply {args.what} {_color(code == EXIT_OK)}", file=sys.stderr)
    return code


def make_parser():
    p = Parser(prog="trimatcat", description="Exact triangular matrix categories.")
    sub = p.add_subparsers(dest="cmd", parser_class=Parser)
    sub.required = True

    b = sub.add_parser("build", help="build Λ and write it as JSON")
    b.add_argument("--fixture", choices=list(LAMBDA_FIXTURES) + ["window3"])
    b.add_argument("--quiver", help="ambient quiver for --bimod hom with object lists")
    b.add_argument("--u-objs", nargs="+")
    b.add_argument("--t-objs", nargs="+")
    b.add_argument("--tcat")
    b.add_argument("--ucat")
    b.add_argument("--bimod", default="hom", help="hom, zero, or a bimodule JSON file")
    b.add_argument("--zero-objects", action="store_true")
    b.add_argument("--out")

    c = sub.add_parser("check", help="run property suites")
    c.add_argument("--suite", nargs="+", default=["all"], choices=list(SUITES) + ["all"])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=50)
    c.add_argument("--field", default="Q", help="field for the fixtures, e.g. 'F 7'")
    c.add_argument("--lambda", dest="lambda_", metavar="LAMBDA")
    c.add_argument("--category")
    c.add_argument("--triple", nargs="+")
    c.add_argument("--out")

    a = sub.add_parser("apply", help="run one construction")
    a.add_argument("what", choices=list(APPLY))
    a.add_argument("--quiver")
    a.add_argument("--source")
    a.add_argument("--cat")
    a.add_argument("--u", nargs="+")
    a.add_argument("--t", nargs="+")
    a.add_argument("--reps", choices=["simples", "projectives"], default="simples")
    a.add_argument("--lambda", dest="lambda_", metavar="LAMBDA")
    a.add_argument("--triple")
    a.add_argument("--pair", nargs=2)
    a.add_argument("--object")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    return p


REQUIRED = {
    "one-point": ("quiver", "source"),
    "torsion-pair": ("cat", "u", "t"),
    "hom-matrix": ("cat",),
    "ext1": ("quiver",),
    "radical": ("lambda_",),
    "dualize": ("lambda_", "triple"),
    "nu-check": ("lambda_", "triple"),
    "projective": ("lambda_", "object"),
    "random-triple": ("lambda_",),
}


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd == "check" and args.trials < 1:
            raise UsageError("--trials must be positive")
        if args.cmd == "apply":
            missing = [k for k in REQUIRED[args.what] if getattr(args, k) is None]
            if missing:
                raise UsageError(f"apply {args.what} needs " +
                                 ", ".join("--" + k.rstrip("_") for k in missing))
        return {"build": cmd_build, "check": cmd_check, "apply": cmd_apply}[args.cmd](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuiverParseError, jsonio.FormatError, json.JSONDecodeError,
            UnsupportedFieldError, FieldMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, BimoduleError, CategoryError, ModuleError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
