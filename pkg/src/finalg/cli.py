"""Command-line entry point.

Exit codes: 0 success, 1 check or repro failure, 2 invalid input,
3 resource ceiling (presentation bound).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as alg
from . import constructions as con
from . import docio, intinv, modules, presets, repro
from .ffla import FieldError
from .groups import GroupError
from .presentation import BoundCeilingError, PresentationError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, tag: str, message: str):
        super().__init__(message)
        self.code, self.tag = code, tag


def _fmt(value) -> str:
    return json.dumps(value, ensure_ascii=False)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(docio.dumps({"schema": docio.SCHEMA, **report}))
        return
    w = max((len(k) for k in report), default=0)
    for k, v in report.items():
        print(f"{k:<{w}}  {v if isinstance(v, str) else _fmt(v)}")


def invariants(A) -> dict:
    out: dict = {"algebra": A.provenance, "field": A.p, "dim": A.dim}
    out["valid"] = alg.validate(A).ok
    if A.idempotents is not None:
        try:
            out["cartan"] = alg.peirce_cartan(A)
            out["cartan_convention"] = repro.CARTAN_CONVENTION
        except alg.AlgebraError as exc:
            out["cartan"] = f"unavailable: {exc}"
    Z, Zalg = alg.center(A)
    out["center"] = Z.dim
    out["commutators"] = alg.commutator_subspace(A).dim
    try:
        out["radical"] = alg.radical(A).dim
        out["loewy"] = alg.loewy_layers(A)
        pr = alg.predicates(Zalg)
        out["center_local"] = pr.is_local
        out["center_rad_square_zero"] = pr.rad_square_zero
    except alg.RadicalError as exc:
        out["radical"] = f"unavailable: {exc}"
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    A = docio.load_algebra(args.src)
    rep = alg.validate(A, full=True)
    if rep.ok:
        print(f"OK {A.provenance}: dim {A.dim} over F_{A.p}")
        return EXIT_OK
    print(f"INVALID {A.provenance}: " + "; ".join(rep.failures))
    return EXIT_FAIL


def cmd_invariants(args) -> int:
    _emit(invariants(docio.load_algebra(args.src)), args.json)
    return EXIT_OK


def _target(args):
    A = docio.load_algebra(args.src)
    return alg.center(A)[1] if getattr(args, "center", False) else A


def cmd_center(args) -> int:
    A = docio.load_algebra(args.src)
    Z = alg.center(A)[0]
    _emit({"dim": Z.dim, "basis": [A.format(v) for v in Z.basis]}, args.json)
    return EXIT_OK


def cmd_cartan(args) -> int:
    A = docio.load_algebra(args.src)
    _emit({"cartan": alg.peirce_cartan(A), "convention": repro.CARTAN_CONVENTION}, args.json)
    return EXIT_OK


def cmd_commutators(args) -> int:
    A = docio.load_algebra(args.src)
    K = alg.commutator_subspace(A)
    _emit({"dim": K.dim, "basis": [A.format(v) for v in K.basis]}, args.json)
    return EXIT_OK


def cmd_loewy(args) -> int:
    A = _target(args)
    _emit({"loewy": alg.loewy_layers(A)}, args.json)
    return EXIT_OK


def cmd_construct(args) -> int:
    kind, srcs = args.kind, args.src
    need = {"trivial-extension": 1, "tensor": 2, "t2": 1, "dual": 1}[kind]
    if len(srcs) != need:
        raise CliError(EXIT_INPUT, "invalid_input", f"construct {kind} takes {need} source(s)")
    if kind == "dual":
        M = docio.load_module(srcs[0])
        doc = docio.module_to_doc(modules.dual(M))
    else:
        algs = [docio.load_algebra(s) for s in srcs]
        built = {"trivial-extension": lambda: con.trivial_extension(algs[0]),
                 "tensor": lambda: con.tensor_product(*algs),
                 "t2": lambda: con.t2_of(algs[0])}[kind]()
        doc = docio.algebra_to_doc(built)
    text = docio.dumps(doc) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_end(args) -> int:
    A = docio.load_algebra(args.src)
    mods = [docio.load_module(m, A) for m in args.module]
    E = modules.end_algebra_op(mods)
    _emit(invariants(E), args.json)
    return EXIT_OK


def cmd_congruent(args) -> int:
    M, N = docio.parse_matrix(args.M), docio.parse_matrix(args.N)
    try:
        r = intinv.congruent_over_Z_2x2(M, N)
    except intinv.Unsupported as exc:
        raise CliError(EXIT_INPUT, "unsupported", str(exc)) from None
    report = {
        "result": "congruent" if r.congruent else "NOT congruent",
        "reduced": [list(r.reduced[0].as_tuple()), list(r.reduced[1].as_tuple())],
        "determinants": list(r.determinants),
    }
    _emit(report, args.json)
    return EXIT_OK


def cmd_prank(args) -> int:
    print(intinv.p_rank(docio.parse_matrix(args.M), args.p))
    return EXIT_OK


def cmd_repro(args) -> int:
    if args.what != "paper":
        raise CliError(EXIT_INPUT, "invalid_input", f"unknown repro target {args.what!r}")
    checks = repro.repro_paper()
    if args.json:
        print(docio.dumps(repro.report_json(checks)))
    else:
        sys.stdout.write(repro.report_text(checks))
    return repro.exit_status(checks)


def selftest() -> int:
    bad = 0
    for name, build in presets.ALGEBRAS.items():
        A = build()
        ok = alg.validate(A, full=True).ok and A.dim == presets.DIMENSIONS[name]
        print(f"{'ok' if ok else 'FAIL':<4}  algebra {name} (dim {A.dim})")
        bad += not ok
    for name in presets.MODULES:
        M = presets.module(name)
        ok = modules.validate_module(M).ok
        print(f"{'ok' if ok else 'FAIL':<4}  module {name} (dim {M.dim})")
        bad += not ok
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finalg", description="Exact finite-dimensional algebra computations over F_p.")
    ap.add_argument("--selftest", action="store_true", help="validate every preset and exit")
    sub = ap.add_subparsers(dest="command")

    def with_src(name, func, help_text, json_flag=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("src", help="preset:NAME or a document path")
        if json_flag:
            p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)
        return p

    with_src("check", cmd_check, "validate an algebra", json_flag=False)
    with_src("invariants", cmd_invariants, "dimension, Cartan matrix, center, commutators, Loewy layers")
    with_src("center", cmd_center, "canonical basis of the center")
    with_src("cartan", cmd_cartan, "Cartan matrix from the carried idempotents")
    with_src("commutators", cmd_commutators, "commutator subspace K(A)")
    lo = with_src("loewy", cmd_loewy, "Loewy layers of the regular module")
    lo.add_argument("--center", action="store_true", help="use the center of the algebra instead")

    c = sub.add_parser("construct", help="build a new algebra (or dual module) document")
    c.add_argument("kind", choices=["trivial-extension", "tensor", "t2", "dual"])
    c.add_argument("src", nargs="+")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("end", help="invariants of End_A(M_1 + ... + M_n)^op")
    e.add_argument("src")
    e.add_argument("--module", action="append", required=True,
                   help="regular, preset:NAME or a module document; repeat for each summand")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_end)

    g = sub.add_parser("congruent", help="unimodular congruence of 2x2 symmetric matrices")
    g.add_argument("M")
    g.add_argument("N")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_congruent)

    r = sub.add_parser("prank", help="rank of an integer matrix mod p")
    r.add_argument("M")
    r.add_argument("p", type=int)
    r.set_defaults(func=cmd_prank)

    rp = sub.add_parser("repro", help="reproduce the published numbers")
    rp.add_argument("what", help="'paper'")
    rp.add_argument("--json", action="store_true")
    rp.set_defaults(func=cmd_repro)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.selftest:
            return selftest()
        if not getattr(args, "func", None):
            ap.print_help(sys.stderr)
            return EXIT_INPUT
        return args.func(args)
    except CliError as exc:
        code, tag, msg = exc.code, exc.tag, str(exc)
    except BoundCeilingError as exc:
        code, tag, msg = EXIT_CEILING, "resource_ceiling", str(exc)
    except (PresentationError, docio.DocumentError, FieldError, GroupError, modules.ModuleError,
            con.ConstructionError, intinv.IntInvError, alg.AlgebraError, KeyError, ValueError, OSError) as exc:
        code, tag, msg = EXIT_INPUT, "invalid_input", str(exc)
    print(f"error[{tag}]: {msg}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
