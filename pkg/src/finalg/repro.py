"""One-shot reproduction of the published numbers as a list of checks.

Each check carries the expected value, its provenance tag (PAPER, DERIVED
or TRIVIAL) and the computed value.  Status is PASS on equality and FAIL
otherwise, except for the gamma_printed dimension row, which is FLAGGED:
the printed relations present an 18-dimensional algebra, not the printed 16.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import algebra as alg
from . import constructions as con
from . import intinv
from . import modules as mo
from . import presets

REPORT_SCHEMA = "finalg.repro/1"
CARTAN_CONVENTION = "C[i][j] = dim e_i A e_j (row = target idempotent)"


@dataclass
class ReproCheck:
    id: str
    description: str
    expected: object
    computed: object
    status: str
    provenance: str

    def to_json(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


class _Ctx:
    """Lazily built objects shared between checks; ``overrides`` replaces presets."""

    def __init__(self, overrides: dict[str, Callable] | None = None):
        self.overrides = overrides or {}
        self._memo: dict = {}

    def get(self, key: str, build: Callable):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    def preset(self, name: str):
        build = self.overrides.get(name) or presets.ALGEBRAS[name]
        return self.get("preset:" + name, build)

    def end(self, which: str):
        def build():
            A = self.preset("kd8")
            summand = {"S": presets.S, "X1": presets.X1, "X2": presets.X2}[which]()
            if summand.algebra is not A:
                summand = mo.ModuleRep(A, summand.action, summand.name, summand.labels)
            return mo.end_algebra_op([mo.regular(A, name="A"), summand], name=f"End(A+{which})^op")

        return self.get("end:" + which, build)

    def te(self, name: str):
        return self.get("te:" + name, lambda: con.trivial_extension(self.preset(name)))


def _inv(A) -> dict:
    Z, Zalg = alg.center(A)
    K = alg.commutator_subspace(A)
    pr = alg.predicates(Zalg)
    return {
        "dim": A.dim,
        "cartan": alg.peirce_cartan(A),
        "center": Z.dim,
        "center_local_rsz": [pr.is_local, pr.rad_square_zero],
        "K": K.dim,
        "ann": con.annihilator_in_dual(A, K).dim,
    }


def _checks(ctx: _Ctx) -> list[tuple]:
    """(id, description, provenance, expected, thunk)."""
    P = presets.PRINTED
    kd8 = lambda: ctx.preset("kd8")
    lam = lambda: ctx.preset("lambda")
    gam = lambda: ctx.preset("gamma_corrected")
    out = []

    def add(cid, desc, prov, expected, thunk):
        out.append((cid, desc, prov, expected, thunk))

    # kD8
    add("kd8.dim", "dim kD8 from the quiver presentation", "PAPER", 8, lambda: kd8().dim)
    add("kd8.basis", "printed word basis spans kD8", "PAPER", True,
        lambda: presets.printed_span(kd8(), P["kd8_basis"]).dim == kd8().dim == len(P["kd8_basis"]))
    add("kd8.cartan", "Cartan matrix of kD8", "PAPER", [[8]], lambda: alg.peirce_cartan(kd8()))
    add("kd8.loewy", "Loewy layers of the regular kD8-module", "PAPER", [1, 2, 2, 2, 1],
        lambda: alg.loewy_layers(kd8()))
    add("kd8.center.dim", "dim Z(kD8)", "PAPER", 5, lambda: alg.center(kd8())[0].dim)
    add("kd8.center.local_rsz", "Z(kD8) local, rad^2 = 0", "PAPER", [True, True],
        lambda: _inv(kd8())["center_local_rsz"])
    add("kd8.center.printed", "Z(kD8) equals the printed span", "PAPER", True,
        lambda: presets.printed_span(kd8(), P["kd8_center"]) == alg.center(kd8())[0])

    # Lambda (presentation)
    add("lambda.dim", "dim Lambda", "PAPER", 11, lambda: lam().dim)
    add("lambda.cartan", "Cartan matrix of Lambda", "PAPER", [[8, 1], [1, 1]], lambda: alg.peirce_cartan(lam()))
    add("lambda.center.dim", "dim Z(Lambda)", "PAPER", 5, lambda: alg.center(lam())[0].dim)
    add("lambda.center.local_rsz", "Z(Lambda) local, rad^2 = 0", "PAPER", [True, True],
        lambda: _inv(lam())["center_local_rsz"])
    add("lambda.center.printed", "Z(Lambda) equals the printed span", "PAPER", True,
        lambda: presets.printed_span(lam(), P["lambda_center"]) == alg.center(lam())[0])
    add("lambda.K.dim", "dim K(Lambda)", "PAPER", 6, lambda: alg.commutator_subspace(lam()).dim)
    add("lambda.K.printed", "K(Lambda) equals the printed span", "PAPER", True,
        lambda: presets.printed_span(lam(), P["lambda_K"]) == alg.commutator_subspace(lam()))
    add("lambda.ann.dim", "dim Ann_D(Lambda) K(Lambda)", "PAPER", 5, lambda: _inv(lam())["ann"])
    add("lambda.ann.printed", "Ann equals the printed span", "PAPER", True,
        lambda: presets.functionals(lam(), P["lambda_ann"])
        == con.annihilator_in_dual(lam(), alg.commutator_subspace(lam())))

    # endomorphism oracles
    base = {"dim": 11, "cartan": [[8, 1], [1, 1]], "center": 5, "K": 6}
    for key, val in base.items():
        add(f"end_S.{key}", f"End(A+S)^op {key}", "PAPER", val, lambda key=key: _inv(ctx.end("S"))[key])
    add("end_S.orientation", "Cartan of End(A+S)^op vs C_Lambda, as computed and transposed", "DERIVED",
        {"as_computed": True, "transposed": True}, lambda: _orientation(ctx.end("S"), lam()))
    add("end_S.matches_lambda", "End(A+S)^op invariants equal those of Lambda", "PAPER", True,
        lambda: _inv(ctx.end("S")) == _inv(lam()))
    gbase = {"dim": 16, "cartan": [[8, 3], [3, 2]], "center": 5, "center_local_rsz": [True, True], "K": 11, "ann": 5}
    for which in ("X1", "X2"):
        for key, val in gbase.items():
            add(f"end_{which}.{key}", f"End(A+{which})^op {key}", "PAPER", val,
                lambda key=key, which=which: _inv(ctx.end(which))[key])
    add("end_X1X2.agree", "X1 and X2 give identical End invariants", "DERIVED", True,
        lambda: _inv(ctx.end("X1")) == _inv(ctx.end("X2")))

    # Gamma presentations
    for key, val in gbase.items():
        add(f"gamma_corrected.{key}", f"gamma_corrected {key}", "PAPER", val, lambda key=key: _inv(gam())[key])
    add("gamma_corrected.matches_oracle", "gamma_corrected invariants equal End(A+X1)^op", "DERIVED", True,
        lambda: _inv(gam()) == _inv(ctx.end("X1")))
    add("gamma_corrected.center.printed", "Z(Gamma) equals the printed span", "PAPER", True,
        lambda: presets.printed_span(gam(), P["gamma_center"]) == alg.center(gam())[0])
    add("gamma_corrected.K.printed", "K(Gamma) equals the printed span", "PAPER", True,
        lambda: presets.printed_span(gam(), P["gamma_K"]) == alg.commutator_subspace(gam()))
    add("gamma_corrected.ann.printed", "Ann_D(Gamma) K(Gamma) equals the printed span", "PAPER", True,
        lambda: presets.functionals(gam(), P["gamma_ann"])
        == con.annihilator_in_dual(gam(), alg.commutator_subspace(gam())))
    add("gamma_printed.dim",
        "dim of the printed Gamma presentation vs printed 16 (corrected and End oracle shown)", "PAPER", 16,
        lambda: {"printed_presentation": ctx.preset("gamma_printed").dim,
                 "corrected": gam().dim, "end_oracle": ctx.end("X1").dim})

    # trivial extensions
    TL = lambda: ctx.te("lambda")
    TG = lambda: ctx.te("gamma_corrected")
    add("T_lambda.dim", "dim T(Lambda)", "PAPER", 22, lambda: TL().dim)
    add("T_lambda.symmetric", "lambda(a,f) = f(1) symmetrizes T(Lambda)", "PAPER", True,
        lambda: con.verify_symmetrizing_form(TL(), TL().meta["symmetrizing_form"]))
    add("T_lambda.cartan", "Cartan matrix of T(Lambda)", "PAPER", [[16, 2], [2, 2]], lambda: alg.peirce_cartan(TL()))
    add("T_lambda.prank", "2-rank of C_T(Lambda)", "PAPER", 0, lambda: intinv.p_rank(alg.peirce_cartan(TL()), 2))
    add("T_lambda.center.dim", "dim Z(T(Lambda))", "PAPER", 10, lambda: alg.center(TL())[0].dim)
    add("T_lambda.center.local_rsz", "Z(T(Lambda)) local, rad^2 = 0", "PAPER", [True, True],
        lambda: _inv(TL())["center_local_rsz"])
    add("T_lambda.bhz", "Z(Lambda) + Ann equals the direct center of T(Lambda)", "PAPER", True,
        lambda: con.bhz_center(lam()).meta["subspace"] == alg.center(TL())[0])
    add("T_gamma.symmetric", "lambda(a,f) = f(1) symmetrizes T(Gamma)", "PAPER", True,
        lambda: con.verify_symmetrizing_form(TG(), TG().meta["symmetrizing_form"]))
    add("T_gamma.cartan", "Cartan matrix of T(Gamma)", "PAPER", [[16, 6], [6, 4]], lambda: alg.peirce_cartan(TG()))
    add("T_gamma.prank", "2-rank of C_T(Gamma)", "PAPER", 0, lambda: intinv.p_rank(alg.peirce_cartan(TG()), 2))
    add("T_gamma.center.dim", "dim Z(T(Gamma))", "PAPER", 10, lambda: alg.center(TG())[0].dim)
    add("T_gamma.center.local_rsz", "Z(T(Gamma)) local, rad^2 != 0", "PAPER", [True, False],
        lambda: _inv(TG())["center_local_rsz"])
    add("T_gamma.bhz", "Z(Gamma) + Ann equals the direct center of T(Gamma)", "PAPER", True,
        lambda: con.bhz_center(gam()).meta["subspace"] == alg.center(TG())[0])
    add("T_gamma.witness", "(s2s1+s1s2+s3s4).((s2s1)*+(s1s2)*+(s3s4)*)", "PAPER", "e_2*", lambda: _witness(gam()))
    add("T_gamma.center.loewy", "Loewy layers of Z(T(Gamma))", "PAPER", [1, 8, 1],
        lambda: alg.loewy_layers(alg.center(TG())[1]))

    # separation
    add("stable_center", "stable center dims of T(Lambda), T(Gamma) and Z^pr = 0", "PAPER",
        [10, 10, True, True], lambda: _stable(TL(), TG()))
    add("stable_center.separated", "rad^2 predicate of Z(T(Lambda)) and Z(T(Gamma)) differs", "PAPER", True,
        lambda: alg.predicates(alg.center(TL())[1]).rad_square_zero
        != alg.predicates(alg.center(TG())[1]).rad_square_zero)
    add("congruence", "C_Lambda vs C_Gamma over Z: congruent, reduced forms, determinants", "PAPER",
        [False, [1, 0, 7], [2, 2, 4], 7, 7], lambda: _congruence(lam(), gam()))

    # constructions
    add("dual_numbers_iso", "kD8 (x) k[x]/(x^2) = T(kD8) via alpha", "PAPER", True,
        lambda: bool(con.verify_algebra_map(con.prop15_iso(kd8()))))
    add("t2_iso", "kD8 (x) T2(k) = T2(kD8) via the printed map (dim 24)", "PAPER", [True, 24],
        lambda: [bool(con.verify_algebra_map(con.t2_iso_map(kd8()))), con.t2_of(kd8()).dim])
    add("lambda_kc2.cartan", "Cartan(Lambda (x) kC2) and its 2-rank", "PAPER", [[[16, 2], [2, 2]], 0],
        lambda: _lambda_kc2(lam(), ctx.preset("kc2")))

    # endotriviality
    add("endotrivial.decomposition", "rad/rad^4 = X1 + X2", "PAPER", [True, [3, 3]], _decomposition)
    add("endotrivial.X1", "D(X1)(x)X1: dim, norm rank, endotrivial", "PAPER", [9, 1, True], lambda: _endo("X1"))
    add("endotrivial.X2", "D(X2)(x)X2: dim, norm rank, endotrivial", "PAPER", [9, 1, True], lambda: _endo("X2"))
    add("endotrivial.trivial_free", "k endotrivial, kG not", "TRIVIAL", [True, False], _trivial_free)
    add("hom_t2", "dim Hom_T2(kD8)((0,A,0),(0,A,0)) and dim Hom_kD8(A,A)", "PAPER", [8, 8],
        lambda: _hom_t2(kd8()))
    return out


def _witness(G):
    z = presets.elements(G, ["s2*s1 + s1*s2 + s3*s4"])[0]
    f = presets.functional(G, "(s2*s1)* + (s1*s2)* + (s3*s4)*")
    r = con.left_dual_action(G, z, f)
    terms = [f"{G.labels[i]}*" if c == 1 else f"{int(c)}*{G.labels[i]}*" for i, c in enumerate(r) if c]
    return " + ".join(terms) or "0"


def _orientation(E, L):
    C, target = np.array(alg.peirce_cartan(E)), np.array(alg.peirce_cartan(L))
    return {"as_computed": bool(np.array_equal(C, target)), "transposed": bool(np.array_equal(C.T, target))}


def _stable(TL, TG):
    a, b = intinv.stable_center_dim(TL), intinv.stable_center_dim(TG)
    return [a.dim, b.dim, a.projective_center_zero, b.projective_center_zero]


def _congruence(L, G):
    r = intinv.congruent_over_Z_2x2(alg.peirce_cartan(L), alg.peirce_cartan(G))
    return [r.congruent, list(r.reduced[0].as_tuple()), list(r.reduced[1].as_tuple()), *r.determinants]


def _lambda_kc2(L, kc2):
    C = alg.peirce_cartan(con.tensor_product(L, kc2))
    return [C, intinv.p_rank(C, 2)]


def _decomposition():
    M = presets.rad_section_kd8()
    rep = mo.decomposition_verify(M, [[presets.section_vector("alpha")], [presets.section_vector("beta")]])
    return [rep.ok, rep.dims]


def _endo(which):
    X = presets.to_group(presets.module(which))
    E = mo.tensor_diagonal(mo.dual(X), X)
    return [E.dim, mo.norm_rank(E), mo.is_endotrivial(X)]


def _trivial_free():
    G = presets.kd8_group()
    return [mo.is_endotrivial(mo.trivial_module(G)), mo.is_endotrivial(mo.regular(G))]


def _hom_t2(A):
    T2 = con.t2_of(A)
    R = mo.regular(A)
    Y = mo.t2_module(T2, None, R)
    return [mo.hom_dim(Y, Y), mo.hom_dim(R, R)]


FLAGGED_IDS = {"gamma_printed.dim"}


def repro_paper(overrides: dict[str, Callable] | None = None) -> list[ReproCheck]:
    """Run every check; ``overrides`` maps preset names to replacement builders."""
    ctx = _Ctx(overrides)
    results = []
    for cid, desc, prov, expected, thunk in _checks(ctx):
        try:
            computed = _jsonable(thunk())
        except Exception as exc:  # a crashing check is a failed check
            computed = f"error: {type(exc).__name__}: {exc}"
        if cid in FLAGGED_IDS:
            value = computed.get("printed_presentation") if isinstance(computed, dict) else computed
            status = "PASS" if value == expected else "FLAGGED"
        else:
            status = "PASS" if computed == _jsonable(expected) else "FAIL"
        results.append(ReproCheck(cid, desc, _jsonable(expected), computed, status, prov))
    return sorted(results, key=lambda c: c.id)


def report_json(checks: list[ReproCheck], timestamp: str | None = None) -> dict:
    counts = {s: sum(c.status == s for c in checks) for s in ("PASS", "FAIL", "FLAGGED")}
    return {
        "schema": REPORT_SCHEMA,
        "generated": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "cartan_convention": CARTAN_CONVENTION,
        "checks": [c.to_json() for c in checks],
        "summary": counts,
    }


def report_text(checks: list[ReproCheck]) -> str:
    if not checks:
        return "no checks\n"
    w = max(len(c.id) for c in checks)
    lines = [f"{'id':<{w}}  {'status':<7}  {'provenance':<10}  expected -> computed"]
    for c in checks:
        lines.append(f"{c.id:<{w}}  {c.status:<7}  {c.provenance:<10}  {c.expected} -> {c.computed}")
    n_fail = sum(c.status == "FAIL" for c in checks)
    n_flag = sum(c.status == "FLAGGED" for c in checks)
    lines.append(f"{len(checks)} checks, {n_fail} failed, {n_flag} flagged")
    lines.append(f"Cartan convention: {CARTAN_CONVENTION}")
    return "\n".join(lines) + "\n"


def exit_status(checks: list[ReproCheck]) -> int:
    return 1 if any(c.status == "FAIL" for c in checks) else 0
