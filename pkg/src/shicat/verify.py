"""Verification suites.  Each check returns a Record; suites are run per level k."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arrangement import WEYL_Q, build_cat_cone, build_shi_cone, weyl_multiarrangement
from .construction import (
    SWAP,
    build_cat_basis,
    build_srb_minus,
    build_srb_plus,
    check_srb_minus,
    check_srb_plus,
    eta_basis_from_srb_minus,
    matrix_M,
    matrix_N,
    matrix_T,
    ConstructionError,
)
from .derivation import (
    S0,
    S1,
    S2,
    TAU,
    TAU_S0,
    Derivation,
    coefficient_matrix,
    euler_derivation,
    multi_membership,
    restrict_z0,
    saito_check,
    weyl_act,
)
from .exactalg import A1, A2, Z, Matrix, mat_det, mat_mul, poly_divexact
from . import invariant_theory as inv

SUITES = ("saito", "srb", "weyl", "swap", "restriction", "invariant")


@dataclass
class Record:
    name: str
    k: int | None
    passed: bool
    detail: str = ""
    wall_time: float = 0.0

    def to_dict(self, timings: bool = True) -> dict:
        d = {"name": self.name, "k": self.k, "verdict": "pass" if self.passed else "fail", "detail": self.detail}
        if timings:
            d["wall_time_s"] = round(self.wall_time, 6)
        return d


@dataclass
class Report:
    version: str
    config: dict
    records: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "tool": "shicat",
            "version": self.version,
            "config": self.config,
            "records": [r.to_dict(timings) for r in self.records],
            "overall": "pass" if self.passed else "fail",
        }


def _timed(fn: Callable[..., Record], *args) -> Record:
    t0 = time.perf_counter()
    try:
        rec = fn(*args)
    except (ConstructionError, inv.NormalizationError, ValueError) as exc:
        name = fn.__name__.removeprefix("check_")
        rec = Record(name, args[0] if args else None, False, f"error: {exc}")
    rec.wall_time = time.perf_counter() - t0
    return rec


# -- saito ------------------------------------------------------------------

def check_saito_shi(k: int) -> Record:
    cert = saito_check((euler_derivation(),) + build_srb_plus(k), build_shi_cone(k))
    ok = cert.passed and cert.degrees == (1, 3 * k, 3 * k)
    return Record("saito_shi", k, ok, f"c={cert.quotient_constant} degrees={cert.degrees}")


def check_saito_cat(k: int) -> Record:
    cert = saito_check((euler_derivation(),) + build_cat_basis(k), build_cat_cone(k))
    ok = cert.passed and cert.degrees == (1, 3 * k + 1, 3 * k + 2)
    return Record("saito_cat", k, ok, f"c={cert.quotient_constant} degrees={cert.degrees}")


# -- srb characterizations ---------------------------------------------------

def check_srb_plus_char(k: int) -> Record:
    check_srb_plus(build_srb_plus(k), k)
    return Record("srb_plus_divisibility", k, True)


def check_srb_minus_char(k: int) -> Record:
    check_srb_minus(build_srb_minus(k), k)
    return Record("srb_minus_divisibility", k, True)


# -- group actions -------------------------------------------------------------

def _fixed(g, thetas: Iterable[Derivation]) -> str:
    for t in thetas:
        if weyl_act(g, t) != t:
            return f"{g.name} moves {t.label}"
    return ""


def check_cat_invariance(k: int) -> Record:
    theta = build_cat_basis(k)
    bad = next((m for m in (_fixed(g, theta) for g in (S1, S2, TAU)) if m), "")
    return Record("cat_theta_invariant", k, not bad, bad)


def check_eta_invariance(k: int) -> Record:
    eta = eta_basis_from_srb_minus(build_srb_minus(k + 1), k)
    bad = next((m for m in (_fixed(g, eta) for g in (S1, S2, TAU)) if m), "")
    return Record("cat_eta_invariant", k, not bad, bad)


def check_reflection_identities(k: int) -> Record:
    phi, psi = build_srb_plus(k), build_srb_minus(k)
    s = (S1, S2)
    for i in range(2):
        j = 1 - i
        if weyl_act(s[i], phi[j]) != phi[j]:
            return Record("reflection_identities", k, False, f"s{i + 1} moves phi{j + 1}")
        f = (A1, A2)[i] - Z.scale(k)
        if weyl_act(s[i], psi[i]).times(f) != psi[i].times(s[i].act(f)):
            return Record("reflection_identities", k, False, f"s{i + 1} fails on psi{i + 1}/(a{i + 1}-{k}z)")
    return Record("reflection_identities", k, True)


def check_arrangement_symmetry(k: int) -> Record:
    cat, shi = build_cat_cone(k), build_shi_cone(k)
    for g in (S1, S2, S0, TAU):
        if not cat.is_preserved_by(g.images):
            return Record("arrangement_symmetry", k, False, f"{g.name} does not preserve Cat^{k}")
    if not shi.is_preserved_by(TAU_S0.images):
        return Record("arrangement_symmetry", k, False, f"tau*s0 does not preserve Shi^{k}")
    return Record("arrangement_symmetry", k, True)


# -- swap lemmas -------------------------------------------------------------

def check_swap(k: int) -> Record:
    for name, pair in (("psi", build_srb_minus(k)), ("phi", build_srb_plus(k))):
        for i in range(2):
            if weyl_act(TAU_S0, pair[i]) != -pair[1 - i]:
                return Record("swap_tau_s0", k, False, f"tau*s0({name}{i + 1}) != -{name}{2 - i}")
    return Record("swap_tau_s0", k, True)


# -- restriction -------------------------------------------------------------

def check_restriction_identity(k: int) -> Record:
    rep = inv.verify_restriction_identity(k)
    return Record("restriction_identity", k, rep.passed, rep.detail)


def check_ziegler(k: int) -> Record:
    _, multi = weyl_multiarrangement(k)
    restricted = [restrict_z0(p) for p in build_srb_plus(k)]
    for r in restricted:
        res = multi_membership(r, multi)
        if not res:
            return Record("ziegler_multicoxeter", k, False, f"{r.label}: witness {res.witness}")
    det = mat_det(coefficient_matrix(restricted))
    q = poly_divexact(det, WEYL_Q ** (2 * k))
    if q is None or not q.is_constant() or q.is_zero():
        return Record("ziegler_multicoxeter", k, False, "det is not c*Q^2k")
    return Record("ziegler_multicoxeter", k, True, f"c={q.constant_value()}")


# -- invariant theory / matrix displays --------------------------------------

def check_primitive_normalization() -> Record:
    inv.primitive_derivation()
    inv.matrix_DJ()
    inv.matrix_B()
    return Record("primitive_D_J_B_displays", None, True)


def check_det_M(k: int) -> Record:
    expected = ((A1 + Z.scale(k)) * (A2 + Z.scale(k)) * (A1 + A2 + Z.scale(k))).scale(-6)
    ok = mat_det(matrix_M(k)) == expected
    return Record("det_M", k, ok)


def check_N_flip(k: int) -> Record:
    # matrix_N raises on mismatch with the flip-transpose
    N = matrix_N(k)
    ok = N == mat_mul(SWAP, matrix_M(k).T.substitute((A1, A2, -Z)))
    return Record("N_flip_transpose", k, ok)


def check_Bk(k: int) -> Record:
    ok = inv.matrix_Bk(k) == Matrix([[0, 3 * k - 1], [3 * k - 2, 0]])
    return Record("B_k_display", k, ok)


def check_eta_theta_T(k: int) -> Record:
    theta = build_cat_basis(k)
    eta = eta_basis_from_srb_minus(build_srb_minus(k + 1), k)
    ok = coefficient_matrix(eta) == mat_mul(coefficient_matrix(theta), matrix_T(k))
    return Record("eta_equals_theta_T", k, ok)


def check_Tk_closed_form(k: int) -> Record:
    rep = inv.verify_Tk_closed_form(k)
    return Record("Tk_closed_form", k, rep.passed, rep.detail)


def check_R_recurrence(k: int) -> Record:
    rep = inv.verify_R_recurrence(k)
    return Record("R_recurrence", k, rep.passed, rep.detail)


PER_LEVEL: dict[str, list[Callable[[int], Record]]] = {
    "saito": [check_saito_shi, check_saito_cat],
    "srb": [check_srb_plus_char, check_srb_minus_char],
    "weyl": [check_cat_invariance, check_eta_invariance, check_reflection_identities, check_arrangement_symmetry],
    "swap": [check_swap],
    "restriction": [check_restriction_identity, check_ziegler],
    "invariant": [check_det_M, check_N_flip, check_Bk, check_eta_theta_T, check_Tk_closed_form, check_R_recurrence],
}


def run_suites(suites: Iterable[str], k_max: int) -> list[Record]:
    """Records ordered by (suite, k)."""
    selected = set(SUITES if "all" in suites else suites)
    unknown = selected - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    records: list[Record] = []
    for suite in SUITES:
        if suite not in selected:
            continue
        if suite == "invariant":
            records.append(_timed(check_primitive_normalization))
        for k in range(k_max + 1):
            for fn in PER_LEVEL[suite]:
                # B^(k) is only defined from k = 1
                records.append(_timed(fn, k + 1 if fn is check_Bk else k))
    return records
