"""JSON and text encodings of polynomials, derivations, bases and certificates.

A polynomial is a list of ``[e1, e2, ez, "num/den"]`` records in descending
graded-lex order; a derivation is ``{"label", "d_a1", "d_a2", "d_z"}``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .arrangement import (
    Arrangement,
    Family,
    Hyperplane,
    build_cat_cone,
    build_shi_cone,
    defining_polynomial,
)
from .construction import BasisBundle, build_cat_basis, build_srb_minus, build_srb_plus, eta_basis_from_srb_minus
from .derivation import Derivation, SaitoCertificate, euler_derivation
from .exactalg import Poly, poly_divexact

TEXT_NAMES = ("α1", "α2", "z")


def rational_to_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def poly_to_json(p: Poly) -> list:
    return [[m[0], m[1], m[2], rational_to_str(c)] for m, c in p.sorted_terms()]


def poly_from_json(data: Sequence) -> Poly:
    terms = {}
    for e1, e2, ez, c in data:
        terms[(int(e1), int(e2), int(ez))] = rational_from_str(c)
    return Poly(terms)


def derivation_to_json(d: Derivation) -> dict:
    return {
        "label": d.label,
        "d_a1": poly_to_json(d.c1),
        "d_a2": poly_to_json(d.c2),
        "d_z": poly_to_json(d.cz),
    }


def derivation_from_json(data: dict) -> Derivation:
    return Derivation(
        poly_from_json(data["d_a1"]),
        poly_from_json(data["d_a2"]),
        poly_from_json(data["d_z"]),
        data.get("label", ""),
    )


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "name": arr.name,
        "family": arr.family.value,
        "k": arr.k,
        "hyperplanes": [poly_to_json(f) for f in arr.forms],
        "exponents": list(arr.expected_exponents),
    }


def arrangement_from_json(data: dict) -> Arrangement:
    return Arrangement(
        Family(data["family"]),
        int(data["k"]),
        tuple(Hyperplane(poly_from_json(h)) for h in data["hyperplanes"]),
        tuple(data.get("exponents", ())),
    )


def family_section(family: str, k: int) -> dict:
    """Arrangement plus its basis (Euler derivation first) for one family at level k."""
    euler = euler_derivation()
    if family == "shi":
        arr = build_shi_cone(k)
        return {
            "arrangement": arrangement_to_json(arr),
            "basis": [derivation_to_json(d) for d in (euler, *build_srb_plus(k))],
            "srb_minus": [derivation_to_json(d) for d in build_srb_minus(k)],
        }
    if family == "cat":
        arr = build_cat_cone(k)
        eta = eta_basis_from_srb_minus(build_srb_minus(k + 1), k)
        return {
            "arrangement": arrangement_to_json(arr),
            "basis": [derivation_to_json(d) for d in (euler, *build_cat_basis(k))],
            "eta": [derivation_to_json(d) for d in eta],
        }
    raise ValueError(f"unknown family {family!r}")


def bundle_to_json(bundle: BasisBundle) -> dict:
    return {
        "k": bundle.k,
        "srb_plus": [derivation_to_json(d) for d in bundle.srb_plus],
        "srb_minus": [derivation_to_json(d) for d in bundle.srb_minus],
        "cat_basis": [derivation_to_json(d) for d in bundle.cat_basis],
        "eta_basis": [derivation_to_json(d) for d in bundle.eta_basis],
    }


def certificate_to_json(cert: SaitoCertificate, arr: Arrangement) -> dict:
    out: dict[str, Any] = {
        "arrangement": cert.arrangement,
        "basis_labels": list(cert.basis_labels),
        "degrees": list(cert.degrees),
        "verdict": cert.verdict.value,
        "determinant": poly_to_json(cert.determinant),
        "c": None if cert.quotient_constant is None else rational_to_str(cert.quotient_constant),
        "witness": None if cert.witness is None else poly_to_json(cert.witness),
    }
    quotients = []
    for form in arr.forms:
        q = poly_divexact(cert.determinant, form) if cert.determinant else None
        quotients.append({
            "hyperplane": poly_to_json(form),
            "quotient": None if q is None else poly_to_json(q),
        })
    out["quotients"] = quotients
    out["defining_polynomial_degree"] = defining_polynomial(arr).degree()
    return out


# -- text --------------------------------------------------------------------

def poly_text(p: Poly) -> str:
    return p.format(TEXT_NAMES)


def derivation_text(d: Derivation) -> str:
    lines = [f"{d.label or '(unnamed)'}  [degree {d.degree()}]"]
    for name, c in (("∂1", d.c1), ("∂2", d.c2), ("∂z", d.cz)):
        if not c.is_zero():
            lines.append(f"    {name}: {poly_text(c)}")
    return "\n".join(lines)
